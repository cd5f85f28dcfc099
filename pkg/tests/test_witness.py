import itertools

import numpy as np
import pytest

from partite_eppa.core import Tournament, normalize, validate
from partite_eppa.verify import exhaustive_tournaments, verify_embedding
from partite_eppa.witness import (
    BUDGET_ENV,
    BudgetExceeded,
    ValuationVertex,
    build_witness,
    embed,
    witness_size,
)


def count_valuations(G):
    """Brute force: every 0/1 function on V - {x}, kept if zero on x's part."""
    total = 0
    for x in G.vertices:
        others = [y for y in G.vertices if y != x]
        for values in itertools.product((0, 1), repeat=len(others)):
            if all(v == 0 for y, v in zip(others, values) if G.same_part(x, y)):
                total += 1
    return total


def as_dict(v):
    return {y: v(y) for y in range(1, v.k + 1) if y != v.base}


def rule(G, u, v):
    """Arc u -> v, written against dict valuations."""
    x, y = u.base, v.base
    if G.same_part(x, y):
        return False
    cu, cv = as_dict(u), as_dict(v)
    return (x > y and cu[y] != cv[x]) or (x < y and cu[y] == cv[x])


def test_k2_witness_by_hand(edge12):
    G = normalize(edge12)
    W = build_witness(G)
    assert [v.label for v in W.vertices] == ["1#00", "1#01", "2#00", "2#10"]
    arcs = {(u.label, v.label) for u, v in W.edges()}
    assert arcs == {("1#00", "2#00"), ("2#10", "1#00"), ("2#00", "1#01"), ("1#01", "2#10")}
    assert W.edge_count() == 4
    assert validate(W.as_tournament()) is None


@pytest.mark.parametrize("k,n,expected", [(2, 2, 4), (4, 2, 16), (6, 3, 96), (4, 4, 32)])
def test_sizes(k, n, expected):
    G = normalize(next(exhaustive_tournaments(n, k)))
    assert count_valuations(G) == expected
    assert witness_size(k, n) == expected
    assert len(build_witness(G)) == expected


def test_witness_size_errors():
    with pytest.raises(ValueError):
        witness_size(5, 2)
    with pytest.raises(ValueError):
        witness_size(4, 1)


def test_embed_by_hand(edge12):
    G = normalize(edge12)
    psi = embed(G)
    assert psi[1](2) == 0 and psi[2](1) == 0
    W = build_witness(G)
    assert W.has_edge(psi[1], psi[2])

    back = normalize(Tournament.from_parts([[1], [2]], [(2, 1)]))
    psi = embed(back)
    assert psi[2](1) == 1 and psi[1](2) == 0
    assert build_witness(back).has_edge(psi[2], psi[1])


@pytest.mark.parametrize("n,k", [(2, 4), (3, 3), (2, 6)])
def test_structure_against_dict_oracle(n, k):
    for i, T in enumerate(exhaustive_tournaments(n, k)):
        if i >= 4:
            break
        G = normalize(T)
        W = build_witness(G)
        A = W.adjacency()
        for a, u in enumerate(W.vertices):
            for b, v in enumerate(W.vertices):
                assert A[a, b] == rule(G, u, v) == W.has_edge(u, v)
                if not G.same_part(u.base, v.base) and a != b:
                    assert A[a, b] != A[b, a]
        assert validate(W.as_tournament()) is None
        assert verify_embedding(G, W) is None
        for x in G.vertices:
            psi = W.psi[x]
            assert all(psi(y) == 0 for y in G.vertices if y > x)
        fiber_sizes = {x: len(vs) for x, vs in W.fiber.items()}
        assert set(fiber_sizes.values()) == {2 ** (k - G.m)}


def test_enumeration_order_and_canonical_form():
    G = normalize(next(exhaustive_tournaments(3, 6)))
    W = build_witness(G)
    assert list(W.vertices) == sorted(W.vertices)
    for v in W.vertices:
        for y in G.vertices:
            if G.same_part(v.base, y):
                assert (v.word >> (v.k - y)) & 1 == 0
        assert ValuationVertex.from_label(v.label) == v
    W2 = build_witness(G)
    assert W2.vertices == W.vertices
    assert np.array_equal(W2.adjacency(), W.adjacency())


def test_budget(monkeypatch, edge12):
    G = normalize(next(exhaustive_tournaments(2, 6)))
    with pytest.raises(BudgetExceeded) as exc:
        build_witness(G, budget=47)
    assert exc.value.size == 48
    monkeypatch.setenv(BUDGET_ENV, "10")
    with pytest.raises(BudgetExceeded):
        build_witness(G)
    assert len(build_witness(normalize(edge12))) == 4


def test_implicit_edges_above_materialize_limit():
    G = normalize(next(exhaustive_tournaments(2, 4)))
    W = build_witness(G, materialize_limit=8)
    with pytest.raises(BudgetExceeded):
        W.adjacency()
    dense = build_witness(G)
    assert list(W.edges()) == list(dense.edges())


def test_valuation_undefined_at_base():
    v = ValuationVertex(1, 0, 2)
    with pytest.raises(KeyError):
        v(1)
