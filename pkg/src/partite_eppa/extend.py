"""Extend a partial automorphism of the embedded copy to an automorphism of the witness.

The pipeline: read off the induced maps on vertices and parts, complete
both to permutations, compute the pairwise flip bits, then rewrite every
valuation vertex.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from .core import NormalizedTournament, PartialAutomorphism
from .witness import ValuationVertex, Witness


class FlipConsistencyError(AssertionError):
    """The two flip conditions disagreed for a pair with both ends in the domain."""


def induced_maps(W: Witness, phi: PartialAutomorphism):
    """The maps ``phi`` induces on base vertices and on part indices.

    Returns ``(vertex_map, part_map)`` as dicts.  Every domain and image
    vertex of ``phi`` must be of the form ``psi(x)``.
    """
    embedded = {v: x for x, v in W.psi.items()}
    vertex_map, part_map = {}, {}
    for u, v in phi.pairs:
        if u not in embedded:
            raise ValueError(f"{u.label} is not in the embedded copy")
        if v not in embedded:
            raise ValueError(f"image {v.label} is not in the embedded copy")
        x, y = embedded[u], embedded[v]
        vertex_map[x] = y
        i, j = W.graph.part(x), W.graph.part(y)
        if part_map.setdefault(i, j) != j:
            raise ValueError(f"part {i} is sent to both {part_map[i]} and {j}")
    if len(set(part_map.values())) != len(part_map):
        raise ValueError("induced part map is not injective")
    return vertex_map, part_map


def _complete(partial: dict, sources, targets, rng: random.Random | None) -> dict:
    out = dict(partial)
    free_src = sorted(s for s in sources if s not in partial)
    used = set(partial.values())
    free_dst = sorted(t for t in targets if t not in used)
    if rng is not None:
        rng.shuffle(free_dst)
    out.update(zip(free_src, free_dst))
    return out


def complete_parts(iota: dict, n: int, rng: random.Random | None = None) -> dict:
    """Extend a partial injection on ``1..n`` to a permutation.

    Unmatched sources (ascending) meet unmatched targets (ascending), unless
    ``rng`` is given, in which case targets are shuffled.
    """
    return _complete(iota, range(1, n + 1), range(1, n + 1), rng)


def complete_vertices(vertex_map: dict, iota_hat: dict, G: NormalizedTournament,
                      rng: random.Random | None = None) -> dict:
    """Extend ``vertex_map`` to a permutation of ``V`` that moves part ``i`` onto ``iota_hat[i]``."""
    for x, y in vertex_map.items():
        if iota_hat[G.part(x)] != G.part(y):
            raise ValueError(f"{x} -> {y} disagrees with the part permutation")
    parts = G.parts
    phi_hat = {}
    for i in range(1, G.n + 1):
        src = parts[i - 1]
        dst = parts[iota_hat[i] - 1]
        local = {x: vertex_map[x] for x in src if x in vertex_map}
        phi_hat.update(_complete(local, src, dst, rng))
    return phi_hat


@dataclass(frozen=True)
class FlipTable:
    """``bits[(x, y)] = (F(x), F(y))`` for every pair ``x < y``."""

    bits: dict

    def flip(self, x: int, y: int) -> int:
        """The bit of the pair ``{x, y}`` at ``x``."""
        if x < y:
            return self.bits[(x, y)][0]
        return self.bits[(y, x)][1]

    def violations(self, G: NormalizedTournament, phi_hat: dict) -> list:
        """Pairs whose bits break the same-part/order-kept/order-reversed pattern."""
        bad = []
        for (x, y), (fx, fy) in self.bits.items():
            if G.same_part(x, y):
                ok = (fx, fy) == (0, 0)
            elif phi_hat[x] < phi_hat[y]:
                ok = fx == fy
            else:
                ok = fx != fy
            if not ok:
                bad.append((x, y))
        return bad


def compute_flips(G: NormalizedTournament, W: Witness, phi: PartialAutomorphism,
                  phi_hat: dict) -> FlipTable:
    """Flip bits for every pair ``x < y``.

    A domain vertex ``x`` whose bit at ``y`` disagrees with the target's bit
    at ``phi_hat[y]`` must flip it.  When the order of the pair is kept both
    ends flip together; when it is reversed exactly one end flips.  Values
    are read from ``psi``, never from ``phi``.
    """
    psi = W.psi
    in_dom = {x for x in G.vertices if psi[x] in phi}

    def mismatch(a, b):
        return psi[a](b) != psi[phi_hat[a]](phi_hat[b])

    bits = {}
    for x, y in itertools.combinations(G.vertices, 2):
        if G.same_part(x, y):
            bits[(x, y)] = (0, 0)
            continue
        keeps_order = phi_hat[x] < phi_hat[y]
        first = x in in_dom and mismatch(x, y)
        if keeps_order:
            second = y in in_dom and mismatch(y, x)
        else:
            second = y in in_dom and not mismatch(y, x)
        if x in in_dom and y in in_dom and first != second:
            raise FlipConsistencyError(
                f"flip conditions disagree on {{{x},{y}}}; phi is not a partial automorphism"
            )
        flag = int(first or second)
        bits[(x, y)] = (flag, flag) if keeps_order else (flag, 1 - flag)
    return FlipTable(bits)


@dataclass(frozen=True)
class ExtensionCertificate:
    """Everything produced while extending ``phi``.

    ``theta[i]`` is the enumeration index of the image of witness vertex ``i``.
    """

    phi: PartialAutomorphism
    iota_hat: dict
    phi_hat: dict
    flips: FlipTable
    theta: tuple
    witness: Witness

    def __call__(self, v: ValuationVertex) -> ValuationVertex:
        W = self.witness
        return W.vertices[self.theta[W.index(v)]]

    def as_mapping(self) -> dict:
        vs = self.witness.vertices
        return {vs[i]: vs[j] for i, j in enumerate(self.theta)}


def apply_theta(W: Witness, phi_hat: dict, flips: FlipTable) -> np.ndarray:
    """Image indices of every witness vertex under the rewrite defined by ``phi_hat`` and ``flips``."""
    G, k = W.graph, W.k
    B = W.bit_matrix
    weights = 1 << (k - np.arange(1, k + 1, dtype=np.int64))
    lookup = W._index
    theta = np.empty(len(W), dtype=np.int64)
    for x, members in W.fiber.items():
        rows = np.fromiter((W.index(v) for v in members), dtype=np.int64)
        target_col = np.empty(k, dtype=np.int64)
        mask = np.zeros(k, dtype=np.uint8)
        for y in G.vertices:
            target_col[phi_hat[y] - 1] = y - 1
            if y != x:
                mask[phi_hat[y] - 1] = flips.flip(x, y)
        # new[:, phi_hat(y)] = old[:, y] xor F(x); the base column stays 0 (old base bit is 0)
        new = B[rows][:, target_col] ^ mask
        words = new.astype(np.int64) @ weights
        fx = phi_hat[x]
        for r, w in zip(rows, words):
            theta[r] = lookup[ValuationVertex(fx, int(w), k)]
    return theta


def extend_automorphism(G: NormalizedTournament, W: Witness, phi: PartialAutomorphism,
                        rng: random.Random | None = None) -> ExtensionCertificate:
    """Build the automorphism of ``W`` extending ``phi``.

    ``phi`` must map embedded vertices to embedded vertices.  With ``rng``
    the part and vertex completions are randomized instead of ascending.
    """
    if W.graph is not G and W.graph != G:
        raise ValueError("witness was built from a different tournament")
    vertex_map, iota = induced_maps(W, phi)
    iota_hat = complete_parts(iota, G.n, rng)
    phi_hat = complete_vertices(vertex_map, iota_hat, G, rng)
    flips = compute_flips(G, W, phi, phi_hat)
    theta = apply_theta(W, phi_hat, flips)
    return ExtensionCertificate(phi, iota_hat, phi_hat, flips, tuple(int(t) for t in theta), W)


def compose_agrees(G: NormalizedTournament, W: Witness, phi1: PartialAutomorphism,
                   phi2: PartialAutomorphism) -> bool | None:
    """Whether the extension of ``phi1 . phi2`` equals the composite of the two extensions.

    Returns ``None`` when the composite is empty-domained in a way that makes
    the comparison meaningless (the two maps do not chain).
    """
    m1, m2 = phi1.mapping, phi2.mapping
    chained = {a: m1[b] for a, b in m2.items() if b in m1}
    if not chained:
        return None
    t1 = extend_automorphism(G, W, phi1).theta
    t2 = extend_automorphism(G, W, phi2).theta
    t12 = extend_automorphism(G, W, PartialAutomorphism.from_mapping(chained)).theta
    return all(t12[i] == t1[t2[i]] for i in range(len(W)))
