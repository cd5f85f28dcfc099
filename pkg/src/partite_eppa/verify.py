"""Independent checks of the extension construction.

Nothing here uses the flip formulas: automorphisms are checked against the
witness's arc matrix, and extendability is decided by backtracking search.
"""

from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterator, Mapping

import numpy as np

from .core import (
    PartialAutomorphism,
    Tournament,
    check,
    is_partial_automorphism,
    normalize,
)
from .extend import extend_automorphism
from .witness import BudgetExceeded, Witness, build_witness

ORACLE_BUDGET = 4096


@dataclass(frozen=True)
class Failure:
    check: str
    where: tuple = ()

    def __str__(self):
        return f"{self.check}: {', '.join(map(_fmt, self.where))}"


def _fmt(v) -> str:
    return getattr(v, "label", str(v))


def _theta_indices(W: Witness, theta) -> np.ndarray:
    if hasattr(theta, "theta"):
        theta = theta.theta
    if isinstance(theta, Mapping):
        return np.array([W.index(theta[v]) for v in W.vertices], dtype=np.int64)
    return np.asarray(theta, dtype=np.int64)


def verify_automorphism(W: Witness, theta) -> Failure | None:
    """``None`` if ``theta`` is an automorphism of ``W``, else the first offending pair.

    ``theta`` is an index array, a vertex mapping, or an extension certificate.
    Pairs are scanned in enumeration order; a pair is reported when its arc
    status in either direction, or its same-part status, changes.
    """
    p = _theta_indices(W, theta)
    N = len(W)
    if p.shape != (N,) or p.min(initial=0) < 0 or p.max(initial=0) >= N:
        return Failure("not a total map", ())
    if len(np.unique(p)) != N:
        seen = {}
        for i, t in enumerate(p):
            if t in seen:
                return Failure("not injective", (W.vertices[seen[t]], W.vertices[i]))
            seen[t] = i
    A = W.adjacency()
    parts = W.part_array
    same = parts[:, None] == parts[None, :]
    bad = (A[p][:, p] != A) | (same[p][:, p] != same)
    hits = np.argwhere(bad)
    if len(hits):
        i, j = hits[0]
        return Failure("arc not preserved", (W.vertices[i], W.vertices[j]))
    return None


def verify_extends(theta, phi: PartialAutomorphism) -> Failure | None:
    """``None`` if ``theta(v) == phi(v)`` on the whole domain of ``phi``."""
    if hasattr(theta, "as_mapping"):
        theta = theta.as_mapping()
    for v, image in phi.pairs:
        if theta.get(v) != image:
            return Failure("does not extend", (v,))
    return None


def verify_embedding(G: Tournament, W: Witness) -> Failure | None:
    """Check that ``W.psi`` is an injective, part- and arc-preserving map from ``G``."""
    psi = W.psi
    if len(set(psi.values())) != len(psi):
        return Failure("psi not injective", ())
    for x in G.vertices:
        if psi[x].base != x or not W.has_vertex(psi[x]):
            return Failure("psi leaves its fiber", (x,))
    for x, y in itertools.permutations(G.vertices, 2):
        if G.same_part(x, y) != W.same_part(psi[x], psi[y]):
            return Failure("psi breaks parts", (x, y))
        if G.has_edge(x, y) != W.has_edge(psi[x], psi[y]):
            return Failure("psi breaks arc", (x, y))
    return None


# enumeration of partial automorphisms

def _consistent(T, pairs, x, fx) -> bool:
    for a, fa in pairs:
        if fa == fx:
            return False
        if T.same_part(a, x) != T.same_part(fa, fx):
            return False
        if T.has_edge(a, x) != T.has_edge(fa, fx) or T.has_edge(x, a) != T.has_edge(fx, fa):
            return False
    return True


def _exhaustive(T, max_dom) -> Iterator[PartialAutomorphism]:
    verts = list(T.vertices)

    def extend(dom, pairs):
        if len(pairs) == len(dom):
            yield PartialAutomorphism(tuple(pairs))
            return
        x = dom[len(pairs)]
        for fx in verts:
            if _consistent(T, pairs, x, fx):
                pairs.append((x, fx))
                yield from extend(dom, pairs)
                pairs.pop()

    for size in range(max_dom + 1):
        for dom in itertools.combinations(verts, size):
            yield from extend(dom, [])


def enumerate_partial_automorphisms(T, max_dom: int | None = None, sample: int | None = None,
                                    seed: int = 0) -> Iterator[PartialAutomorphism]:
    """Every partial automorphism of ``T`` with at most ``max_dom`` domain vertices.

    Order: by domain size, then domain (lexicographic), then image tuple.
    With ``sample`` set, a uniform reservoir sample of that many is yielded
    instead, still in enumeration order.
    """
    max_dom = T.k if max_dom is None else min(max_dom, T.k)
    stream = _exhaustive(T, max_dom)
    if sample is None:
        yield from stream
        return
    rng = random.Random(seed)
    reservoir = []
    for i, p in enumerate(stream):
        if i < sample:
            reservoir.append((i, p))
        else:
            j = rng.randint(0, i)
            if j < sample:
                reservoir[j] = (i, p)
    for _, p in sorted(reservoir, key=lambda t: t[0]):
        yield p


def random_partial_automorphism(T, rng: random.Random, max_dom: int | None = None,
                                max_tries: int = 1000) -> PartialAutomorphism:
    """Draw a domain size, a domain, then images one vertex at a time.

    A dead end restarts the draw.  After ``max_tries`` dead ends the empty
    map is returned.
    """
    verts = list(T.vertices)
    max_dom = T.k if max_dom is None else min(max_dom, T.k)
    for _ in range(max_tries):
        size = rng.randint(0, max_dom)
        dom = sorted(rng.sample(verts, size))
        pairs = []
        for x in dom:
            options = [fx for fx in verts if _consistent(T, pairs, x, fx)]
            if not options:
                break
            pairs.append((x, rng.choice(options)))
        else:
            return PartialAutomorphism(tuple(pairs))
    return PartialAutomorphism(())


# backtracking search

def _solutions(src: np.ndarray, dst: np.ndarray, cand: np.ndarray, fixed: dict):
    """Injective maps from ``src`` vertices to ``dst`` vertices preserving arcs both ways.

    ``cand[u, c]`` restricts the images of ``u``.  Forward checking after each
    assignment, most-constrained vertex first.  Yields index arrays.
    """
    cand = cand.copy()
    assigned = np.full(src.shape[0], -1, dtype=np.int64)

    def assign(cand, u, t):
        cand = cand.copy()
        cand[:, t] = False
        cand[u, :] = False
        cand[u, t] = True
        free = assigned < 0
        free[u] = False
        cand[free] &= (dst[:, t][None, :] == src[free, u][:, None])
        cand[free] &= (dst[t, :][None, :] == src[u, free][:, None])
        return cand

    for u, t in fixed.items():
        if not cand[u, t]:
            return
        cand = assign(cand, u, t)
        assigned[u] = t
    if not cand[assigned < 0].any(axis=1).all():
        return

    def recurse(cand):
        free = np.flatnonzero(assigned < 0)
        if len(free) == 0:
            yield assigned.copy()
            return
        counts = cand[free].sum(axis=1)
        if counts.min() == 0:
            return
        u = free[np.argmin(counts)]
        for t in np.flatnonzero(cand[u]):
            nxt = assign(cand, u, t)
            assigned[u] = t
            if nxt[assigned < 0].any(axis=1).all():
                yield from recurse(nxt)
            assigned[u] = -1

    yield from recurse(cand)


def _search(src, dst, cand, fixed):
    return next(_solutions(src, dst, cand, fixed), None)


def _check_budget(W: Witness, budget: int):
    if len(W) > budget:
        raise BudgetExceeded(len(W), budget, "oracle search")


def find_extension(W: Witness, phi: PartialAutomorphism, budget: int = ORACLE_BUDGET):
    """Search for an automorphism of ``W`` extending ``phi``; index array or ``None``.

    Tries every part permutation compatible with the part map of ``phi``.
    Raises ``ValueError`` if ``phi`` is not a partial automorphism of ``W``.
    """
    _check_budget(W, budget)
    if not is_partial_automorphism(W, phi):
        raise ValueError("phi is not a partial automorphism of the witness")
    iota = {W.part(u): W.part(v) for u, v in phi.pairs}
    A = W.adjacency()
    parts = W.part_array
    fixed = {W.index(u): W.index(v) for u, v in phi.pairs}
    for perm in itertools.permutations(range(1, W.n + 1)):
        if any(perm[i - 1] != j for i, j in iota.items()):
            continue
        target = np.array(perm)[parts - 1]
        cand = target[:, None] == parts[None, :]
        found = _search(A, A, cand, fixed)
        if found is not None:
            return found
    return None


def oracle_extendable(W: Witness, phi: PartialAutomorphism, budget: int = ORACLE_BUDGET) -> bool:
    return find_extension(W, phi, budget) is not None


def _tournament_arcs(T: Tournament) -> np.ndarray:
    A = np.zeros((T.k, T.k), dtype=bool)
    for a, b in T.edges:
        A[a - 1, b - 1] = True
    return A


def embeddings(A: Tournament, W: Witness, budget: int = ORACLE_BUDGET):
    """Every embedding of ``A`` into ``W`` as ``{vertex of A: witness vertex}``."""
    _check_budget(W, budget)
    check(A, min_parts=1)
    if A.n > W.n:
        raise ValueError(f"{A.n} parts cannot embed into a {W.n}-partite witness")
    src = _tournament_arcs(A)
    src_parts = np.array(A.part_of)
    parts = W.part_array
    for targets in itertools.permutations(range(1, W.n + 1), A.n):
        target = np.array(targets)[src_parts - 1]
        cand = target[:, None] == parts[None, :]
        for found in _solutions(src, W.adjacency(), cand, {}):
            yield {x: W.vertices[found[x - 1]] for x in A.vertices}


def find_embedding(A: Tournament, W: Witness, budget: int = ORACLE_BUDGET) -> dict | None:
    return next(embeddings(A, W, budget), None)


def verify_remark(W: Witness, A: Tournament, max_dom: int | None = None,
                  budget: int = ORACLE_BUDGET, max_embeddings: int | None = None) -> Failure | None:
    """Check that ``W`` also serves as a witness for the smaller tournament ``A``.

    Succeeds when some copy of ``A`` in ``W`` has every partial automorphism
    (domain at most ``max_dom``) extending to an automorphism of ``W``.
    Copies are tried in search order, at most ``max_embeddings`` of them.
    Not every copy works: two vertices of one fiber are not interchangeable.
    """
    maps = list(enumerate_partial_automorphisms(A, max_dom))
    first_bad = None
    for count, embedding in enumerate(embeddings(A, W, budget)):
        if max_embeddings is not None and count >= max_embeddings:
            break
        for p in maps:
            lifted = p.transport(embedding.__getitem__)
            if not oracle_extendable(W, lifted, budget):
                first_bad = first_bad or Failure("not extendable", tuple(lifted.dom))
                break
        else:
            return None
    return first_bad or Failure("no embedding", ())


# instance generators

def _equal_parts(n: int, k: int) -> tuple:
    if n < 2 or k % n:
        raise ValueError(f"need n >= 2 dividing k, got n={n}, k={k}")
    m = k // n
    return tuple((x - 1) // m + 1 for x in range(1, k + 1))


def _orient(part_of, n, bits) -> Tournament:
    k = len(part_of)
    pairs = [(x, y) for x, y in itertools.combinations(range(1, k + 1), 2)
             if part_of[x - 1] != part_of[y - 1]]
    edges = frozenset((y, x) if b else (x, y) for (x, y), b in zip(pairs, bits))
    return Tournament(part_of, edges, n)


def cross_pair_count(n: int, k: int) -> int:
    m = k // n
    return m * m * n * (n - 1) // 2


def exhaustive_tournaments(n: int, k: int) -> Iterator[Tournament]:
    """All orientations of the complete n-partite graph with equal contiguous parts.

    Instance ``i`` reverses the ``j``-th cross pair (lexicographic) iff bit
    ``j`` of ``i`` is set.
    """
    part_of = _equal_parts(n, k)
    count = cross_pair_count(n, k)
    for mask in range(2**count):
        yield _orient(part_of, n, [(mask >> j) & 1 for j in range(count)])


def random_tournament(n: int, k: int, rng: random.Random) -> Tournament:
    part_of = _equal_parts(n, k)
    return _orient(part_of, n, [rng.getrandbits(1) for _ in range(cross_pair_count(n, k))])


# campaigns

@dataclass(frozen=True)
class CampaignConfig:
    """What to run.

    ``generator`` is ``"exhaustive"`` (every orientation for each ``k`` in
    ``ks``), ``"random"`` (``instances_per_k`` seeded draws per ``k``), or
    ``"given"`` (the tournaments in ``tournaments``).  ``phi_sample=None``
    enumerates every partial automorphism up to ``max_dom``; an integer
    draws that many at random per instance.
    """

    generator: str = "exhaustive"
    n: int = 2
    ks: tuple = (2, 4)
    instances_per_k: int = 10
    tournaments: tuple = ()
    max_dom: int | None = None
    phi_sample: int | None = None
    oracle: bool = False
    random_completions: int = 0
    seed: int = 0
    jobs: int = 1
    budget: int | None = None
    oracle_budget: int = ORACLE_BUDGET


@dataclass
class VerificationReport:
    instances: int = 0
    tested: int = 0
    passed: int = 0
    failed: int = 0
    embedding_checks: int = 0
    embedding_failures: int = 0
    oracle_checks: int = 0
    failures: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    per_instance: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.embedding_failures == 0 and not self.errors

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        out = VerificationReport()
        for name in ("instances", "tested", "passed", "failed", "embedding_checks",
                     "embedding_failures", "oracle_checks"):
            setattr(out, name, getattr(self, name) + getattr(other, name))
        out.failures = self.failures + other.failures
        out.errors = self.errors + other.errors
        out.per_instance = self.per_instance + other.per_instance
        return out

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def campaign_instances(config: CampaignConfig) -> list:
    """``(descriptor, tournament)`` pairs in run order."""
    if config.generator == "given":
        return [({"index": i, "source": "given"}, T) for i, T in enumerate(config.tournaments)]
    out = []
    for k in config.ks:
        if config.generator == "exhaustive":
            for i, T in enumerate(exhaustive_tournaments(config.n, k)):
                out.append(({"k": k, "n": config.n, "index": i}, T))
        elif config.generator == "random":
            rng = random.Random(f"instances:{config.seed}:{config.n}:{k}")
            for i in range(config.instances_per_k):
                out.append(({"k": k, "n": config.n, "index": i, "seed": config.seed},
                            random_tournament(config.n, k, rng)))
        else:
            raise ValueError(f"unknown generator {config.generator!r}")
    return out


def _phi_stream(T: Tournament, config: CampaignConfig, rng: random.Random):
    if config.phi_sample is None:
        return enumerate_partial_automorphisms(T, config.max_dom)
    return (random_partial_automorphism(T, rng, config.max_dom) for _ in range(config.phi_sample))


def check_instance(descriptor: dict, T: Tournament, config: CampaignConfig) -> VerificationReport:
    """Run the full pipeline on one tournament."""
    report = VerificationReport(instances=1)
    tag = json.dumps(descriptor, sort_keys=True)
    try:
        G = normalize(T)
        W = build_witness(G, config.budget)
    except (BudgetExceeded, ValueError) as exc:
        report.errors.append({"instance": descriptor, "error": str(exc)})
        return report
    report.embedding_checks = 1
    bad = verify_embedding(G, W)
    if bad is not None:
        report.embedding_failures = 1
        report.failures.append({"instance": descriptor, "phi": None, "check": str(bad)})
    rng = random.Random(f"phi:{config.seed}:{tag}")
    relabel = G.relabel_map
    for p in _phi_stream(T, config, rng):
        report.tested += 1
        phi = p.transport(lambda x: W.psi[relabel[x]])
        problem = _check_phi(G, W, phi, config, rng)
        if problem is None:
            report.passed += 1
        else:
            report.failed += 1
            report.failures.append({"instance": descriptor, "phi": [list(q) for q in p.pairs],
                                    "check": problem})
        if config.oracle:
            report.oracle_checks += 1
    report.per_instance.append({**descriptor, "k_normalized": G.k, "m": G.m,
                                "witness_size": len(W), "tested": report.tested,
                                "failed": report.failed})
    return report


def _check_phi(G, W, phi, config: CampaignConfig, rng: random.Random) -> str | None:
    completions = [None] + [random.Random(rng.getrandbits(64))
                            for _ in range(config.random_completions)]
    for c, crng in enumerate(completions):
        label = "ascending" if crng is None else f"random completion {c}"
        try:
            cert = extend_automorphism(G, W, phi, crng)
        except Exception as exc:  # noqa: BLE001 - reported, not raised
            return f"{label}: extend raised {type(exc).__name__}: {exc}"
        bad = verify_automorphism(W, cert) or verify_extends(cert, phi)
        if bad is not None:
            return f"{label}: {bad}"
    if config.oracle:
        found = find_extension(W, phi, config.oracle_budget)
        if found is None:
            return "oracle: no extending automorphism found"
        bad = verify_automorphism(W, found) or verify_extends(
            {W.vertices[i]: W.vertices[j] for i, j in enumerate(found)}, phi)
        if bad is not None:
            return f"oracle: {bad}"
    return None


def _run_item(item):
    descriptor, T, config = item
    return check_instance(descriptor, T, config)


def run_campaign(config: CampaignConfig) -> VerificationReport:
    """Check every instance of ``config``; results are merged in instance order."""
    items = [(d, T, config) for d, T in campaign_instances(config)]
    if config.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            parts = list(pool.map(_run_item, items))
    else:
        parts = [_run_item(item) for item in items]
    report = VerificationReport()
    for part in parts:
        report = report.merge(part)
    return report
