"""Finite n-partite tournaments, partial automorphisms and normalization.

Vertices are the integers ``1..k`` and parts are numbered ``1..n``.  A
tournament stores one ordered pair ``(x, y)`` per cross-part edge ``x -> y``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping


class InvalidTournament(ValueError):
    """Raised when an operation needs a valid tournament and gets another."""

    def __init__(self, violation: "Violation"):
        super().__init__(str(violation))
        self.violation = violation


@dataclass(frozen=True)
class Violation:
    kind: str
    where: tuple = ()

    def __str__(self):
        if not self.where:
            return self.kind
        inner = ",".join(str(v) for v in self.where)
        return f"{self.kind} at {{{inner}}}"


@dataclass(frozen=True)
class Tournament:
    """A directed graph with a part assignment.

    ``part_of[x - 1]`` is the part of vertex ``x``.  Nothing is checked on
    construction; use :func:`validate` for that.
    """

    part_of: tuple
    edges: frozenset
    n: int

    @classmethod
    def from_parts(cls, parts: Iterable[Iterable[int]], edges: Iterable[tuple]):
        """Build from a list of parts (part ``i`` is ``parts[i - 1]``)."""
        parts = [sorted(p) for p in parts]
        k = sum(len(p) for p in parts)
        part_of = [0] * k
        for i, members in enumerate(parts, start=1):
            for x in members:
                part_of[x - 1] = i
        return cls(tuple(part_of), frozenset((int(a), int(b)) for a, b in edges), len(parts))

    @property
    def k(self) -> int:
        return len(self.part_of)

    @property
    def vertices(self) -> range:
        return range(1, self.k + 1)

    def has_vertex(self, x) -> bool:
        return isinstance(x, int) and 1 <= x <= self.k

    def part(self, x: int) -> int:
        return self.part_of[x - 1]

    def same_part(self, x: int, y: int) -> bool:
        return self.part_of[x - 1] == self.part_of[y - 1]

    def has_edge(self, x: int, y: int) -> bool:
        return (x, y) in self.edges

    @cached_property
    def parts(self) -> tuple:
        out = [[] for _ in range(self.n)]
        for x, p in enumerate(self.part_of, start=1):
            if 1 <= p <= self.n:
                out[p - 1].append(x)
        return tuple(tuple(p) for p in out)

    def cross_pairs(self) -> Iterator[tuple]:
        """Unordered cross-part pairs ``(x, y)`` with ``x < y``, lexicographic."""
        for x, y in itertools.combinations(self.vertices, 2):
            if not self.same_part(x, y):
                yield x, y

    def relabel(self, mapping: Mapping[int, int], part_map: Mapping[int, int] | None = None):
        """Isomorphic copy with vertex ``x`` renamed ``mapping[x]``."""
        part_map = part_map or {i: i for i in range(1, self.n + 1)}
        part_of = [0] * self.k
        for x in self.vertices:
            part_of[mapping[x] - 1] = part_map[self.part(x)]
        edges = frozenset((mapping[a], mapping[b]) for a, b in self.edges)
        return Tournament(tuple(part_of), edges, self.n)


@dataclass(frozen=True)
class NormalizedTournament(Tournament):
    """A tournament on ``1..k`` with contiguous parts of common size ``m``.

    ``relabeling`` holds ``(original, new)`` pairs for the vertices of the
    source tournament; ``padding`` holds the added vertices (new labels).
    """

    m: int
    relabeling: tuple
    padding: frozenset

    @cached_property
    def relabel_map(self) -> dict:
        return dict(self.relabeling)

    @property
    def originals(self) -> tuple:
        """New labels of the source tournament's vertices, ascending."""
        return tuple(sorted(new for _, new in self.relabeling))

    def part(self, x: int) -> int:
        return (x - 1) // self.m + 1

    def same_part(self, x: int, y: int) -> bool:
        return (x - 1) // self.m == (y - 1) // self.m


@dataclass(frozen=True)
class PartialAutomorphism:
    """An injective partial map stored as sorted ``(source, image)`` pairs.

    Vertices may be any orderable hashable, so the same type serves for
    tournaments and for witness structures.
    """

    pairs: tuple

    @classmethod
    def from_mapping(cls, mapping: Mapping) -> "PartialAutomorphism":
        return cls(tuple(sorted(mapping.items())))

    @cached_property
    def mapping(self) -> dict:
        return dict(self.pairs)

    @property
    def dom(self) -> tuple:
        return tuple(a for a, _ in self.pairs)

    @property
    def image(self) -> tuple:
        return tuple(b for _, b in self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __call__(self, x: Hashable):
        return self.mapping[x]

    def __contains__(self, x):
        return x in self.mapping

    def inverse(self) -> "PartialAutomorphism":
        return PartialAutomorphism.from_mapping({b: a for a, b in self.pairs})

    def restrict(self, subset: Iterable) -> "PartialAutomorphism":
        keep = set(subset)
        return PartialAutomorphism(tuple(p for p in self.pairs if p[0] in keep))

    def transport(self, f) -> "PartialAutomorphism":
        """Conjugate through ``f``: the map ``f(a) -> f(b)``."""
        return PartialAutomorphism.from_mapping({f(a): f(b) for a, b in self.pairs})


def validate(T: Tournament, min_parts: int = 2) -> Violation | None:
    """Return ``None`` if ``T`` is a valid n-partite tournament, else the first violation.

    Checks run in a fixed order: part indices, edge endpoints, self-loops,
    then every pair ``x < y`` lexicographically, then the part count and
    empty parts.
    """
    for x, p in enumerate(T.part_of, start=1):
        if not 1 <= p <= T.n:
            return Violation("part index out of range", (x,))
    for a, b in sorted(T.edges):
        if not (T.has_vertex(a) and T.has_vertex(b)):
            return Violation("edge endpoint out of range", (a, b))
    for a, b in sorted(T.edges):
        if a == b:
            return Violation("self-loop", (a,))
    for x, y in itertools.combinations(T.vertices, 2):
        fwd, bwd = T.has_edge(x, y), T.has_edge(y, x)
        if T.part_of[x - 1] == T.part_of[y - 1]:
            if fwd or bwd:
                return Violation("intra-part edge", (x, y))
        elif fwd and bwd:
            return Violation("antisymmetry", (x, y))
        elif not (fwd or bwd):
            return Violation("completeness", (x, y))
    if T.n < min_parts:
        return Violation(f"fewer than {min_parts} parts", ())
    for i, members in enumerate(T.parts, start=1):
        if not members:
            return Violation("empty part", (i,))
    return None


def check(T: Tournament, min_parts: int = 2) -> Tournament:
    violation = validate(T, min_parts)
    if violation is not None:
        raise InvalidTournament(violation)
    return T


def normalize(T: Tournament) -> NormalizedTournament:
    """Relabel ``T`` onto ``1..k`` with contiguous, equal-size parts.

    Every part is padded up to the largest part size ``m``.  Within part ``i``
    the original vertices come first (ascending by old label), then padding.
    Edges touching a padding vertex run from the smaller label to the larger.
    """
    check(T)
    m = max(len(p) for p in T.parts)
    relabeling = []
    padding = set()
    for i, members in enumerate(T.parts):
        start = i * m + 1
        for offset, x in enumerate(members):
            relabeling.append((x, start + offset))
        padding.update(range(start + len(members), start + m))
    new = dict(relabeling)
    k = m * T.n
    part_of = tuple((x - 1) // m + 1 for x in range(1, k + 1))
    edges = {(new[a], new[b]) for a, b in T.edges}
    for x, y in itertools.combinations(range(1, k + 1), 2):
        if (x in padding or y in padding) and part_of[x - 1] != part_of[y - 1]:
            edges.add((x, y))
    return NormalizedTournament(
        part_of, frozenset(edges), T.n, m, tuple(sorted(relabeling)), frozenset(padding)
    )


def semigeneric_violation(T: Tournament):
    """First quadruple ``(i, j, (a, b), (c, d))`` with an odd edge count, or ``None``.

    The count is of edges going from ``{a, b}`` (in part ``i``) to
    ``{c, d}`` (in part ``j``).  Only ``i < j`` is scanned since the count in
    the other direction is ``4`` minus this one.
    """
    parts = T.parts
    for i, j in itertools.combinations(range(1, T.n + 1), 2):
        for a, b in itertools.combinations(parts[i - 1], 2):
            for c, d in itertools.combinations(parts[j - 1], 2):
                count = sum(T.has_edge(u, v) for u in (a, b) for v in (c, d))
                if count % 2:
                    return (i, j, (a, b), (c, d))
    return None


def is_semigeneric(T: Tournament) -> bool:
    return semigeneric_violation(T) is None


def is_partial_automorphism(T, p) -> bool:
    """Whether ``p`` is an isomorphism between two induced substructures of ``T``.

    ``T`` is anything exposing ``has_vertex``, ``same_part`` and ``has_edge``
    (a :class:`Tournament` or a witness).  ``p`` is a
    :class:`PartialAutomorphism` or a plain mapping.
    """
    mapping = p.mapping if isinstance(p, PartialAutomorphism) else dict(p)
    if len(set(mapping.values())) != len(mapping):
        return False
    if not all(T.has_vertex(a) and T.has_vertex(b) for a, b in mapping.items()):
        return False
    items = list(mapping.items())
    for (x, fx), (y, fy) in itertools.combinations(items, 2):
        if T.same_part(x, y) != T.same_part(fx, fy):
            return False
        if T.has_edge(x, y) != T.has_edge(fx, fy):
            return False
        if T.has_edge(y, x) != T.has_edge(fy, fx):
            return False
    return True
