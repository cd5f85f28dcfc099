"""The valuation-function witness ``H`` and the canonical embedding of ``G``.

A witness vertex is a pair ``(x, chi)`` where ``chi`` assigns a bit to every
vertex other than ``x`` and is zero on the part of ``x``.  ``chi`` is stored
as a ``k``-bit word, vertex ``y`` at bit ``k - y`` (vertex 1 most
significant); bit ``x`` and the bits of ``x``'s part are always zero.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .core import NormalizedTournament, Tournament, check

BUDGET_ENV = "PARTITE_EPPA_VERTEX_BUDGET"
DEFAULT_VERTEX_BUDGET = 2**24
# Above this vertex count the adjacency matrix is not materialized.
MATERIALIZE_LIMIT = 4096


class BudgetExceeded(ValueError):
    def __init__(self, size: int, budget: int, what: str = "witness"):
        super().__init__(f"{what} would have {size} vertices, budget is {budget}")
        self.size = size
        self.budget = budget


def default_budget() -> int:
    return int(os.environ.get(BUDGET_ENV, DEFAULT_VERTEX_BUDGET))


class ValuationVertex(NamedTuple):
    base: int
    word: int
    k: int

    def __call__(self, y: int) -> int:
        if y == self.base:
            raise KeyError(f"valuation for {self.base} is undefined there")
        return (self.word >> (self.k - y)) & 1

    @property
    def label(self) -> str:
        return f"{self.base}#{self.word:0{self.k}b}"

    @classmethod
    def from_label(cls, label: str) -> "ValuationVertex":
        base, bits = label.split("#")
        return cls(int(base), int(bits, 2), len(bits))


def word_from_bits(bits: dict, k: int) -> int:
    return sum(b << (k - y) for y, b in bits.items())


def arc(u: ValuationVertex, v: ValuationVertex) -> bool:
    """Whether ``u -> v`` in the witness, assuming different parts."""
    x, y = u.base, v.base
    same = u(y) == v(x)
    return same if x < y else not same


def witness_size(k: int, n: int) -> int:
    """Vertex count of the witness over a normalized ``k``-vertex, ``n``-part input."""
    if n < 2:
        raise ValueError("need at least two parts")
    if k % n:
        raise ValueError(f"{n} does not divide {k}")
    return k * 2 ** (k - k // n)


def embed(G: NormalizedTournament) -> dict:
    """The embedding ``x -> chi_x`` with ``chi_x(y) = 1`` iff ``y < x`` and ``x -> y``."""
    k = G.k
    psi = {}
    for x in G.vertices:
        bits = {y: 1 for y in range(1, x) if G.has_edge(x, y)}
        psi[x] = ValuationVertex(x, word_from_bits(bits, k), k)
    return psi


def _free_positions(G: NormalizedTournament, x: int) -> list:
    return [y for y in G.vertices if not G.same_part(x, y)]


@dataclass(eq=False)
class Witness:
    """All valuation vertices over ``graph``, in enumeration order.

    Order is by base vertex, then by the valuation word as an integer.  Treat
    instances as read-only.
    """

    graph: NormalizedTournament
    vertices: tuple
    psi: dict
    materialize_limit: int = MATERIALIZE_LIMIT
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {v: i for i, v in enumerate(self.vertices)}

    @property
    def k(self) -> int:
        return self.graph.k

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    def __len__(self):
        return len(self.vertices)

    def index(self, v: ValuationVertex) -> int:
        return self._index[v]

    def has_vertex(self, v) -> bool:
        return v in self._index

    def part(self, v: ValuationVertex) -> int:
        return self.graph.part(v.base)

    def same_part(self, u: ValuationVertex, v: ValuationVertex) -> bool:
        return self.graph.same_part(u.base, v.base)

    def has_edge(self, u: ValuationVertex, v: ValuationVertex) -> bool:
        if self.graph.same_part(u.base, v.base):
            return False
        return arc(u, v)

    @cached_property
    def parts(self) -> tuple:
        out = [[] for _ in range(self.n)]
        for v in self.vertices:
            out[self.part(v) - 1].append(v)
        return tuple(tuple(p) for p in out)

    @cached_property
    def fiber(self) -> dict:
        """``x -> `` all witness vertices with base ``x``."""
        out = {x: [] for x in self.graph.vertices}
        for v in self.vertices:
            out[v.base].append(v)
        return {x: tuple(vs) for x, vs in out.items()}

    @cached_property
    def bases(self) -> np.ndarray:
        return np.array([v.base for v in self.vertices], dtype=np.int64)

    @cached_property
    def part_array(self) -> np.ndarray:
        return (self.bases - 1) // self.m + 1

    @cached_property
    def bit_matrix(self) -> np.ndarray:
        """``B[i, y - 1]`` is the value of vertex ``i`` at ``y`` (0 at its own base)."""
        words = np.array([v.word for v in self.vertices], dtype=np.int64)
        shifts = self.k - np.arange(1, self.k + 1)
        return ((words[:, None] >> shifts[None, :]) & 1).astype(np.uint8)

    def edge_count(self) -> int:
        sizes = [len(p) for p in self.parts]
        return sum(a * b for a, b in itertools.combinations(sizes, 2))

    def adjacency(self) -> np.ndarray:
        """Dense boolean arc matrix, ``A[i, j]`` iff vertex ``i`` -> vertex ``j``."""
        if len(self) > self.materialize_limit:
            raise BudgetExceeded(len(self), self.materialize_limit, "dense adjacency")
        return self._adjacency

    @cached_property
    def _adjacency(self) -> np.ndarray:
        b = self.bases
        # val[i, j] = chi_i(base_j); val.T[i, j] = chi_j(base_i)
        val = self.bit_matrix[:, b - 1]
        same_val = val == val.T
        lower = b[:, None] < b[None, :]
        cross = self.part_array[:, None] != self.part_array[None, :]
        return cross & np.where(lower, same_val, ~same_val)

    def edges(self):
        """Arcs as ``(u, v)`` vertex pairs in enumeration order."""
        if len(self) <= self.materialize_limit:
            A = self.adjacency()
            for i, j in zip(*np.nonzero(A)):
                yield self.vertices[i], self.vertices[j]
            return
        for u in self.vertices:
            for v in self.vertices:
                if self.has_edge(u, v):
                    yield u, v

    def as_tournament(self) -> Tournament:
        """The witness as a plain tournament on ``1..|V'|`` (enumeration order)."""
        part_of = tuple(int(p) for p in self.part_array)
        edges = frozenset((self.index(u) + 1, self.index(v) + 1) for u, v in self.edges())
        return Tournament(part_of, edges, self.n)


def build_witness(G: NormalizedTournament, budget: int | None = None,
                  materialize_limit: int = MATERIALIZE_LIMIT) -> Witness:
    """Construct the valuation witness over ``G`` together with ``psi``.

    Raises :class:`BudgetExceeded` when ``k * 2**(k - m)`` exceeds ``budget``
    (default from ``PARTITE_EPPA_VERTEX_BUDGET`` or ``2**24``).
    """
    check(G)
    if not isinstance(G, NormalizedTournament):
        raise TypeError("build_witness needs a NormalizedTournament; call normalize first")
    budget = default_budget() if budget is None else budget
    size = witness_size(G.k, G.n)
    if size > budget:
        raise BudgetExceeded(size, budget)
    k = G.k
    vertices = []
    for x in G.vertices:
        free = _free_positions(G, x)
        # scattering an ascending counter into ascending positions keeps words ascending
        for counter in range(2 ** len(free)):
            word = 0
            for j, y in enumerate(free):
                if (counter >> (len(free) - 1 - j)) & 1:
                    word |= 1 << (k - y)
            vertices.append(ValuationVertex(x, word, k))
    return Witness(G, tuple(vertices), embed(G), materialize_limit)
