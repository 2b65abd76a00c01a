"""
Finite posets, up-sets and prime filters.

Elements are dense indices 0..n-1 carrying display names. Subsets of a
carrier are plain Python ints used as bitsets (bit i stands for element i),
and families of subsets are kept sorted by integer value.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import networkx as nx
import numpy as np

from .config import check_carrier_size
from .exceptions import (
    CycleDetected,
    NotAPartialOrder,
    NotAnUpSet,
    UnknownName,
)

logger = logging.getLogger(__name__)


def bits_of(indices: Iterable[int]) -> int:
    bits = 0
    for i in indices:
        bits |= 1 << int(i)
    return bits


def members(bits: int) -> list[int]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


def popcount(bits: int) -> int:
    return bin(bits).count("1")


def full_set(n: int) -> int:
    return (1 << n) - 1


class FinitePoset:
    """A finite partial order on named elements.

    The order matrix is read-only; ``leq[i, j]`` is True iff i <= j.
    Construct through :func:`poset_from_covers` or :meth:`from_leq`, both of
    which check the partial-order laws.
    """

    def __init__(self, names: Sequence[str], leq: np.ndarray) -> None:
        self.names = tuple(str(x) for x in names)
        matrix = np.array(leq, dtype=bool, copy=True)
        matrix.setflags(write=False)
        self.leq = matrix
        self._index = {name: i for i, name in enumerate(self.names)}
        self._up = tuple(bits_of(np.flatnonzero(matrix[i])) for i in range(self.n))
        self._down = tuple(bits_of(np.flatnonzero(matrix[:, i])) for i in range(self.n))

    @classmethod
    def from_leq(cls, names: Sequence[str], leq) -> "FinitePoset":
        names = [str(x) for x in names]
        _check_names(names)
        check_carrier_size(len(names), "poset")
        matrix = np.asarray(leq, dtype=bool)
        n = len(names)
        if matrix.shape != (n, n):
            raise NotAPartialOrder(f"order matrix has shape {matrix.shape}, expected {(n, n)}")
        diag = np.flatnonzero(~np.diag(matrix))
        if diag.size:
            raise NotAPartialOrder(f"order is not reflexive at {names[diag[0]]}")
        anti = np.argwhere(matrix & matrix.T & ~np.eye(n, dtype=bool))
        if anti.size:
            i, j = anti[0]
            raise NotAPartialOrder(f"order is not antisymmetric at {names[i]}, {names[j]}")
        composed = (matrix.astype(np.int64) @ matrix.astype(np.int64)) > 0
        trans = np.argwhere(composed & ~matrix)
        if trans.size:
            i, j = trans[0]
            raise NotAPartialOrder(f"order is not transitive at {names[i]}, {names[j]}")
        return cls(names, matrix)

    @property
    def n(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.names == other.names and np.array_equal(self.leq, other.leq)

    __hash__ = None

    def __repr__(self) -> str:
        return f"FinitePoset({list(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownName(name) from None

    def le(self, i: int, j: int) -> bool:
        return bool(self.leq[i, j])

    def comparable(self, i: int, j: int) -> bool:
        return bool(self.leq[i, j] or self.leq[j, i])

    def up(self, i: int) -> int:
        return self._up[i]

    def down(self, i: int) -> int:
        return self._down[i]

    @property
    def everything(self) -> int:
        return full_set(self.n)

    def upset_closure(self, bits: int) -> int:
        out = 0
        for i in members(bits):
            out |= self._up[i]
        return out

    def downset_closure(self, bits: int) -> int:
        out = 0
        for i in members(bits):
            out |= self._down[i]
        return out

    def is_upset(self, bits: int) -> bool:
        return self.upset_closure(bits) == bits

    def is_downset(self, bits: int) -> bool:
        return self.downset_closure(bits) == bits

    def is_chain(self, bits: int) -> bool:
        elems = members(bits)
        return all(self.comparable(i, j) for k, i in enumerate(elems) for j in elems[k + 1:])

    def minimal(self) -> int:
        return bits_of(i for i in range(self.n) if self._down[i] == 1 << i)

    def maximal(self) -> int:
        return bits_of(i for i in range(self.n) if self._up[i] == 1 << i)

    def least(self) -> int | None:
        for i in range(self.n):
            if self._up[i] == self.everything:
                return i
        return None

    def greatest(self) -> int | None:
        for i in range(self.n):
            if self._down[i] == self.everything:
                return i
        return None

    def linear_extension(self) -> list[int]:
        """Indices sorted so that i < j in the order implies i comes first."""
        return sorted(range(self.n), key=lambda i: (popcount(self._down[i]), i))

    def strict_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(
            (int(i), int(j)) for i, j in np.argwhere(self.leq) if i != j
        )
        return graph

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges (lower, upper), sorted."""
        reduced = nx.transitive_reduction(self.strict_graph())
        return sorted((int(i), int(j)) for i, j in reduced.edges())

    def subposet(self, indices: Sequence[int]) -> "FinitePoset":
        idx = list(indices)
        return FinitePoset([self.names[i] for i in idx], self.leq[np.ix_(idx, idx)])

    def canonical_key(self, marked: Sequence[int] = ()) -> tuple:
        """Smallest relabelled order matrix, with the images of ``marked``.

        Isomorphic posets (with matching marked points) share a key. Runs over
        all permutations, so it is meant for carriers of a handful of points.
        """
        best = None
        for perm in itertools.permutations(range(self.n)):
            p = np.asarray(perm, dtype=np.intp)
            inv = np.empty_like(p)
            inv[p] = np.arange(self.n)
            key = (
                self.leq[np.ix_(inv, inv)].tobytes(),
                tuple(int(p[m]) for m in marked),
            )
            if best is None or key < best:
                best = key
        return (self.n,) + (best or (b"", ()))

    def subset_names(self, bits: int) -> str:
        return "{" + ",".join(self.names[i] for i in members(bits)) + "}"


def _check_names(names: Sequence[str]) -> None:
    seen = set()
    for name in names:
        if name in seen:
            raise NotAPartialOrder(f"duplicate element name {name!r}")
        seen.add(name)


def poset_from_covers(names: Sequence[str], covers: Iterable[tuple[str, str]]) -> FinitePoset:
    """Build the poset whose order is the reflexive-transitive closure of covers.

    Raises:
        UnknownName: A cover mentions a name not in ``names``.
        CycleDetected: The cover relation has a directed cycle.
    """
    names = [str(x) for x in names]
    _check_names(names)
    check_carrier_size(len(names), "poset")
    index = {name: i for i, name in enumerate(names)}

    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(names)))
    for lower, upper in covers:
        if lower not in index:
            raise UnknownName(lower, "covers")
        if upper not in index:
            raise UnknownName(upper, "covers")
        graph.add_edge(index[lower], index[upper])

    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        raise CycleDetected([names[u] for u, _ in cycle] + [names[cycle[0][0]]])

    closure = nx.transitive_closure(graph, reflexive=True)
    leq = np.zeros((len(names), len(names)), dtype=bool)
    for i, j in closure.edges():
        leq[i, j] = True
    logger.debug(f"Poset on {len(names)} elements from {graph.number_of_edges()} covers")
    return FinitePoset(names, leq)


def is_forest(P: FinitePoset) -> bool:
    """True iff every principal up-set is a chain."""
    return all(P.is_chain(P.up(i)) for i in range(P.n))


@dataclass(frozen=True)
class SubsetFamily:
    """Canonically sorted, duplicate-free family of subsets of a poset."""

    ground: FinitePoset
    members: tuple[int, ...]

    @classmethod
    def of(cls, ground: FinitePoset, subsets: Iterable[int]) -> "SubsetFamily":
        return cls(ground, tuple(sorted(set(int(s) for s in subsets))))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, bits) -> bool:
        return bits in self.members

    def __getitem__(self, i: int) -> int:
        return self.members[i]

    def index(self, bits: int) -> int:
        return self.members.index(bits)

    def names(self) -> list[str]:
        return [self.ground.subset_names(b) for b in self.members]


def up_sets(P: FinitePoset) -> SubsetFamily:
    """All up-sets of P, including the empty set and the whole carrier."""
    found = [0]
    # tops first, so every element above x is decided before x
    for x in reversed(P.linear_extension()):
        above = P.up(x) & ~(1 << x)
        found += [U | (1 << x) for U in found if U & above == above]
    logger.debug(f"{len(found)} up-sets on {P.n} elements")
    return SubsetFamily.of(P, found)


def prime_filters(L, generalized: bool = False) -> SubsetFamily:
    """Prime filters of a finite lattice, as subsets of its carrier.

    In a finite lattice every filter is principal, so the prime filters are
    the sets ↑a with a join-prime and different from the least element. With
    ``generalized`` the improper filter (the whole carrier) is added.

    Args:
        L: Anything exposing ``poset`` and a ``join`` table.
        generalized: Include the improper filter.
    """
    P = L.poset
    join = np.asarray(L.join)
    bottom = P.least()
    found = []
    for a in range(P.n):
        if a == bottom:
            continue
        inside = P.leq[a]
        # a <= b v c while a </= b and a </= c
        broken = inside[join] & ~(inside[:, None] | inside[None, :])
        if not broken.any():
            found.append(P.up(a))
    if generalized:
        found.append(P.everything)
    return SubsetFamily.of(P, found)


def heyting_arrow_upsets(P: FinitePoset, U: int, V: int) -> int:
    """{x : ↑x ∩ U ⊆ V}, the relative pseudocomplement of up-sets.

    Raises:
        NotAnUpSet: U or V is not upward closed.
    """
    for label, bits in (("U", U), ("V", V)):
        if not P.is_upset(bits):
            raise NotAnUpSet(f"{label}={P.subset_names(bits)} is not an up-set")
    return bits_of(x for x in range(P.n) if P.up(x) & U & ~V == 0)
