"""
Homomorphisms between finite algebras.

Enumeration is a backtracking search over the source carrier: the smallest
unassigned element is tried against every target element in index order,
and each choice is propagated through the operation tables so that forced
images are fixed (or refuted) before the next branch.
"""
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .algebra import BINARY_OPS, CONSTANTS, FiniteAlgebra
from .exceptions import SignatureError
from .report import ValidationReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Morphism:
    """A carrier map together with the operations it claims to preserve."""

    source: FiniteAlgebra
    target: FiniteAlgebra
    mapping: tuple[int, ...]
    signature: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.mapping) != self.source.n:
            raise SignatureError(
                f"map from {self.source.name} has {len(self.mapping)} values, expected {self.source.n}"
            )
        if any(not 0 <= v < self.target.n for v in self.mapping):
            raise SignatureError(f"map into {self.target.name} leaves the carrier")

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def by_name(self) -> dict[str, str]:
        return {
            self.source.names[i]: self.target.names[v] for i, v in enumerate(self.mapping)
        }

    def describe(self) -> list[str]:
        return [f"{x} ↦ {y}" for x, y in self.by_name().items()]

    @property
    def is_bijective(self) -> bool:
        return self.source.n == self.target.n and len(set(self.mapping)) == self.target.n

    def inverse(self) -> "Morphism":
        if not self.is_bijective:
            raise SignatureError(f"map {self.source.name} → {self.target.name} is not bijective")
        inv = [0] * self.target.n
        for i, v in enumerate(self.mapping):
            inv[v] = i
        return Morphism(self.target, self.source, tuple(inv), self.signature)

    def validate(self) -> ValidationReport:
        report = ValidationReport(f"{self.source.name} → {self.target.name}")
        h = np.asarray(self.mapping, dtype=np.intp)
        src, dst = self.source, self.target
        for op in self.signature:
            if op in BINARY_OPS:
                bad = dst.table(op)[h[:, None], h[None, :]] != h[src.table(op)]
                hits = np.argwhere(bad)
                report.add(
                    f"preserves {op}",
                    None if hits.size == 0 else (src.names[hits[0][0]], src.names[hits[0][1]]),
                )
            elif op == "neg":
                hits = np.flatnonzero(dst.neg[h] != h[src.neg])
                report.add("preserves neg", None if hits.size == 0 else (src.names[hits[0]],))
            else:
                report.check(
                    f"preserves {op}",
                    h[src.constant(op)] == dst.constant(op),
                    (src.names[src.constant(op)],),
                )
        return report

    def validate_isomorphism(self) -> ValidationReport:
        report = self.validate()
        report.check("bijective", self.is_bijective, (self.source.name,))
        return report


def identity(A: FiniteAlgebra) -> Morphism:
    return Morphism(A, A, tuple(range(A.n)), A.signature)


def compose(g: Morphism, h: Morphism) -> Morphism:
    """g after h."""
    signature = tuple(op for op in h.signature if op in g.signature)
    return Morphism(h.source, g.target, tuple(g.mapping[v] for v in h.mapping), signature)


def _shared_signature(A: FiniteAlgebra, B: FiniteAlgebra, signature: Iterable[str] | None):
    sig = tuple(A.signature if signature is None else signature)
    for op in sig:
        if not (A.has(op) and B.has(op)):
            raise SignatureError(f"operation {op} is not shared by {A.name} and {B.name}")
    return sig


class _Search:
    """Backtracking with table propagation; optional injectivity."""

    def __init__(self, A, B, signature, allowed: np.ndarray, injective: bool) -> None:
        self.n, self.m = A.n, B.n
        self.binary = [(A.table(op), B.table(op)) for op in signature if op in BINARY_OPS]
        self.unary = [(A.neg, B.neg)] if "neg" in signature else []
        self.fixed = [(A.constant(op), B.constant(op)) for op in signature if op in CONSTANTS]
        self.allowed = allowed
        self.injective = injective
        self.nodes = 0

    def _set(self, assign, used, x, v, stack) -> bool:
        x, v = int(x), int(v)
        if assign[x] >= 0:
            return assign[x] == v
        if not self.allowed[x, v] or (self.injective and used[v]):
            return False
        assign[x] = v
        used[v] = True
        stack.append(x)
        return True

    def _propagate(self, assign, used, stack) -> bool:
        while stack:
            x = stack.pop()
            hx = assign[x]
            for ta, tb in self.unary:
                if not self._set(assign, used, ta[x], tb[hx], stack):
                    return False
            done = np.flatnonzero(assign >= 0)
            for ta, tb in self.binary:
                for y in done:
                    hy = assign[y]
                    if not self._set(assign, used, ta[x, y], tb[hx, hy], stack):
                        return False
                    if not self._set(assign, used, ta[y, x], tb[hy, hx], stack):
                        return False
        return True

    def run(self, first_only: bool = False) -> list[tuple[int, ...]]:
        assign = np.full(self.n, -1, dtype=np.intp)
        used = np.zeros(self.m, dtype=bool)
        stack: list[int] = []
        for a, b in self.fixed:
            if not self._set(assign, used, a, b, stack):
                return []
        if not self._propagate(assign, used, stack):
            return []
        found: list[tuple[int, ...]] = []

        def dfs(assign, used) -> bool:
            self.nodes += 1
            free = np.flatnonzero(assign < 0)
            if free.size == 0:
                found.append(tuple(int(v) for v in assign))
                return first_only
            x = int(free[0])
            for v in np.flatnonzero(self.allowed[x]):
                a2, u2, st = assign.copy(), used.copy(), []
                if self._set(a2, u2, x, v, st) and self._propagate(a2, u2, st):
                    if dfs(a2, u2):
                        return True
            return False

        dfs(assign, used)
        return sorted(found)


def enumerate_homs(A: FiniteAlgebra, B: FiniteAlgebra, signature=None) -> list[Morphism]:
    """All maps A → B preserving ``signature``, in lexicographic order.

    Args:
        A: Source algebra.
        B: Target algebra.
        signature: Operation names to preserve; defaults to A's profile signature.

    Raises:
        SignatureError: An operation is missing from A or B.
    """
    sig = _shared_signature(A, B, signature)
    search = _Search(A, B, sig, np.ones((A.n, B.n), dtype=bool), injective=False)
    maps = search.run()
    logger.debug(f"{len(maps)} homs {A.name} → {B.name} ({search.nodes} search nodes)")
    return [Morphism(A, B, m, sig) for m in maps]


def _invariants(A: FiniteAlgebra) -> list[tuple]:
    P = A.poset
    covers = P.covers()
    ups = [0] * A.n
    downs = [0] * A.n
    for lo, hi in covers:
        ups[lo] += 1
        downs[hi] += 1
    tags = []
    for i in range(A.n):
        consts = tuple(sorted(k for k in CONSTANTS if A.has(k) and A.constant(k) == i))
        fixed = A.neg is not None and int(A.neg[i]) == i
        idem = A.mult is not None and int(A.mult[i, i]) == i
        tags.append(
            (bin(P.up(i)).count("1"), bin(P.down(i)).count("1"), ups[i], downs[i], consts, fixed, idem)
        )
    return tags


def find_isomorphism(A: FiniteAlgebra, B: FiniteAlgebra) -> Morphism | None:
    """First isomorphism A → B in canonical search order, or None."""
    if A.profile != B.profile or A.n != B.n:
        return None
    ka, kb = _invariants(A), _invariants(B)
    if sorted(ka) != sorted(kb):
        logger.debug(f"{A.name} and {B.name} differ in order invariants")
        return None
    allowed = np.array([[ka[x] == kb[v] for v in range(B.n)] for x in range(A.n)], dtype=bool)
    search = _Search(A, B, A.signature, allowed, injective=True)
    maps = search.run(first_only=True)
    logger.debug(f"Isomorphism search {A.name} → {B.name}: {search.nodes} nodes")
    if not maps:
        return None
    return Morphism(A, B, maps[0], A.signature)


def is_isomorphic(A: FiniteAlgebra, B: FiniteAlgebra) -> bool:
    return find_isomorphism(A, B) is not None


def morphism_from_names(
    A: FiniteAlgebra, B: FiniteAlgebra, pairs: dict[str, str], signature: Sequence[str] | None = None
) -> Morphism:
    mapping = tuple(B.index(pairs[x]) for x in A.names)
    return Morphism(A, B, mapping, tuple(signature or A.signature))
