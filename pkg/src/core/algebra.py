"""
Operation-table algebras and their axiom sweeps.

A :class:`FiniteAlgebra` is a lattice order plus numpy operation tables,
tagged with a :class:`Profile` naming the class it claims to belong to.
``validate`` checks every axiom of that class by exhaustive vectorised
evaluation and reports the first counterexample of each failing law.
"""
import logging
from enum import Enum
from itertools import product as cartesian
from typing import Sequence

import numpy as np

from .config import check_carrier_size
from .exceptions import (
    ConfigurationError,
    NotALattice,
    NotASubalgebra,
    NotResiduated,
    OracleMismatch,
    SignatureError,
)
from .poset import FinitePoset
from .report import ValidationReport, first_witness

logger = logging.getLogger(__name__)


class Profile(str, Enum):
    ILATTICE = "ILattice"
    KLEENE = "Kleene"
    CRL = "CRL"
    BROUWERIAN = "Brouwerian"
    RELSTONE = "RelStone"
    GODEL = "Godel"
    BRSA = "bRSA"
    BGA = "bGA"
    SUGIHARA = "Sugihara"
    SUGIHARA_BOUNDED = "SugiharaBounded"

    @classmethod
    def parse(cls, text: str) -> "Profile":
        for p in cls:
            if p.value.lower() == text.strip().lower():
                return p
        raise ConfigurationError(f"unknown profile {text!r}")


BROUWERIAN_FAMILY = frozenset(
    {Profile.BROUWERIAN, Profile.RELSTONE, Profile.GODEL, Profile.BRSA, Profile.BGA}
)
SUGIHARA_FAMILY = frozenset({Profile.SUGIHARA, Profile.SUGIHARA_BOUNDED})
BOOLEAN_CONSTANT_FAMILY = frozenset({Profile.BRSA, Profile.BGA})

SIGNATURES: dict[Profile, tuple[str, ...]] = {
    Profile.ILATTICE: ("meet", "join", "neg"),
    Profile.KLEENE: ("meet", "join", "neg", "bot", "top"),
    Profile.CRL: ("meet", "join", "mult", "arrow", "t"),
    Profile.BROUWERIAN: ("meet", "join", "arrow", "t"),
    Profile.RELSTONE: ("meet", "join", "arrow", "t"),
    Profile.GODEL: ("meet", "join", "arrow", "t", "bot"),
    Profile.BRSA: ("meet", "join", "arrow", "t", "f"),
    Profile.BGA: ("meet", "join", "arrow", "t", "f", "bot"),
    Profile.SUGIHARA: ("meet", "join", "mult", "arrow", "t", "neg"),
    Profile.SUGIHARA_BOUNDED: ("meet", "join", "mult", "arrow", "t", "neg", "bot", "top"),
}

BINARY_OPS = ("meet", "join", "mult", "arrow")
CONSTANTS = ("t", "f", "bot", "top")


def _frozen_table(table, n: int, shape: tuple, what: str) -> np.ndarray:
    arr = np.array(table, dtype=np.intp, copy=True)
    if arr.shape != shape:
        raise SignatureError(f"{what} table has shape {arr.shape}, expected {shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise SignatureError(f"{what} table has an entry outside the carrier")
    arr.setflags(write=False)
    return arr


def lattice_tables(P: FinitePoset) -> tuple[np.ndarray, np.ndarray]:
    """Meet and join tables of a finite lattice order.

    Raises:
        NotALattice: Some pair lacks a greatest lower or least upper bound.
    """
    n = P.n
    tables = []
    for rel, label in ((P.leq.T, "meet"), (P.leq, "join")):
        # rel[i, k]: k is a bound of i on the relevant side
        table = np.empty((n, n), dtype=np.intp)
        for i in range(n):
            for j in range(i, n):
                common = rel[i] & rel[j]
                best = np.flatnonzero(common & np.all(rel[:, common], axis=1))
                if best.size != 1:
                    raise NotALattice(f"{P.names[i]} and {P.names[j]} have no {label}")
                table[i, j] = table[j, i] = best[0]
        tables.append(table)
    return tables[0], tables[1]


def residual_table(P: FinitePoset, mult: np.ndarray) -> np.ndarray:
    """arrow[a, b] = max{c : a*c <= b}.

    Raises:
        NotResiduated: The candidate set has no greatest element.
    """
    n = P.n
    arrow = np.empty((n, n), dtype=np.intp)
    for a in range(n):
        for b in range(n):
            cands = np.flatnonzero(P.leq[mult[a], b])
            top = cands[np.all(P.leq[np.ix_(cands, cands)], axis=0)] if cands.size else cands
            if top.size != 1:
                raise NotResiduated(f"no residual for {P.names[a]} -> {P.names[b]}")
            arrow[a, b] = top[0]
    return arrow


class FiniteAlgebra:
    """Finite lattice-ordered algebra given by operation tables.

    Args:
        poset: The lattice order.
        meet: n x n meet table.
        join: n x n join table.
        profile: Class the algebra claims to belong to.
        name: Display name.
        mult: Monoid table; defaults to ``meet`` for Brouwerian profiles.
        arrow: Residual table; recomputed from ``mult`` when omitted.
        unit: Index of the monoid unit t.
        neg: Involution table.
        constants: Map from ``f``, ``bot``, ``top`` to element indices.

    Raises:
        SignatureError: A table or constant required by the profile is missing.
        NotResiduated: ``arrow`` was omitted and ``mult`` has no residual.
    """

    def __init__(
        self,
        poset: FinitePoset,
        meet,
        join,
        *,
        profile: Profile,
        name: str = "A",
        mult=None,
        arrow=None,
        unit: int | None = None,
        neg=None,
        constants: dict | None = None,
    ) -> None:
        self.poset = poset
        self.name = name
        self.profile = Profile(profile)
        n = poset.n
        sq = (n, n)
        self.meet = _frozen_table(meet, n, sq, "meet")
        self.join = _frozen_table(join, n, sq, "join")
        if mult is None and self.profile in BROUWERIAN_FAMILY:
            mult = self.meet
        self.mult = None if mult is None else _frozen_table(mult, n, sq, "mult")
        if arrow is None and self.mult is not None:
            arrow = residual_table(poset, self.mult)
        self.arrow = None if arrow is None else _frozen_table(arrow, n, sq, "arrow")
        self.neg = None if neg is None else _frozen_table(neg, n, (n,), "neg")
        self.unit = None if unit is None else int(unit)
        self.constants = {k: int(v) for k, v in (constants or {}).items() if v is not None}
        for key, value in [("t", self.unit)] + list(self.constants.items()):
            if key not in CONSTANTS:
                raise SignatureError(f"unknown constant {key!r}")
            if value is not None and not 0 <= value < n:
                raise SignatureError(f"constant {key} outside the carrier")
        missing = [op for op in self.signature if not self.has(op)]
        if missing:
            raise SignatureError(
                f"{self.profile.value} algebra {name!r} lacks {', '.join(missing)}"
            )

    @classmethod
    def from_poset(cls, poset: FinitePoset, **kwargs) -> "FiniteAlgebra":
        meet, join = lattice_tables(poset)
        return cls(poset, meet, join, **kwargs)

    # -- basic access ------------------------------------------------------

    @property
    def n(self) -> int:
        return self.poset.n

    def __len__(self) -> int:
        return self.n

    @property
    def names(self) -> tuple[str, ...]:
        return self.poset.names

    @property
    def leq(self) -> np.ndarray:
        return self.poset.leq

    def index(self, name: str) -> int:
        return self.poset.index(name)

    @property
    def t(self) -> int | None:
        return self.unit

    @property
    def f(self) -> int | None:
        return self.constants.get("f")

    @property
    def bot(self) -> int | None:
        return self.constants.get("bot")

    @property
    def top(self) -> int | None:
        return self.constants.get("top")

    @property
    def signature(self) -> tuple[str, ...]:
        return SIGNATURES[self.profile]

    def has(self, op: str) -> bool:
        if op in BINARY_OPS:
            return getattr(self, op) is not None
        if op == "neg":
            return self.neg is not None
        if op == "t":
            return self.unit is not None
        return op in self.constants

    def table(self, op: str) -> np.ndarray:
        return getattr(self, op)

    def constant(self, op: str) -> int:
        return self.unit if op == "t" else self.constants[op]

    def subset_names(self, bits: int) -> str:
        return self.poset.subset_names(bits)

    def evolve(self, **changes) -> "FiniteAlgebra":
        """Copy with some constructor arguments replaced."""
        fields = dict(
            poset=self.poset,
            meet=self.meet,
            join=self.join,
            profile=self.profile,
            name=self.name,
            mult=self.mult,
            arrow=self.arrow,
            unit=self.unit,
            neg=self.neg,
            constants=dict(self.constants),
        )
        fields.update(changes)
        poset = fields.pop("poset")
        meet = fields.pop("meet")
        join = fields.pop("join")
        return FiniteAlgebra(poset, meet, join, **fields)

    def same_structure(self, other: "FiniteAlgebra") -> bool:
        """Equality of carrier, order, tables and constants."""
        if self.profile != other.profile or self.poset != other.poset:
            return False
        for op in ("meet", "join", "mult", "arrow", "neg"):
            a, b = getattr(self, op), getattr(other, op)
            if (a is None) != (b is None) or (a is not None and not np.array_equal(a, b)):
                return False
        return self.unit == other.unit and self.constants == other.constants

    def __repr__(self) -> str:
        return f"FiniteAlgebra({self.name!r}, {self.profile.value}, n={self.n})"


# -- axiom sweeps -------------------------------------------------------------


def _grids(n: int):
    a = np.arange(n)
    return a[:, None, None], a[None, :, None], a[None, None, :]


def _lattice_axioms(A: FiniteAlgebra, r: ValidationReport) -> None:
    L, M, J = A.leq, A.meet, A.join
    a3, b3, c3 = _grids(A.n)
    r.add(
        "meet is the greatest lower bound",
        first_witness(
            ~L[M, np.arange(A.n)[:, None]] | ~L[M, np.arange(A.n)[None, :]]
            | (L[c3, a3] & L[c3, b3] & ~L[c3, M[a3, b3]]).any(axis=2),
            A.names,
        ),
    )
    r.add(
        "join is the least upper bound",
        first_witness(
            ~L[np.arange(A.n)[:, None], J] | ~L[np.arange(A.n)[None, :], J]
            | (L[a3, c3] & L[b3, c3] & ~L[J[a3, b3], c3]).any(axis=2),
            A.names,
        ),
    )


def _distributive(A: FiniteAlgebra, r: ValidationReport) -> None:
    M, J = A.meet, A.join
    a3, b3, c3 = _grids(A.n)
    r.add(
        "distributivity a∧(b∨c) = (a∧b)∨(a∧c)",
        first_witness(M[a3, J[b3, c3]] != J[M[a3, b3], M[a3, c3]], A.names),
    )


def _crl_axioms(A: FiniteAlgebra, r: ValidationReport) -> None:
    L, M, J, X, R, t = A.leq, A.meet, A.join, A.mult, A.arrow, A.t
    names = A.names
    a3, b3, c3 = _grids(A.n)
    a2 = np.arange(A.n)
    r.add("mult associative", first_witness(X[X[a3, b3], c3] != X[a3, X[b3, c3]], names))
    r.add("mult commutative", first_witness(X != X.T, names))
    r.add("t is the unit", first_witness(X[t] != a2, names))
    r.add(
        "residuation a·b ≤ c ⟺ a ≤ b→c",
        first_witness(L[X[a3, b3], c3] != L[a3, R[b3, c3]], names),
    )
    r.add("a(a→b) ≤ b", first_witness(~L[X[a2[:, None], R], a2[None, :]], names))
    r.add(
        "a(b∨c) = ab∨ac",
        first_witness(X[a3, J[b3, c3]] != J[X[a3, b3], X[a3, c3]], names),
    )
    r.add(
        "a→(b∧c) = (a→b)∧(a→c)",
        first_witness(R[a3, M[b3, c3]] != M[R[a3, b3], R[a3, c3]], names),
    )
    r.add(
        "(a∨b)→c = (a→c)∧(b→c)",
        first_witness(R[J[a3, b3], c3] != M[R[a3, c3], R[b3, c3]], names),
    )
    r.add("(ab)→c = a→(b→c)", first_witness(R[X[a3, b3], c3] != R[a3, R[b3, c3]], names))


def _semilinear_axioms(A: FiniteAlgebra, r: ValidationReport) -> None:
    L, M, J, X, R, t = A.leq, A.meet, A.join, A.mult, A.arrow, A.t
    names = A.names
    a3, b3, c3 = _grids(A.n)
    _distributive(A, r)
    r.add("prelinearity t ≤ (a→b)∨(b→a)", first_witness(~L[t, J[R, R.T]], names))
    r.add(
        "a(b∧c) = ab∧ac",
        first_witness(X[a3, M[b3, c3]] != M[X[a3, b3], X[a3, c3]], names),
    )
    r.add(
        "a→(b∨c) = (a→b)∨(a→c)",
        first_witness(R[a3, J[b3, c3]] != J[R[a3, b3], R[a3, c3]], names),
    )
    r.add(
        "(a∧b)→c = (a→c)∨(b→c)",
        first_witness(R[M[a3, b3], c3] != J[R[a3, c3], R[b3, c3]], names),
    )


def _bounds_axioms(A: FiniteAlgebra, r: ValidationReport, top: bool) -> None:
    r.add("bot is least", first_witness(~A.leq[A.bot], A.names))
    if top:
        r.add("top is greatest", first_witness(~A.leq[:, A.top], A.names))


def _brouwerian_axioms(A: FiniteAlgebra, r: ValidationReport) -> None:
    r.add("mult is meet", first_witness(A.mult != A.meet, A.names))
    r.add("t is greatest", first_witness(~A.leq[:, A.t], A.names))


def _relstone_axioms(A: FiniteAlgebra, r: ValidationReport) -> None:
    _semilinear_axioms(A, r)
    J, R, t = A.join, A.arrow, A.t
    a2 = np.arange(A.n)
    lhs = J == t
    rhs = (R == a2[None, :]) & (R.T == a2[:, None])
    r.add("a∨b = t ⟺ a→b = b and b→a = a", first_witness(lhs != rhs, A.names))


def _boolean_constant_axiom(A: FiniteAlgebra, r: ValidationReport) -> None:
    a2 = np.arange(A.n)
    r.add("a∨(a→f) = t", first_witness(A.join[a2, A.arrow[a2, A.f]] != A.t, A.names))


def _involution_axioms(A: FiniteAlgebra, r: ValidationReport) -> None:
    N, names = A.neg, A.names
    a2 = np.arange(A.n)
    r.add("¬¬x = x", first_witness(N[N] != a2, names))


def _ilattice_axioms(A: FiniteAlgebra, r: ValidationReport) -> None:
    N, M, J, L = A.neg, A.meet, A.join, A.leq
    _distributive(A, r)
    _involution_axioms(A, r)
    r.add("¬(a∨b) = ¬a∧¬b", first_witness(N[J] != M[N[:, None], N[None, :]], A.names))
    a2 = np.arange(A.n)
    r.add(
        "a∧¬a ≤ b∨¬b",
        first_witness(~L[M[a2, N][:, None], J[a2, N][None, :]], A.names),
    )


def _sugihara_axioms(A: FiniteAlgebra, r: ValidationReport) -> None:
    N, M, J, L, X, R, t = A.neg, A.meet, A.join, A.leq, A.mult, A.arrow, A.t
    names = A.names
    a2 = np.arange(A.n)
    _semilinear_axioms(A, r)
    r.add("idempotent aa = a", first_witness(X[a2, a2] != a2, names))
    _involution_axioms(A, r)
    contra = R[:, N]
    r.add("a→¬b = b→¬a", first_witness(contra != contra.T, names))
    r.add("¬a = a→¬t", first_witness(N != R[a2, N[t]], names))
    nt = N[t]
    r.add("a∧¬a ≤ ¬t", first_witness(~L[M[a2, N], nt], names))
    r.add("¬t ≤ t", first_witness(np.array([not L[nt, t]]), (A.names[nt],)))
    r.add("t ≤ b∨¬b", first_witness(~L[t, J[a2, N]], names))


def validate(A: FiniteAlgebra) -> ValidationReport:
    """Check every axiom of A's profile; failures are reported, not raised."""
    report = ValidationReport(f"{A.name} ({A.profile.value})")
    p = A.profile
    _lattice_axioms(A, report)

    if p in (Profile.ILATTICE, Profile.KLEENE):
        _ilattice_axioms(A, report)
        if p is Profile.KLEENE:
            _bounds_axioms(A, report, top=True)
            report.check("¬bot = top", A.neg[A.bot] == A.top, (A.names[A.bot],))
        return report

    _crl_axioms(A, report)
    if p in BROUWERIAN_FAMILY:
        _brouwerian_axioms(A, report)
        if p is not Profile.BROUWERIAN:
            _relstone_axioms(A, report)
        if p in (Profile.GODEL, Profile.BGA):
            _bounds_axioms(A, report, top=False)
        if p in BOOLEAN_CONSTANT_FAMILY:
            _boolean_constant_axiom(A, report)
    elif p in SUGIHARA_FAMILY:
        _sugihara_axioms(A, report)
        if p is Profile.SUGIHARA_BOUNDED:
            _bounds_axioms(A, report, top=True)
    logger.debug(f"Validated {A.name}: {len(report.failed())} failures")
    return report


def validated(A: FiniteAlgebra) -> FiniteAlgebra:
    validate(A).raise_if_failed()
    return A


# -- constructions ------------------------------------------------------------


def _restrict(table: np.ndarray, keep: Sequence[int], position: dict) -> np.ndarray:
    sub = table[np.ix_(keep, keep)]
    return np.vectorize(position.__getitem__, otypes=[np.intp])(sub)


def cone_indices(A: FiniteAlgebra) -> list[int]:
    return [int(i) for i in np.flatnonzero(A.leq[:, A.t])]


def negative_cone(A: FiniteAlgebra) -> FiniteAlgebra:
    """The elements below t, with arrow truncated to (a→b)∧t.

    The result is an integral CRL (t is its top). A least element of A is
    kept as ``bot``.
    """
    keep = cone_indices(A)
    pos = {old: new for new, old in enumerate(keep)}
    poset = A.poset.subposet(keep)
    truncated = A.meet[A.arrow, A.t]
    constants = {"bot": pos[A.bot]} if A.bot is not None else {}
    cone = FiniteAlgebra(
        poset,
        _restrict(A.meet, keep, pos),
        _restrict(A.join, keep, pos),
        mult=_restrict(A.mult, keep, pos),
        arrow=_restrict(truncated, keep, pos),
        unit=pos[A.t],
        constants=constants,
        profile=Profile.CRL,
        name=f"{A.name}-",
    )
    logger.info(f"Negative cone of {A.name}: {cone.n} of {A.n} elements")
    return cone


def nucleus_from_constant(B: FiniteAlgebra, f: int) -> tuple[np.ndarray, ValidationReport]:
    """N(a) = f→a with the nucleus laws and the enriched-cone conditions.

    B is a relative Stone algebra. The report ends with an agreement check:
    the three enriched-cone conditions all hold exactly when B with constant
    f passes :func:`validate` as a bRS-algebra (bG-algebra when B has a
    bottom constant).
    """
    L, M, J, R, t, names = B.leq, B.meet, B.join, B.arrow, B.t, B.names
    a2 = np.arange(B.n)
    N = R[f].copy()
    N.setflags(write=False)
    report = ValidationReport(f"N = {names[f]}→· on {B.name}")
    report.add("a ≤ Na", first_witness(~L[a2, N], names))
    report.add("NNa = Na", first_witness(N[N] != N, names))
    report.add("a ≤ b ⟹ Na ≤ Nb", first_witness(L & ~L[N[:, None], N[None, :]], names))
    report.add("Na·Nb ≤ N(a·b)", first_witness(~L[B.mult[N[:, None], N[None, :]], N[B.mult]], names))

    boolean = report.add("a∨(a→f) = t", first_witness(J[a2, R[a2, f]] != t, names))
    idem = report.add("N(Na→a) = t", first_witness(N[R[N, a2]] != t, names))
    fixed = report.add("Na = t ⟺ f ≤ a", first_witness((N == t) != L[f], names))
    enriched = B.evolve(
        profile=Profile.BGA if B.bot is not None else Profile.BRSA,
        constants={**B.constants, "f": f},
    )
    brsa = validate(enriched).ok
    report.check(
        "enriched-cone conditions agree with the bRSA axioms",
        (boolean and idem and fixed) == brsa,
        (names[f],),
    )
    return N, report


def boolean_filter_check(B: FiniteAlgebra, f: int) -> bool:
    """Whether ↑f is a Boolean lattice, with a→f as complement.

    Three equivalent conditions are computed independently and must agree:
    a∨(a→f) = t on ↑f, the same law on all of B, and complementedness of
    ↑f found by brute force.

    Raises:
        OracleMismatch: The three conditions disagree.
    """
    L, M, J, R, t = B.leq, B.meet, B.join, B.arrow, B.t
    filt = np.flatnonzero(L[f])
    on_filter = bool((J[filt, R[filt, f]] == t).all())
    everywhere = bool((J[np.arange(B.n), R[:, f]] == t).all())
    sub_m = M[np.ix_(filt, filt)]
    sub_j = J[np.ix_(filt, filt)]
    brute = bool(((sub_m == f) & (sub_j == t)).any(axis=1).all())
    verdicts = (on_filter, everywhere, brute)
    if len(set(verdicts)) != 1:
        raise OracleMismatch(f"Boolean filter ↑{B.names[f]} of {B.name}", brute, verdicts)
    return brute


def _product_name(x: str, y: str) -> str:
    return f"({x},{y})"


def direct_product(A: FiniteAlgebra, B: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """Componentwise product; element (i, j) has index i*|B| + j.

    Raises:
        CarrierTooLarge: |A|·|B| exceeds the carrier limit.
        SignatureError: The profiles differ.
    """
    if A.profile != B.profile:
        raise SignatureError(f"cannot multiply {A.profile.value} by {B.profile.value}")
    n, m = A.n, B.n
    check_carrier_size(n * m, "direct product")
    pairs = list(cartesian(range(n), range(m)))
    first = np.array([i for i, _ in pairs], dtype=np.intp)
    second = np.array([j for _, j in pairs], dtype=np.intp)
    leq = A.leq[np.ix_(first, first)] & B.leq[np.ix_(second, second)]
    poset = FinitePoset.from_leq([_product_name(A.names[i], B.names[j]) for i, j in pairs], leq)

    def pair_table(op):
        ta, tb = A.table(op), B.table(op)
        if ta is None:
            return None
        return ta[np.ix_(first, first)] * m + tb[np.ix_(second, second)]

    def pair_const(op):
        return None if not A.has(op) else A.constant(op) * m + B.constant(op)

    neg = None if A.neg is None else A.neg[first] * m + B.neg[second]
    constants = {k: pair_const(k) for k in ("f", "bot", "top") if A.has(k) and B.has(k)}
    return FiniteAlgebra(
        poset,
        pair_table("meet"),
        pair_table("join"),
        mult=pair_table("mult"),
        arrow=pair_table("arrow"),
        unit=pair_const("t"),
        neg=neg,
        constants=constants,
        profile=A.profile,
        name=name or f"{A.name}x{B.name}",
    )


def subalgebra(A: FiniteAlgebra, elements: Sequence[int], name: str | None = None) -> FiniteAlgebra:
    """Restriction of A to a subset closed under its signature.

    Raises:
        NotASubalgebra: Some operation leaves the subset.
    """
    keep = sorted(int(e) for e in elements)
    inside = np.zeros(A.n, dtype=bool)
    inside[keep] = True
    for op in A.signature:
        if op in BINARY_OPS:
            sub = A.table(op)[np.ix_(keep, keep)]
            if not inside[sub].all():
                i, j = np.argwhere(~inside[sub])[0]
                raise NotASubalgebra(f"{op}({A.names[keep[i]]}, {A.names[keep[j]]}) leaves the subset")
        elif op == "neg":
            if not inside[A.neg[keep]].all():
                raise NotASubalgebra("neg leaves the subset")
        elif not inside[A.constant(op)]:
            raise NotASubalgebra(f"constant {op} is not in the subset")
    # the lattice order of a sublattice is the restricted order
    pos = {old: new for new, old in enumerate(keep)}
    tables = {
        op: _restrict(A.table(op), keep, pos) for op in BINARY_OPS if A.table(op) is not None
    }
    return FiniteAlgebra(
        A.poset.subposet(keep),
        tables.pop("meet"),
        tables.pop("join"),
        neg=None if A.neg is None else np.array([pos[int(A.neg[k])] for k in keep]),
        unit=None if A.unit is None else pos[A.unit],
        constants={k: pos[v] for k, v in A.constants.items()},
        profile=A.profile,
        name=name or f"{A.name}|sub",
        **tables,
    )


def renamed(A: FiniteAlgebra, names: Sequence[str], name: str | None = None) -> FiniteAlgebra:
    poset = FinitePoset.from_leq(list(names), A.leq)
    return A.evolve(poset=poset, name=name or A.name)


def with_bounds(A: FiniteAlgebra) -> FiniteAlgebra:
    """Expand A by its lattice bounds.

    A Sugihara monoid becomes a bounded one; a relative Stone algebra becomes
    a Gödel algebra and a bRS-algebra a bG-algebra.
    """
    bot, top = A.poset.least(), A.poset.greatest()
    promote = {
        Profile.SUGIHARA: Profile.SUGIHARA_BOUNDED,
        Profile.SUGIHARA_BOUNDED: Profile.SUGIHARA_BOUNDED,
        Profile.RELSTONE: Profile.GODEL,
        Profile.GODEL: Profile.GODEL,
        Profile.BRSA: Profile.BGA,
        Profile.BGA: Profile.BGA,
        Profile.ILATTICE: Profile.KLEENE,
        Profile.KLEENE: Profile.KLEENE,
    }
    if A.profile not in promote:
        raise SignatureError(f"{A.profile.value} has no bounded expansion")
    constants = dict(A.constants)
    constants["bot"] = bot
    if promote[A.profile] in (Profile.SUGIHARA_BOUNDED, Profile.KLEENE):
        constants["top"] = top
    suffix = "" if A.name.endswith("_bot") else "_bot"
    return A.evolve(profile=promote[A.profile], constants=constants, name=f"{A.name}{suffix}")


def forget_bounds(A: FiniteAlgebra) -> FiniteAlgebra:
    """Drop the bound constants, the inverse of :func:`with_bounds`."""
    demote = {
        Profile.SUGIHARA_BOUNDED: Profile.SUGIHARA,
        Profile.GODEL: Profile.RELSTONE,
        Profile.BGA: Profile.BRSA,
        Profile.KLEENE: Profile.ILATTICE,
    }
    if A.profile not in demote:
        return A
    constants = {k: v for k, v in A.constants.items() if k not in ("bot", "top")}
    return A.evolve(profile=demote[A.profile], constants=constants)


def adjoin_bottom(B: FiniteAlgebra, label: str = "⊥") -> FiniteAlgebra:
    """Add a new least element to a relative Stone algebra (or bRSA).

    The new element is a→⊥ for every a ≠ ⊥, and the result is a Gödel
    algebra (bG-algebra when B carries f).
    """
    if B.profile not in (Profile.RELSTONE, Profile.BRSA):
        raise SignatureError(f"adjoin_bottom needs a relative Stone algebra, got {B.profile.value}")
    n = B.n
    check_carrier_size(n + 1, "algebra with new bottom")
    leq = np.ones((n + 1, n + 1), dtype=bool)
    leq[1:, 0] = False
    leq[1:, 1:] = B.leq
    poset = FinitePoset.from_leq([label] + list(B.names), leq)
    arrow = np.zeros((n + 1, n + 1), dtype=np.intp)
    arrow[0, :] = B.t + 1
    arrow[1:, 1:] = B.arrow + 1
    profile = Profile.BGA if B.profile is Profile.BRSA else Profile.GODEL
    constants = {"bot": 0}
    if B.f is not None:
        constants["f"] = B.f + 1
    return FiniteAlgebra.from_poset(
        poset,
        arrow=arrow,
        unit=B.t + 1,
        constants=constants,
        profile=profile,
        name=f"{B.name}+bot",
    )


def reduct(A: FiniteAlgebra) -> FiniteAlgebra:
    """The (∧,∨,¬) i-lattice reduct, Kleene when A carries bounds."""
    if A.profile not in SUGIHARA_FAMILY:
        raise SignatureError(f"no i-lattice reduct for {A.profile.value}")
    bounded = A.profile is Profile.SUGIHARA_BOUNDED
    constants = {"bot": A.bot, "top": A.top} if bounded else {}
    return FiniteAlgebra(
        A.poset,
        A.meet,
        A.join,
        neg=A.neg,
        constants=constants,
        profile=Profile.KLEENE if bounded else Profile.ILATTICE,
        name=f"{A.name}|ilat",
    )
