"""
Functor dispatch, round trips and the small-model sweep behind the CLI.
"""
import itertools
import logging
from dataclasses import dataclass

import numpy as np

from . import esakia, natural_duality, reflection, twist
from .algebra import (
    BOOLEAN_CONSTANT_FAMILY,
    SUGIHARA_FAMILY,
    FiniteAlgebra,
    Profile,
    forget_bounds,
    lattice_tables,
    negative_cone,
    validate,
    with_bounds,
)
from .config import check_carrier_size
from .exceptions import (
    NotALattice,
    NotResiduated,
    OracleMismatch,
    SignatureError,
    ValidationFailed,
)
from .homs import find_isomorphism
from .poset import FinitePoset
from .reflection import RelevantSpace, find_relevant_isomorphism, validate_relevant
from .report import ValidationReport
from .spaces import StructuredSpace, find_space_isomorphism, validate_space

logger = logging.getLogger(__name__)

FUNCTORS = ("neg-cone", "twist-up", "twist-down", "sigma", "esakia", "dw", "urquhart", "reflect", "project")


def validate_structure(obj) -> ValidationReport:
    """Axiom report for an algebra, a structured space or a relevant space."""
    if isinstance(obj, FiniteAlgebra):
        return validate(obj)
    if isinstance(obj, RelevantSpace):
        return validate_relevant(obj)
    return validate_space(obj)


def require_valid(obj):
    validate_structure(obj).raise_if_failed()
    return obj


def _expect(obj, kind, which: str):
    if not isinstance(obj, kind):
        raise SignatureError(f"functor {which} does not apply to {obj.name}")


def apply_functor(which: str, obj, bounded: bool = False, generalized: bool = False):
    """Run one functor on a validated structure.

    Args:
        which: One of :data:`FUNCTORS`.
        obj: Input algebra or space.
        bounded: Expand a Sugihara input by its bounds first (dw, urquhart, twist-down).
        generalized: Forget the bottom of a bG-algebra before ``esakia``.

    Raises:
        SignatureError: The functor does not apply to this kind of input.
    """
    if which not in FUNCTORS:
        raise SignatureError(f"unknown functor {which!r}")
    require_valid(obj)
    if bounded and isinstance(obj, FiniteAlgebra) and obj.profile is Profile.SUGIHARA:
        if which in ("dw", "urquhart", "twist-down"):
            obj = with_bounds(obj)
    logger.info(f"Applying {which} to {obj.name}")

    if which == "neg-cone":
        _expect(obj, FiniteAlgebra, which)
        return negative_cone(obj)
    if which == "twist-down":
        _expect(obj, FiniteAlgebra, which)
        return twist.bowtie_down(obj)
    if which == "twist-up":
        _expect(obj, FiniteAlgebra, which)
        return twist.bowtie_up(obj)
    if which == "sigma":
        _expect(obj, FiniteAlgebra, which)
        return twist.sigma_monoid(obj)
    if which == "esakia":
        if isinstance(obj, FiniteAlgebra):
            if generalized and obj.profile is Profile.BGA:
                obj = forget_bounds(obj)
            return esakia.dual_space(obj)
        _expect(obj, StructuredSpace, which)
        return esakia.dual_algebra(obj)
    if which == "dw":
        if isinstance(obj, FiniteAlgebra):
            return natural_duality.dw_dual(obj)
        _expect(obj, StructuredSpace, which)
        return natural_duality.plus_algebra(obj)
    if which == "urquhart":
        if isinstance(obj, FiniteAlgebra):
            return reflection.urquhart_dual(obj)
        _expect(obj, RelevantSpace, which)
        return reflection.relevant_algebra(obj)
    if which == "reflect":
        _expect(obj, StructuredSpace, which)
        return reflection.reflect_space(obj)
    _expect(obj, RelevantSpace, which)
    return reflection.project_space(obj)


@dataclass
class RoundTrip:
    """Outcome of one double functor: a witness map or the reason it failed."""

    label: str
    witness: object = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and self.witness is not None

    def lines(self) -> list[str]:
        if not self.ok:
            return [f"FAIL {self.label}: {self.error or 'no isomorphism'}"]
        return [f"PASS {self.label}"] + [f"  {line}" for line in self.witness.describe()]


def _attempt(label: str, build) -> RoundTrip:
    try:
        return RoundTrip(label, build())
    except (ValidationFailed, OracleMismatch) as e:
        return RoundTrip(label, error=e.user_message)


def _urquhart_roundtrip(A: FiniteAlgebra):
    A = with_bounds(A) if A.profile is Profile.SUGIHARA else A
    return find_isomorphism(A, reflection.relevant_algebra(reflection.urquhart_dual(A)))


def _relevant_roundtrip(Y: RelevantSpace):
    return find_relevant_isomorphism(Y, reflection.urquhart_dual(reflection.relevant_algebra(Y)))


def roundtrips(obj) -> list[RoundTrip]:
    """Every double dual or double functor that applies to ``obj``."""
    require_valid(obj)
    if isinstance(obj, FiniteAlgebra):
        if obj.profile in SUGIHARA_FAMILY:
            return [
                _attempt("A ≅ (A_⋈)^⋈", lambda: twist.unit_iso(obj)),
                _attempt("A ≅ (A₊)⁺", lambda: natural_duality.evaluation_iso(obj)),
                _attempt("A_⊥ ≅ (A_*)^* (Urquhart)", lambda: _urquhart_roundtrip(obj)),
            ]
        if obj.profile in BOOLEAN_CONSTANT_FAMILY:
            trips = [
                _attempt("B ≅ (B^⋈)_⋈", lambda: twist.counit_iso(obj)),
                _attempt("B ≅ (B_*)^*", lambda: esakia.sigma_iso(obj)),
            ]
            if obj.profile is Profile.BRSA:
                trips.append(_attempt("δ: B^⋈ ≅ Σ(B)", lambda: twist.delta(obj)))
            return trips
        raise SignatureError(f"no round trip for profile {obj.profile.value}")
    if isinstance(obj, RelevantSpace):
        return [
            _attempt("Y ≅ (Y_⋈)^⋈ via θ", lambda: reflection.theta(obj)),
            _attempt("Y ≅ (Y^*)_* (Urquhart)", lambda: _relevant_roundtrip(obj)),
        ]
    if obj.flavor.esakia:
        return [_attempt("X ≅ (X^*)_*", lambda: esakia.counit_iso(obj))]
    if obj.flavor.sugihara:
        trips = [_attempt("X ≅ (X⁺)₊", lambda: natural_duality.evaluation_space_iso(obj))]
        if not obj.flavor.pointed:
            trips.append(_attempt("X = (X^⋈)_⋈", lambda: reflection.reflection_identity(obj)))
        return trips
    raise SignatureError(f"no round trip for flavor {obj.flavor.value}")


def find_any_isomorphism(first, second):
    """Isomorphism between two structures of the same kind, or None."""
    if isinstance(first, FiniteAlgebra) and isinstance(second, FiniteAlgebra):
        return find_isomorphism(first, second)
    if isinstance(first, RelevantSpace) and isinstance(second, RelevantSpace):
        return find_relevant_isomorphism(first, second)
    if isinstance(first, StructuredSpace) and isinstance(second, StructuredSpace):
        return find_space_isomorphism(first, second)
    return None


def _naturally_labelled_orders(k: int):
    """Order matrices on 0..k-1 in which i ≤ j implies i ≤ j as integers."""
    upper = [(i, j) for i in range(k) for j in range(i + 1, k)]
    for choice in itertools.product((False, True), repeat=len(upper)):
        leq = np.eye(k, dtype=bool)
        for (i, j), on in zip(upper, choice):
            leq[i, j] = on
        closed = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
        if np.array_equal(closed, leq):
            yield leq


def enumerate_brsas(max_size: int) -> list[FiniteAlgebra]:
    """All bRS-algebras with at most ``max_size`` elements, up to isomorphism."""
    check_carrier_size(max_size, "sweep carrier")
    found = []
    for k in range(1, max_size + 1):
        seen = set()
        for leq in _naturally_labelled_orders(k):
            poset = FinitePoset([f"e{i}" for i in range(k)], leq)
            try:
                meet, join = lattice_tables(poset)
            except NotALattice:
                continue
            top = poset.greatest()
            for f in range(k):
                key = poset.canonical_key(marked=(f,))
                if key in seen:
                    continue
                try:
                    B = FiniteAlgebra(
                        poset, meet, join, unit=top, constants={"f": f}, profile=Profile.BRSA, name="B"
                    )
                except NotResiduated:
                    break
                if validate(B).ok:
                    seen.add(key)
                    found.append(B.evolve(name=f"B{k}_{len(seen)}"))
        logger.info(f"{len(seen)} bRS-algebras with {k} elements")
    return found


@dataclass
class SweepRow:
    algebra: FiniteAlgebra
    twist_ok: bool
    delta_ok: bool

    @property
    def ok(self) -> bool:
        return self.twist_ok and self.delta_ok

    def line(self) -> str:
        B = self.algebra
        verdict = lambda flag: "PASS" if flag else "FAIL"  # noqa: E731
        return (
            f"{B.name} size={B.n} f={B.names[B.f]} "
            f"twist={verdict(self.twist_ok)} delta={verdict(self.delta_ok)}"
        )


def sweep(max_size: int) -> list[SweepRow]:
    """Twist round trips and the δ checks on every small bRS-algebra."""
    rows = []
    for B in enumerate_brsas(max_size):
        try:
            twist.counit_iso(B)
            twist.unit_iso(twist.bowtie_up(B))
            twist_ok = True
        except (ValidationFailed, OracleMismatch) as e:
            logger.warning(f"Twist round trip failed on {B.name}: {e}")
            twist_ok = False
        try:
            _, report = twist.delta_report(B)
            delta_ok = report.ok and twist.check_transport(B).ok
        except (ValidationFailed, OracleMismatch) as e:
            logger.warning(f"δ check failed on {B.name}: {e}")
            delta_ok = False
        rows.append(SweepRow(B, twist_ok, delta_ok))
    return rows
