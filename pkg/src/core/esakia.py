"""
Prime-filter duality for relative Stone and Gödel algebras with Boolean constant.

A bRS-algebra B dualises to its generalized prime filters ordered by
inclusion, with the improper filter as top and D the filters omitting f.
Bounded (bG) algebras use the proper prime filters and have no top. The way
back takes up-sets (nonempty ones in the pointed case) with f = D^∁.
"""
import logging

import numpy as np

from .algebra import BOOLEAN_CONSTANT_FAMILY, FiniteAlgebra, Profile, validate
from .config import check_carrier_size
from .exceptions import SignatureError
from .homs import Morphism
from .poset import (
    FinitePoset,
    SubsetFamily,
    bits_of,
    heyting_arrow_upsets,
    members,
    prime_filters,
    up_sets,
)
from .report import ValidationReport, first_witness
from .spaces import (
    Flavor,
    SpaceMap,
    StructuredSpace,
    esakia_morphism_report,
    space_iso_report,
    validate_space,
)

logger = logging.getLogger(__name__)


def _require(B: FiniteAlgebra) -> None:
    if B.profile not in BOOLEAN_CONSTANT_FAMILY:
        raise SignatureError(f"expected a bRS- or bG-algebra, got {B.profile.value}")


def dual_filters(B: FiniteAlgebra) -> SubsetFamily:
    """Points of the dual: generalized prime filters for bRSA, proper for bGA."""
    _require(B)
    return prime_filters(B, generalized=B.profile is Profile.BRSA)


def filter_name(B: FiniteAlgebra, bits: int) -> str:
    """'^a' for the filter generated by a."""
    gens = [i for i in members(bits) if B.poset.up(i) == bits]
    return "^" + B.names[gens[0]] if gens else B.subset_names(bits)


def inclusion_order(family) -> np.ndarray:
    k = len(family)
    sets = list(family)
    return np.array([[sets[i] & ~sets[j] == 0 for j in range(k)] for i in range(k)], dtype=bool)


def dual_space(B: FiniteAlgebra) -> StructuredSpace:
    """The bRS- or bG-space of B."""
    family = dual_filters(B)
    poset = FinitePoset.from_leq([filter_name(B, x) for x in family], inclusion_order(family))
    designated = bits_of(i for i, x in enumerate(family) if not x >> B.f & 1)
    pointed = B.profile is Profile.BRSA
    X = StructuredSpace(
        poset,
        designated,
        flavor=Flavor.BRS if pointed else Flavor.BG,
        top=family.index(B.poset.everything) if pointed else None,
        name=f"{B.name}_*",
    )
    validate_space(X).raise_if_failed()
    logger.info(f"dual_space({B.name}): {X.n} points, |D| = {bin(designated).count('1')}")
    return X


def dual_carrier(X: StructuredSpace) -> SubsetFamily:
    """Up-sets of X, without the empty set when X is pointed."""
    family = up_sets(X.poset)
    if X.flavor.pointed:
        family = SubsetFamily.of(X.poset, [U for U in family if U])
    return family


def dual_algebra(X: StructuredSpace) -> FiniteAlgebra:
    """Up-set algebra of a bRS- or bG-space with t = X and f = D^∁."""
    if not X.flavor.esakia and not X.flavor.sugihara:
        raise SignatureError(f"dual_algebra needs a bRS- or bG-space, got {X.flavor.value}")
    family = dual_carrier(X)
    k = len(family)
    check_carrier_size(k, "up-set algebra")
    sets = list(family)
    where = {U: i for i, U in enumerate(sets)}
    P = X.poset
    leq = inclusion_order(family)
    meet = np.array([[where[U & V] for V in sets] for U in sets], dtype=np.intp)
    join = np.array([[where[U | V] for V in sets] for U in sets], dtype=np.intp)
    arrow = np.array(
        [[where[heyting_arrow_upsets(P, U, V)] for V in sets] for U in sets], dtype=np.intp
    )
    constants = {"f": where[X.nondesignated]}
    pointed = X.flavor.pointed
    if not pointed:
        constants["bot"] = where[0]
    A = FiniteAlgebra(
        FinitePoset.from_leq([X.subset_names(U) for U in sets], leq),
        meet,
        join,
        arrow=arrow,
        unit=where[P.everything],
        constants=constants,
        profile=Profile.BRSA if pointed else Profile.BGA,
        name=f"{X.name}^*",
    )
    validate(A).raise_if_failed()
    logger.info(f"dual_algebra({X.name}): {A.n} up-sets")
    return A


def sigma_iso(B: FiniteAlgebra) -> Morphism:
    """σ(a) = {x : a ∈ x}, an isomorphism B → dual_algebra(dual_space(B))."""
    family = dual_filters(B)
    X = dual_space(B)
    back = dual_algebra(X)
    where = {U: i for i, U in enumerate(dual_carrier(X))}
    mapping = tuple(
        where[bits_of(i for i, x in enumerate(family) if x >> a & 1)] for a in range(B.n)
    )
    m = Morphism(B, back, mapping, B.signature)
    m.validate_isomorphism().raise_if_failed()
    return m


def counit_iso(X: StructuredSpace) -> SpaceMap:
    """φ(x) = {U : x ∈ U}, an isomorphism X → dual_space(dual_algebra(X))."""
    A = dual_algebra(X)
    sets = list(dual_carrier(X))
    family = dual_filters(A)
    Y = dual_space(A)
    mapping = tuple(
        family.index(bits_of(j for j, U in enumerate(sets) if U >> x & 1)) for x in range(X.n)
    )
    phi = SpaceMap(X, Y, mapping, "esakia")
    report = space_iso_report(phi)
    report.extend(esakia_morphism_report(phi))
    report.raise_if_failed()
    return phi


def dual_hom(h: Morphism) -> SpaceMap:
    """h_*(x) = h⁻¹[x], from the dual of the target to the dual of the source."""
    A, B = h.source, h.target
    fa, fb = dual_filters(A), dual_filters(B)
    XA, XB = dual_space(A), dual_space(B)
    mapping = tuple(
        fa.index(bits_of(i for i in range(A.n) if y >> h.mapping[i] & 1)) for y in fb
    )
    phi = SpaceMap(XB, XA, mapping, "esakia")
    esakia_morphism_report(phi).raise_if_failed()
    return phi


def algebra_hom(phi: SpaceMap) -> Morphism:
    """φ^*(U) = φ⁻¹[U], from the algebra of the target to that of the source."""
    X, Y = phi.source, phi.target
    AX, AY = dual_algebra(X), dual_algebra(Y)
    where = {U: i for i, U in enumerate(dual_carrier(X))}
    mapping = tuple(where[phi.preimage(U)] for U in dual_carrier(Y))
    signature = tuple(op for op in AY.signature if op in AX.signature)
    m = Morphism(AY, AX, mapping, signature)
    m.validate().raise_if_failed()
    return m


def nucleus_relation(X: StructuredSpace) -> np.ndarray:
    """≲ = ≤ minus the diagonal on D."""
    rel = np.array(X.leq, dtype=bool, copy=True)
    for i in members(X.designated):
        rel[i, i] = False
    return rel


def accessibility_relation(B: FiniteAlgebra) -> np.ndarray:
    """x R y iff N⁻¹[x] ⊆ y on the dual points, with N(a) = f→a."""
    family = list(dual_filters(B))
    N = B.arrow[B.f]
    inverse = [bits_of(a for a in range(B.n) if x >> int(N[a]) & 1) for x in family]
    return np.array([[inv & ~y == 0 for y in family] for inv in inverse], dtype=bool)


def nuclear_report(B: FiniteAlgebra) -> ValidationReport:
    """Accessibility relation of the nucleus against ≲ and related facts."""
    X = dual_space(B)
    family = list(dual_filters(B))
    R = accessibility_relation(B)
    rel = nucleus_relation(X)
    names = X.names
    report = ValidationReport(f"nucleus relation on {X.name}")
    report.add("R = ≲", first_witness(R != rel, names))

    image = bits_of(int(y) for y in np.flatnonzero(rel.any(axis=0)))
    report.check("image of ≲ is D^∁", image == X.nondesignated, (X.subset_names(image),))

    reflexive = np.diag(R)
    # x R z iff some reflexive y has x ≤ y ≤ z
    between = (X.leq[:, :, None] & X.leq[None, :, :] & reflexive[None, :, None]).any(axis=1)
    report.add("x R z ⟺ ∃y (y R y, x ≤ y ≤ z)", first_witness(R != between, names))

    contains_f = np.array([bool(x >> B.f & 1) for x in family])
    report.add("x R x ⟺ f ∈ x", first_witness(reflexive != contains_f, names))
    strict = X.leq & ~np.eye(X.n, dtype=bool)
    report.add("x ⊂ y ⟹ x R y", first_witness(strict & ~R, names))

    N = B.arrow[B.f]
    allowed = set(prime_filters(B, generalized=True))
    bad = [
        names[i]
        for i, x in enumerate(family)
        if bits_of(a for a in range(B.n) if x >> int(N[a]) & 1) not in allowed
    ]
    report.check("N⁻¹[x] is a prime or improper filter", not bad, tuple(bad[:1]))
    return report


def check_nuclear_morphism(phi: SpaceMap) -> ValidationReport:
    """≲-preservation and the ≲ back condition for a map of bG-spaces."""
    X, Y = phi.source, phi.target
    rx, ry = nucleus_relation(X), nucleus_relation(Y)
    h = np.asarray(phi.mapping, dtype=np.intp)
    report = ValidationReport(f"{X.name} → {Y.name} (nuclear)")
    report.add("x ≲ y ⟹ φx ≲ φy", first_witness(rx & ~ry[h[:, None], h[None, :]], X.names))
    witness = None
    for x in range(X.n):
        reach = {int(h[y]) for y in np.flatnonzero(rx[x])}
        missing = [int(z) for z in np.flatnonzero(ry[h[x]]) if int(z) not in reach]
        if missing:
            witness = (X.names[x], Y.names[missing[0]])
            break
    report.add("φx ≲ z ⟹ ∃y (x ≲ y, φy = z)", witness)
    return report


def brs_to_sugihara(X: StructuredSpace) -> StructuredSpace:
    """Read a bRS/bG-space as a Sugihara space with Q = comparability."""
    if not X.flavor.esakia:
        raise SignatureError(f"expected a bRS- or bG-space, got {X.flavor.value}")
    flavor = Flavor.SUGIHARA_POINTED if X.flavor is Flavor.BRS else Flavor.SUGIHARA_UNPOINTED
    Y = X.evolve(flavor=flavor, Q=None)
    validate_space(Y).raise_if_failed()
    return Y


def sugihara_to_brs(X: StructuredSpace) -> StructuredSpace:
    """Forget Q of a Sugihara space, leaving a bRS- or bG-space."""
    if not X.flavor.sugihara:
        raise SignatureError(f"expected a Sugihara space, got {X.flavor.value}")
    flavor = Flavor.BRS if X.flavor is Flavor.SUGIHARA_POINTED else Flavor.BG
    Y = X.evolve(flavor=flavor, Q=None)
    validate_space(Y).raise_if_failed()
    return Y
