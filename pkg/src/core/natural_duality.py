"""
Hom-duals of Sugihara monoids into the three-element alter ego.

Points of A₊ are the i-lattice (or Kleene) homomorphisms A → {-1, 0, 1},
kept as value vectors and named ``h:`` followed by one symbol per element
of A ('-' for -1, '0', '+' for 1). The way back, X⁺, is carried by the
maps C_{U,V}: X → {-1, 0, 1} named ``C:`` plus their values on X.
"""
import logging
from dataclasses import dataclass

import numpy as np

from .algebra import (
    SUGIHARA_FAMILY,
    FiniteAlgebra,
    Profile,
    cone_indices,
    reduct,
    validate,
)
from .builtins import alter_ego
from .config import check_carrier_size
from .esakia import (
    algebra_hom,
    dual_algebra,
    dual_carrier,
    dual_filters,
    dual_hom,
    dual_space,
    filter_name,
    sugihara_to_brs,
)
from .exceptions import NotCovering, NotOdd, OracleMismatch, SignatureError
from .homs import Morphism, compose, enumerate_homs
from .poset import FinitePoset, SubsetFamily, bits_of, members, prime_filters
from .report import ValidationReport
from .spaces import (
    Flavor,
    SpaceMap,
    StructuredSpace,
    compose_maps,
    kleene_morphism_report,
    space_iso_report,
    validate_space,
)
from .twist import bowtie_carrier, bowtie_down, bowtie_up, cone_hom, lift_hom

logger = logging.getLogger(__name__)

SYMBOLS = {-1: "-", 0: "0", 1: "+"}


def _require_sugihara(A: FiniteAlgebra) -> None:
    if A.profile not in SUGIHARA_FAMILY:
        raise SignatureError(f"expected a Sugihara monoid, got {A.profile.value}")


def vector_name(prefix: str, values) -> str:
    return prefix + "".join(SYMBOLS[int(v)] for v in values)


def alter_ego_algebra(bounded: bool = False) -> FiniteAlgebra:
    return alter_ego(bounded)


def alter_ego_space(pointed: bool = True) -> StructuredSpace:
    """{-1, 0, 1} with -1 < 0 > 1, D = {-1, 1} and Q missing only ±(1, -1)."""
    names = ["-1", "0", "1"]
    leq = np.eye(3, dtype=bool)
    leq[0, 1] = leq[2, 1] = True
    Q = np.ones((3, 3), dtype=bool)
    Q[0, 2] = Q[2, 0] = False
    X = StructuredSpace(
        FinitePoset.from_leq(names, leq),
        bits_of([0, 2]),
        flavor=Flavor.POINTED_KLEENE if pointed else Flavor.KLEENE,
        top=1 if pointed else None,
        Q=Q,
        name="L~" if pointed else "K~",
    )
    validate_space(X).raise_if_failed()
    return X


def _value_order(vectors: np.ndarray) -> np.ndarray:
    """v ≤ w iff each coordinate agrees or w is 0 there."""
    v, w = vectors[:, None, :], vectors[None, :, :]
    return np.all((v == w) | (w == 0), axis=2)


def _value_q(vectors: np.ndarray) -> np.ndarray:
    v, w = vectors[:, None, :], vectors[None, :, :]
    return ~np.any(v * w == -1, axis=2)


def dw_points(A: FiniteAlgebra) -> np.ndarray:
    """Value vectors of the homs A → L3 (K3 when A is bounded), in search order."""
    _require_sugihara(A)
    bounded = A.profile is Profile.SUGIHARA_BOUNDED
    homs = enumerate_homs(reduct(A), alter_ego(bounded))
    check_carrier_size(len(homs), "hom dual")
    vectors = np.array([[m - 1 for m in h.mapping] for h in homs], dtype=np.int8).reshape(len(homs), A.n)
    bad = [vector_name("h:", v) for v in vectors if v[A.t] not in (0, 1)]
    if bad:
        raise OracleMismatch(f"h(t) on {A.name}", "a value in {0, 1}", bad[0])
    return vectors


def dw_dual(A: FiniteAlgebra) -> StructuredSpace:
    """The Sugihara space A₊ of homs into the alter ego, ordered pointwise."""
    vectors = dw_points(A)
    pointed = A.profile is Profile.SUGIHARA
    names = [vector_name("h:", v) for v in vectors]
    designated = bits_of(i for i, v in enumerate(vectors) if not (v == 0).any())
    top = None
    if pointed:
        zero = [i for i, v in enumerate(vectors) if not v.any()]
        top = zero[0] if zero else None
    X = StructuredSpace(
        FinitePoset.from_leq(names, _value_order(vectors)),
        designated,
        flavor=Flavor.SUGIHARA_POINTED if pointed else Flavor.SUGIHARA_UNPOINTED,
        top=top,
        Q=_value_q(vectors),
        name=f"{A.name}_+",
    )
    validate_space(X).raise_if_failed()
    logger.info(f"dw_dual({A.name}): {X.n} points")
    return X


def _preimage_01(vector) -> int:
    return bits_of(i for i, v in enumerate(vector) if v >= 0)


def xi(A: FiniteAlgebra) -> SpaceMap:
    """ξ(h) = h⁻¹{0,1} ∩ A⁻, into the prime-filter dual of the negative cone."""
    vectors = dw_points(A)
    X = dw_dual(A)
    B = bowtie_down(A)
    family = dual_filters(B)
    keep = cone_indices(A)
    mapping = tuple(
        family.index(bits_of(k for k, a in enumerate(keep) if v[a] >= 0)) for v in vectors
    )
    phi = SpaceMap(X, dual_space(B), mapping, "xi")
    space_iso_report(phi).raise_if_failed()
    return phi


def i_filters(A: FiniteAlgebra) -> SubsetFamily:
    """I(A): prime filters containing t (generalized unless A is bounded)."""
    _require_sugihara(A)
    family = prime_filters(A, generalized=A.profile is Profile.SUGIHARA)
    return SubsetFamily.of(A.poset, [x for x in family if x >> A.t & 1])


def i_space(A: FiniteAlgebra) -> StructuredSpace:
    """(I(A), ⊆) with D = {x : ¬t ∉ x}."""
    family = i_filters(A)
    sets = list(family)
    pointed = A.profile is Profile.SUGIHARA
    nt = int(A.neg[A.t])
    leq = np.array([[x & ~y == 0 for y in sets] for x in sets], dtype=bool)
    X = StructuredSpace(
        FinitePoset.from_leq([filter_name(A, x) for x in sets], leq),
        bits_of(i for i, x in enumerate(sets) if not x >> nt & 1),
        flavor=Flavor.SUGIHARA_POINTED if pointed else Flavor.SUGIHARA_UNPOINTED,
        top=sets.index(A.poset.everything) if pointed else None,
        name=f"I({A.name})",
    )
    validate_space(X).raise_if_failed()
    return X


def psi(A: FiniteAlgebra) -> SpaceMap:
    """ψ(h) = h⁻¹{0,1}, an order isomorphism onto (I(A), ⊆)."""
    vectors = dw_points(A)
    family = i_filters(A)
    mapping = tuple(family.index(_preimage_01(v)) for v in vectors)
    phi = SpaceMap(dw_dual(A), i_space(A), mapping, "psi")
    report = space_iso_report(phi)

    cone = bits_of(cone_indices(A))
    xi_map = xi(A)
    points = _cone_points(A)
    bad = [
        vector_name("h:", v)
        for i, v in enumerate(vectors)
        if family[mapping[i]] & cone != points[xi_map.mapping[i]]
    ]
    report.check("ψ(h) ∩ A⁻ = ξ(h)", not bad, tuple(bad[:1]))
    report.raise_if_failed()
    return phi


def hom_from_filter(A: FiniteAlgebra, x: int) -> Morphism:
    """The hom that is 1 on x∖¬x, 0 on x∩¬x and -1 on ¬x∖x; inverse to ψ."""
    _require_sugihara(A)
    negated = bits_of(int(A.neg[a]) for a in members(x))
    mapping = []
    for a in range(A.n):
        inside, flipped = bool(x >> a & 1), bool(negated >> a & 1)
        if inside and flipped:
            mapping.append(1)
        elif inside:
            mapping.append(2)
        elif flipped:
            mapping.append(0)
        else:
            raise OracleMismatch(f"hom from {filter_name(A, x)}", "x ∪ ¬x = A", A.names[a])
    R = reduct(A)
    h = Morphism(R, alter_ego(A.profile is Profile.SUGIHARA_BOUNDED), tuple(mapping), R.signature)
    h.validate().raise_if_failed()
    return h


def _cone_points(A: FiniteAlgebra) -> list[int]:
    """Dual points of the negative cone, as subsets of A's carrier."""
    keep = cone_indices(A)
    return [bits_of(keep[k] for k in members(x)) for x in dual_filters(bowtie_down(A))]


@dataclass(frozen=True)
class EncodedMap:
    """C_{U,V}: X → {-1, 0, 1} with the validity criterion and the direct check."""

    space: StructuredSpace
    U: int
    V: int
    values: tuple[int, ...]
    criterion: bool
    morphism: bool
    report: ValidationReport

    @property
    def name(self) -> str:
        return vector_name("C:", self.values)


def c_uv(X: StructuredSpace, U: int, V: int) -> EncodedMap:
    """x ↦ 1 off V, 0 on U∩V, -1 off U.

    Raises:
        NotCovering: U ∪ V is not all of X.
    """
    everything = X.poset.everything
    if U | V != everything:
        raise NotCovering([X.names[i] for i in members(everything & ~(U | V))])
    values = tuple(1 if not V >> x & 1 else (0 if U >> x & 1 else -1) for x in range(X.n))

    report = ValidationReport(f"C_{{{X.subset_names(U)},{X.subset_names(V)}}} on {X.name}")
    P, Q = X.poset, X.relation()
    outside_u = [x for x in range(X.n) if not U >> x & 1]
    outside_v = [y for y in range(X.n) if not V >> y & 1]
    clauses = [
        P.is_upset(U) and P.is_upset(V),
        not any(Q[x, y] for x in outside_u for y in outside_v),
        U & V & X.designated == 0,
        (U != 0 and V != 0) if X.flavor.pointed else True,
    ]
    criterion = all(clauses)
    report.check("U, V are up-sets", clauses[0], (X.name,))
    report.check("(X∖U × X∖V) ∩ Q = ∅", clauses[1], (X.name,))
    report.check("U ∩ V ⊆ D^∁", clauses[2], (X.name,))
    report.check("U, V nonempty (pointed)", clauses[3], (X.name,))

    target = alter_ego_space(X.flavor.pointed)
    direct = kleene_morphism_report(SpaceMap(X, target, tuple(v + 1 for v in values), "kleene"))
    morphism = direct.ok
    report.check("criterion agrees with the direct morphism check", criterion == morphism, (X.name,))
    return EncodedMap(X, U, V, values, criterion, morphism, report)


def decompose(values) -> tuple[int, int]:
    """(φ⁻¹{0,1}, φ⁻¹{-1,0}) for a map into the alter ego."""
    return (
        bits_of(i for i, v in enumerate(values) if v >= 0),
        bits_of(i for i, v in enumerate(values) if v <= 0),
    )


@dataclass(frozen=True)
class PlusData:
    algebra: FiniteAlgebra
    pairs: FiniteAlgebra
    vectors: tuple[tuple[int, ...], ...]
    mu: Morphism


def _plus(X: StructuredSpace) -> PlusData:
    if not X.flavor.sugihara:
        raise SignatureError(f"plus_algebra needs a Sugihara space, got {X.flavor.value}")
    Y = sugihara_to_brs(X)
    B = dual_algebra(Y)
    P = bowtie_up(B)
    carrier = bowtie_carrier(B)
    upsets = list(dual_carrier(Y))
    encoded = []
    for a, b in carrier.pairs:
        enc = c_uv(X, upsets[a], upsets[b])
        if not enc.criterion:
            raise OracleMismatch(f"C_{{U,V}} on {X.name}", "a valid morphism", enc.name)
        encoded.append(enc.values)
    order = sorted(range(len(encoded)), key=lambda i: encoded[i])
    vectors = tuple(encoded[i] for i in order)
    where = {v: i for i, v in enumerate(vectors)}
    k = len(vectors)
    check_carrier_size(k, "plus algebra")
    arr = np.array(vectors, dtype=np.int8).reshape(k, X.n)

    def lookup(rows, what):
        try:
            return [where[tuple(int(x) for x in r)] for r in rows]
        except KeyError as e:
            raise OracleMismatch(f"{what} on {X.name}^+", "an encoded map", str(e)) from None

    meet = np.array([lookup(np.minimum(arr[i], arr), "meet") for i in range(k)], dtype=np.intp)
    join = np.array([lookup(np.maximum(arr[i], arr), "join") for i in range(k)], dtype=np.intp)
    neg = np.array(lookup(-arr, "neg"), dtype=np.intp)
    # element i of the plus algebra is the pair order[i] of P
    to_pair = np.array(order, dtype=np.intp)
    from_pair = np.empty(k, dtype=np.intp)
    from_pair[to_pair] = np.arange(k)
    mult = from_pair[P.mult[to_pair[:, None], to_pair[None, :]]]
    arrow = from_pair[P.arrow[to_pair[:, None], to_pair[None, :]]]
    leq = np.all(arr[:, None, :] <= arr[None, :, :], axis=2)

    unit_values = tuple(1 if X.in_designated(x) else 0 for x in range(X.n))
    pointed = X.flavor.pointed
    constants = {}
    if not pointed:
        constants = {"bot": where[tuple([-1] * X.n)], "top": where[tuple([1] * X.n)]}
    A = FiniteAlgebra(
        FinitePoset.from_leq([vector_name("C:", v) for v in vectors], leq),
        meet,
        join,
        mult=mult,
        arrow=arrow,
        unit=where[unit_values],
        neg=neg,
        constants=constants,
        profile=Profile.SUGIHARA if pointed else Profile.SUGIHARA_BOUNDED,
        name=f"{X.name}^+",
    )
    validate(A).raise_if_failed()
    mu = Morphism(P, A, tuple(int(x) for x in from_pair), P.signature)
    mu.validate_isomorphism().raise_if_failed()
    return PlusData(A, P, vectors, mu)


def plus_algebra(X: StructuredSpace) -> FiniteAlgebra:
    """X⁺: the valid maps C_{U,V}, with ∧, ∨, ¬ pointwise and ·, → via the pair algebra."""
    data = _plus(X)
    logger.info(f"plus_algebra({X.name}): {data.algebra.n} elements")
    return data.algebra


def mu(X: StructuredSpace) -> Morphism:
    """μ_X⟨U,V⟩ = C_{U,V}, an isomorphism dual_algebra(X)^⋈ → X⁺."""
    return _plus(X).mu


def plus_hom(h: Morphism) -> SpaceMap:
    """h₊(x) = x∘h, checked against ξ_A⁻¹ ∘ (h restricted to cones)_* ∘ ξ_B.

    Raises:
        OracleMismatch: The two descriptions disagree.
    """
    A, B = h.source, h.target
    va, vb = dw_points(A), dw_points(B)
    where = {tuple(int(x) for x in v): i for i, v in enumerate(va)}
    mapping = tuple(where[tuple(int(w[h.mapping[i]]) for i in range(A.n))] for w in vb)
    phi = SpaceMap(dw_dual(B), dw_dual(A), mapping, "sugihara")
    kleene_morphism_report(phi).raise_if_failed()

    via = compose_maps(xi(A).inverse(), compose_maps(dual_hom(cone_hom(h)), xi(B)))
    if via.mapping != phi.mapping:
        raise OracleMismatch(f"h₊ for {A.name} → {B.name}", via.mapping, phi.mapping)
    return phi


def space_plus_hom(phi: SpaceMap) -> Morphism:
    """φ⁺(α) = α∘φ, checked against μ_X ∘ (φ^*)^⋈ ∘ μ_Y⁻¹.

    Raises:
        OracleMismatch: The two descriptions disagree.
    """
    X, Y = phi.source, phi.target
    px, py = _plus(X), _plus(Y)
    where = {v: i for i, v in enumerate(px.vectors)}
    mapping = tuple(where[tuple(alpha[phi.mapping[x]] for x in range(X.n))] for alpha in py.vectors)
    m = Morphism(py.algebra, px.algebra, mapping, px.algebra.signature)
    m.validate().raise_if_failed()

    as_brs = SpaceMap(sugihara_to_brs(X), sugihara_to_brs(Y), phi.mapping, "esakia")
    lifted = lift_hom(algebra_hom(as_brs), "up")
    via = compose(px.mu, compose(lifted, py.mu.inverse()))
    if via.mapping != m.mapping:
        raise OracleMismatch(f"φ⁺ for {X.name} → {Y.name}", via.mapping, m.mapping)
    return m


def evaluation_iso(A: FiniteAlgebra) -> Morphism:
    """a ↦ (h ↦ h(a)), an isomorphism A → (A₊)⁺."""
    vectors = dw_points(A)
    plus = plus_algebra(dw_dual(A))
    mapping = tuple(plus.index(vector_name("C:", vectors[:, a])) for a in range(A.n))
    m = Morphism(A, plus, mapping, A.signature)
    m.validate_isomorphism().raise_if_failed()
    return m


def evaluation_space_iso(X: StructuredSpace) -> SpaceMap:
    """x ↦ (α ↦ α(x)), an isomorphism X → (X⁺)₊."""
    data = _plus(X)
    dual = dw_dual(data.algebra)
    arr = np.array(data.vectors, dtype=np.int8)
    mapping = tuple(dual.index(vector_name("h:", arr[:, x])) for x in range(X.n))
    phi = SpaceMap(X, dual, mapping, "sugihara")
    space_iso_report(phi).raise_if_failed()
    return phi


def convex_prime_subalgebras(A: FiniteAlgebra) -> SubsetFamily:
    """Convex, meet-prime (∧,∨,t,¬)-subuniverses of an odd Sugihara monoid.

    Raises:
        NotOdd: ¬t differs from t.
    """
    _require_sugihara(A)
    if int(A.neg[A.t]) != A.t:
        raise NotOdd(A.name)
    L, M, N = A.leq, A.meet, A.neg
    found = []
    for p in np.flatnonzero(L[:, A.t]):
        for q in np.flatnonzero(L[A.t]):
            inside = L[p] & L[:, q]
            if not inside[N][inside].all():
                continue
            # a∧b ∈ C with a, b ∉ C
            if (inside[M] & ~inside[:, None] & ~inside[None, :]).any():
                continue
            found.append(bits_of(np.flatnonzero(inside)))
    return SubsetFamily.of(A.poset, found)


def convex_prime_witness(A: FiniteAlgebra) -> tuple[dict[str, str], ValidationReport]:
    """C ↦ C ∩ A⁻ onto the dual points of the cone, with its inverse x ↦ ↑x ∩ ↓¬x."""
    family = convex_prime_subalgebras(A)
    B = bowtie_down(A)
    filters = dual_filters(B)
    X = dual_space(B)
    keep = cone_indices(A)
    cone_pos = {a: k for k, a in enumerate(keep)}
    mapping = []
    for C in family:
        restricted = bits_of(cone_pos[a] for a in members(C) if a in cone_pos)
        mapping.append(filters.index(restricted) if restricted in filters else -1)

    report = ValidationReport(f"convex prime subalgebras of {A.name}")
    report.check("C ∩ A⁻ is a dual point", -1 not in mapping, (A.name,))
    report.check("bijective", sorted(mapping) == list(range(X.n)), (A.name,))
    sets = list(family)
    order_ok = all(
        (sets[i] & ~sets[j] == 0) == bool(X.leq[mapping[i], mapping[j]])
        for i in range(len(sets))
        for j in range(len(sets))
        if -1 not in (mapping[i], mapping[j])
    )
    report.check("order isomorphism", order_ok, (A.name,))
    bad = []
    for i, C in enumerate(sets):
        if mapping[i] < 0:
            continue
        x = bits_of(keep[k] for k in members(filters[mapping[i]]))
        rebuilt = A.poset.upset_closure(x) & A.poset.downset_closure(
            bits_of(int(A.neg[a]) for a in members(x))
        )
        if rebuilt != C:
            bad.append(A.subset_names(C))
    report.check("C = ↑x ∩ ↓¬x", not bad, tuple(bad[:1]))
    witness = {
        A.subset_names(C): X.names[mapping[i]] for i, C in enumerate(sets) if mapping[i] >= 0
    }
    return witness, report
