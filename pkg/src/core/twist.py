"""
Negative cones and twist representations.

``bowtie_down`` sends a Sugihara monoid to its negative cone with constant
f = ¬t. ``sigma_monoid`` and ``bowtie_up`` rebuild a Sugihara monoid on
pairs over a bRS-algebra; the first with the nucleus-twisted involution,
the second with the swap involution ⟨a,b⟩ ↦ ⟨b,a⟩. ``delta`` is the
isomorphism between the two pair algebras.
"""
import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .algebra import (
    BOOLEAN_CONSTANT_FAMILY,
    SUGIHARA_FAMILY,
    FiniteAlgebra,
    Profile,
    cone_indices,
    negative_cone,
    validate,
)
from .config import check_carrier_size
from .exceptions import ConeNotBrouwerian, OracleMismatch, SignatureError
from .homs import Morphism, compose
from .poset import FinitePoset
from .report import ValidationReport

logger = logging.getLogger(__name__)


class PairKind(str, Enum):
    SIGMA = "Sigma"
    BOWTIE = "Bowtie"


@dataclass(frozen=True)
class PairCarrier:
    """Pairs over a bRS-algebra, in lexicographic index order."""

    base: FiniteAlgebra
    pairs: tuple[tuple[int, int], ...]
    kind: PairKind

    def __len__(self) -> int:
        return len(self.pairs)

    def index(self, pair: tuple[int, int]) -> int:
        return self._lookup()[pair]

    def get(self, pair: tuple[int, int]) -> int | None:
        return self._lookup().get(pair)

    def _lookup(self) -> dict:
        cache = self.__dict__.get("_cache")
        if cache is None:
            cache = {p: i for i, p in enumerate(self.pairs)}
            object.__setattr__(self, "_cache", cache)
        return cache

    def pair_name(self, pair: tuple[int, int]) -> str:
        names = self.base.names
        return f"({names[pair[0]]},{names[pair[1]]})"

    def names(self) -> list[str]:
        return [self.pair_name(p) for p in self.pairs]

    def name_set(self) -> set[str]:
        return set(self.names())


def _require_brsa(B: FiniteAlgebra) -> None:
    if B.profile not in BOOLEAN_CONSTANT_FAMILY:
        raise SignatureError(f"expected a bRS- or bG-algebra, got {B.profile.value}")


def nucleus(B: FiniteAlgebra) -> np.ndarray:
    """N(a) = f→a as a table."""
    return B.arrow[B.f]


def sigma_carrier(B: FiniteAlgebra) -> PairCarrier:
    _require_brsa(B)
    N = nucleus(B)
    pairs = tuple(
        (a, b) for a in range(B.n) for b in range(B.n) if B.join[a, b] == B.t and N[b] == b
    )
    return PairCarrier(B, pairs, PairKind.SIGMA)


def bowtie_carrier(B: FiniteAlgebra) -> PairCarrier:
    _require_brsa(B)
    pairs = tuple(
        (a, b)
        for a in range(B.n)
        for b in range(B.n)
        if B.join[a, b] == B.t and B.leq[B.meet[a, b], B.f]
    )
    return PairCarrier(B, pairs, PairKind.BOWTIE)


def _locate(carrier: PairCarrier, pair: tuple[int, int], what: str) -> int:
    i = carrier.get((int(pair[0]), int(pair[1])))
    if i is None:
        raise OracleMismatch(what, "a pair in the carrier", carrier.pair_name(pair))
    return i


def _pair_algebra(carrier: PairCarrier, mult, arrow, neg, unit, name: str) -> FiniteAlgebra:
    B = carrier.base
    L, M, J = B.leq, B.meet, B.join
    pairs = carrier.pairs
    k = len(pairs)
    check_carrier_size(k, f"{carrier.kind.value} carrier")
    first = np.array([p[0] for p in pairs], dtype=np.intp)
    second = np.array([p[1] for p in pairs], dtype=np.intp)
    leq = L[np.ix_(first, first)] & L[np.ix_(second, second)].T
    poset = FinitePoset.from_leq(carrier.names(), leq)

    def table(op, what):
        out = np.empty((k, k), dtype=np.intp)
        for i, p in enumerate(pairs):
            for j, q in enumerate(pairs):
                out[i, j] = _locate(carrier, op(*p, *q), f"{what} on {name}")
        return out

    meet = table(lambda a, b, c, d: (M[a, c], J[b, d]), "meet")
    join = table(lambda a, b, c, d: (J[a, c], M[b, d]), "join")
    mult_t = table(mult, "product")
    arrow_t = table(arrow, "residual")
    unit_i = _locate(carrier, unit, f"unit of {name}")
    if neg is None:
        # ¬p = p ⇒ ⟨f,t⟩
        neg_t = arrow_t[:, _locate(carrier, (B.f, B.t), f"⟨f,t⟩ in {name}")]
    else:
        neg_t = np.array([_locate(carrier, neg(*p), f"involution on {name}") for p in pairs])

    constants = {}
    profile = Profile.SUGIHARA
    if B.bot is not None:
        profile = Profile.SUGIHARA_BOUNDED
        constants = {"bot": poset.least(), "top": poset.greatest()}
        expected_bot = carrier.get((B.bot, B.t))
        if constants["bot"] is None or constants["bot"] != expected_bot:
            raise OracleMismatch(f"least element of {name}", carrier.pair_name((B.bot, B.t)), constants["bot"])
    return FiniteAlgebra(
        poset,
        meet,
        join,
        mult=mult_t,
        arrow=arrow_t,
        unit=unit_i,
        neg=neg_t,
        constants=constants,
        profile=profile,
        name=name,
    )


def bowtie_down(A: FiniteAlgebra) -> FiniteAlgebra:
    """The negative cone of a Sugihara monoid with constant f = ¬t.

    Raises:
        ConeNotBrouwerian: Multiplication differs from meet on the cone.
    """
    if A.profile not in SUGIHARA_FAMILY:
        raise SignatureError(f"bowtie_down needs a Sugihara monoid, got {A.profile.value}")
    cone = negative_cone(A)
    bad = np.argwhere(cone.mult != cone.meet)
    if bad.size:
        i, j = bad[0]
        raise ConeNotBrouwerian((cone.names[i], cone.names[j]))
    keep = cone_indices(A)
    f = keep.index(int(A.neg[A.t]))
    bounded = A.profile is Profile.SUGIHARA_BOUNDED
    constants = {"f": f}
    if bounded:
        constants["bot"] = keep.index(A.bot)
    B = cone.evolve(
        profile=Profile.BGA if bounded else Profile.BRSA,
        constants=constants,
        name=f"{A.name}_neg",
    )
    validate(B).raise_if_failed()
    logger.info(f"bowtie_down({A.name}): {B.n} elements, f={B.names[f]}")
    return B


def sigma_monoid(B: FiniteAlgebra) -> FiniteAlgebra:
    """The Sugihara monoid on Σ(B) = {⟨a,b⟩ : a∨b = t, Nb = b}."""
    M, J, R, t = B.meet, B.join, B.arrow, B.t
    N = nucleus(B)

    def mult(a, b, c, d):
        core = M[R[a, d], R[c, b]]
        return R[core, M[a, c]], N[core]

    def arrow(a, b, c, d):
        w = M[R[a, c], R[d, b]]
        return w, N[R[w, M[a, d]]]

    S = _pair_algebra(sigma_carrier(B), mult, arrow, None, (t, t), f"Sigma({B.name})")
    validate(S).raise_if_failed()
    logger.info(f"sigma_monoid({B.name}): {S.n} pairs")
    return S


def bowtie_up(B: FiniteAlgebra) -> FiniteAlgebra:
    """The Sugihara monoid on {⟨a,b⟩ : a∨b = t, a∧b ≤ f} with ∼⟨a,b⟩ = ⟨b,a⟩."""
    M, J, R, t, f = B.meet, B.join, B.arrow, B.t, B.f

    def mult(a, b, c, d):
        core = M[R[M[a, f], d], R[M[c, f], b]]
        s = R[core, M[a, c]]
        return s, M[core, R[s, f]]

    def arrow(a, b, c, d):
        w = M[R[a, c], R[M[f, d], b]]
        v = M[R[M[f, M[R[a, c], R[d, b]]], M[a, R[f, d]]], R[w, f]]
        return w, v

    U = _pair_algebra(
        bowtie_carrier(B), mult, arrow, lambda a, b: (b, a), (t, f), f"Bowtie({B.name})"
    )
    validate(U).raise_if_failed()
    logger.info(f"bowtie_up({B.name}): {U.n} pairs")
    return U


def carrier_difference(B: FiniteAlgebra) -> tuple[set[str], set[str]]:
    """Pairs only in Σ(B), and pairs only in the swap-involution carrier."""
    sigma, bowtie = sigma_carrier(B).name_set(), bowtie_carrier(B).name_set()
    return sigma - bowtie, bowtie - sigma


def delta_report(B: FiniteAlgebra, up=None, sigma=None) -> tuple[Morphism, ValidationReport]:
    """δ⟨a,b⟩ = ⟨a, f→b⟩ with its inverse formula and involution checks."""
    up = up or bowtie_up(B)
    sigma = sigma or sigma_monoid(B)
    bow, sig = bowtie_carrier(B), sigma_carrier(B)
    M, R, f = B.meet, B.arrow, B.f
    N = nucleus(B)
    mapping = tuple(_locate(sig, (a, N[b]), "delta") for a, b in bow.pairs)
    d = Morphism(up, sigma, mapping, up.signature)
    report = d.validate_isomorphism()
    report.subject = f"delta({B.name})"

    bad = []
    for i, (a, b) in enumerate(sig.pairs):
        back = bow.get((a, int(M[b, R[a, f]])))
        if back is None or mapping[back] != i:
            bad.append(sig.pair_name((a, b)))
    report.add("δ⁻¹⟨a,b⟩ = ⟨a, b∧(a→f)⟩", (bad[0],) if bad else None)

    bad = [bow.pair_name(p) for p in bow.pairs if M[R[p[0], f], R[f, p[1]]] != p[1]]
    report.add("(a→f)∧(f→b) = b", (bad[0],) if bad else None)

    swap = [bow.index((b, a)) for a, b in bow.pairs]
    bad = [
        bow.pair_name(p)
        for i, p in enumerate(bow.pairs)
        if sigma.neg[mapping[i]] != mapping[swap[i]]
    ]
    report.add("¬δ⟨a,b⟩ = δ⟨b,a⟩", (bad[0],) if bad else None)
    return d, report


def delta(B: FiniteAlgebra) -> Morphism:
    """The isomorphism bowtie_up(B) → sigma_monoid(B)."""
    d, report = delta_report(B)
    report.raise_if_failed()
    return d


def transport_tables(B: FiniteAlgebra, up=None, sigma=None) -> tuple[np.ndarray, np.ndarray]:
    """⊠ and ⇒ on the swap carrier computed as δ⁻¹(δp ∘ δq)."""
    up = up or bowtie_up(B)
    sigma = sigma or sigma_monoid(B)
    d, _ = delta_report(B, up, sigma)
    back = d.inverse().mapping
    h = np.asarray(d.mapping, dtype=np.intp)
    inv = np.asarray(back, dtype=np.intp)
    return inv[sigma.mult[h[:, None], h[None, :]]], inv[sigma.arrow[h[:, None], h[None, :]]]


def transport_product(B: FiniteAlgebra) -> np.ndarray:
    return transport_tables(B)[0]


def transport_residual(B: FiniteAlgebra) -> np.ndarray:
    return transport_tables(B)[1]


def check_transport(B: FiniteAlgebra) -> ValidationReport:
    """Compare the closed-form ⊠ and ⇒ tables with the transported ones."""
    up = bowtie_up(B)
    sigma = sigma_monoid(B)
    mult, arrow = transport_tables(B, up, sigma)
    report = ValidationReport(f"transport on {B.name}")
    for label, closed, moved in (("⊠", up.mult, mult), ("⇒", up.arrow, arrow)):
        hits = np.argwhere(closed != moved)
        report.add(
            f"closed-form {label} equals transported {label}",
            None if hits.size == 0 else (up.names[hits[0][0]], up.names[hits[0][1]]),
        )
    return report


def unit_iso(A: FiniteAlgebra) -> Morphism:
    """A → bowtie_up(bowtie_down(A)), a ↦ ⟨a∧t, ¬a∧t⟩."""
    B = bowtie_down(A)
    up = bowtie_up(B)
    carrier = bowtie_carrier(B)
    keep = cone_indices(A)
    mapping = tuple(
        _locate(carrier, (keep.index(A.meet[a, A.t]), keep.index(A.meet[A.neg[a], A.t])), "unit_iso")
        for a in range(A.n)
    )
    m = Morphism(A, up, mapping, A.signature)
    m.validate_isomorphism().raise_if_failed()
    return m


def counit_iso(B: FiniteAlgebra) -> Morphism:
    """B → bowtie_down(bowtie_up(B)), a ↦ ⟨a, a→f⟩."""
    up = bowtie_up(B)
    down = bowtie_down(up)
    carrier = bowtie_carrier(B)
    keep = cone_indices(up)
    mapping = tuple(
        keep.index(_locate(carrier, (a, B.arrow[a, B.f]), "counit_iso")) for a in range(B.n)
    )
    m = Morphism(B, down, mapping, B.signature)
    m.validate_isomorphism().raise_if_failed()
    return m


def cone_hom(h: Morphism) -> Morphism:
    """Restriction of a Sugihara morphism to the negative cones."""
    A, C = h.source, h.target
    da, dc = bowtie_down(A), bowtie_down(C)
    ka, kc = cone_indices(A), cone_indices(C)
    mapping = tuple(kc.index(h.mapping[i]) for i in ka)
    signature = tuple(op for op in da.signature if op in dc.signature)
    m = Morphism(da, dc, mapping, signature)
    m.validate().raise_if_failed()
    return m


def lift_hom(h: Morphism, direction: str = "up") -> Morphism:
    """⟨a,b⟩ ↦ ⟨h(a), h(b)⟩ on the swap carriers (``up``) or on Σ (``sigma``).

    For ``up`` the result is also compared pointwise with δ⁻¹ ∘ S(h) ∘ δ.

    Raises:
        OracleMismatch: The two descriptions of the lift disagree.
    """
    A, B = h.source, h.target
    if direction not in ("up", "sigma"):
        raise SignatureError(f"unknown lift direction {direction!r}")
    build, carrier = (bowtie_up, bowtie_carrier) if direction == "up" else (sigma_monoid, sigma_carrier)
    src, dst = build(A), build(B)
    cs, cd = carrier(A), carrier(B)
    mapping = tuple(_locate(cd, (h.mapping[a], h.mapping[b]), "lifted map") for a, b in cs.pairs)
    signature = tuple(op for op in src.signature if op in dst.signature)
    lifted = Morphism(src, dst, mapping, signature)
    lifted.validate().raise_if_failed()

    if direction == "up":
        s_h = lift_hom(h, "sigma")
        via_delta = compose(delta(B).inverse(), compose(s_h, delta(A)))
        if via_delta.mapping != lifted.mapping:
            raise OracleMismatch(f"lift of {A.name} → {B.name}", via_delta.mapping, lifted.mapping)
    return lifted
