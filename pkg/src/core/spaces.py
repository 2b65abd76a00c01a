"""
Finite structured spaces and the maps between them.

On a finite carrier the topology is discrete, so every clopen condition is
automatic and the Esakia and Priestley separation properties hold. What is
left to check is order-theoretic: the forest shape, minimality of the
designated set, the optional top and the Kleene relation Q.
"""
import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import SignatureError
from .poset import FinitePoset, bits_of, is_forest, members
from .report import ValidationReport, first_witness

logger = logging.getLogger(__name__)


class Flavor(str, Enum):
    BRS = "bRS"
    BG = "bG"
    POINTED_KLEENE = "pointedKleene"
    KLEENE = "Kleene"
    SUGIHARA_POINTED = "SugiharaPointed"
    SUGIHARA_UNPOINTED = "SugiharaUnpointed"

    @property
    def pointed(self) -> bool:
        return self in (Flavor.BRS, Flavor.POINTED_KLEENE, Flavor.SUGIHARA_POINTED)

    @property
    def esakia(self) -> bool:
        return self in (Flavor.BRS, Flavor.BG)

    @property
    def sugihara(self) -> bool:
        return self in (Flavor.SUGIHARA_POINTED, Flavor.SUGIHARA_UNPOINTED)

    @property
    def kleene(self) -> bool:
        return not self.esakia


class StructuredSpace:
    """A finite poset with a designated subset, optional top and optional Q.

    Args:
        poset: The order.
        designated: Bitset of designated points D.
        flavor: Which class of spaces the structure claims to be.
        top: Index of the top point (pointed flavors).
        Q: Explicit Kleene relation; Sugihara flavors use comparability.
        name: Display name.
    """

    def __init__(
        self,
        poset: FinitePoset,
        designated: int,
        *,
        flavor: Flavor,
        top: int | None = None,
        Q=None,
        name: str = "X",
    ) -> None:
        self.poset = poset
        self.designated = int(designated)
        self.flavor = Flavor(flavor)
        self.top = None if top is None else int(top)
        if Q is not None:
            Q = np.array(Q, dtype=bool, copy=True)
            if Q.shape != (poset.n, poset.n):
                raise SignatureError(f"Q has shape {Q.shape}, expected {(poset.n, poset.n)}")
            Q.setflags(write=False)
        self.Q = Q
        self.name = name
        if self.designated >> poset.n:
            raise SignatureError("designated set leaves the carrier")

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
    def nondesignated(self) -> int:
        return self.poset.everything & ~self.designated

    def in_designated(self, i: int) -> bool:
        return bool(self.designated >> i & 1)

    def designated_mask(self) -> np.ndarray:
        return np.array([self.in_designated(i) for i in range(self.n)], dtype=bool)

    def comparability(self) -> np.ndarray:
        return self.leq | self.leq.T

    def relation(self) -> np.ndarray:
        """Q as stored, else comparability."""
        return self.Q if self.Q is not None else self.comparability()

    def subset_names(self, bits: int) -> str:
        return self.poset.subset_names(bits)

    def evolve(self, **changes) -> "StructuredSpace":
        fields = dict(
            designated=self.designated,
            flavor=self.flavor,
            top=self.top,
            Q=self.Q,
            name=self.name,
        )
        fields.update(changes)
        poset = fields.pop("poset", self.poset)
        designated = fields.pop("designated")
        return StructuredSpace(poset, designated, **fields)

    def same_structure(self, other: "StructuredSpace") -> bool:
        if self.flavor != other.flavor or self.poset != other.poset:
            return False
        if self.designated != other.designated or self.top != other.top:
            return False
        if (self.Q is None) != (other.Q is None):
            return False
        return self.Q is None or np.array_equal(self.Q, other.Q)

    def __repr__(self) -> str:
        return f"StructuredSpace({self.name!r}, {self.flavor.value}, n={self.n})"


def kleene_axioms(X: StructuredSpace, Q: np.ndarray, report: ValidationReport) -> None:
    L, names = X.leq, X.names
    D = X.designated_mask()
    report.add("x Q x", first_witness(~np.diag(Q), names))
    report.add("x Q y and x ∈ D ⟹ x ≤ y", first_witness(Q & D[:, None] & ~L, names))
    # indexed [x, y, z]
    bad = Q[:, :, None] & L[None, :, :] & ~Q.T[:, None, :]
    report.add("x Q y and y ≤ z ⟹ z Q x", first_witness(bad, names))


def validate_space(X: StructuredSpace) -> ValidationReport:
    """Check the axioms of X's flavor."""
    report = ValidationReport(f"{X.name} ({X.flavor.value})")
    P, names = X.poset, X.names
    if X.flavor.pointed:
        if X.top is None:
            report.add("top present", (X.name,))
        else:
            report.add("top is greatest", first_witness(~X.leq[:, X.top], names))
            report.check("top not designated", not X.in_designated(X.top), (names[X.top],))
    else:
        report.check("no top in unpointed flavor", X.top is None, (X.name,))

    stray = X.designated & ~P.minimal()
    report.check("designated points are minimal", stray == 0, tuple(names[i] for i in members(stray)[:1]))

    if X.flavor.esakia or X.flavor.sugihara:
        bad = [] if is_forest(P) else [i for i in range(X.n) if not P.is_chain(P.up(i))]
        report.check("forest (every ↑x is a chain)", not bad, (names[bad[0]],) if bad else ())

    if X.flavor.kleene:
        if X.flavor.sugihara:
            comp = X.comparability()
            if X.Q is not None:
                report.add("Q is comparability", first_witness(X.Q != comp, names))
            kleene_axioms(X, comp, report)
        elif X.Q is None:
            report.add("Q present", (X.name,))
        else:
            kleene_axioms(X, X.Q, report)
    return report


@dataclass(frozen=True)
class SpaceMap:
    """A map between finite spaces (structured or relevant)."""

    source: object
    target: object
    mapping: tuple[int, ...]
    kind: str = "space"

    def __post_init__(self) -> None:
        if len(self.mapping) != self.source.n:
            raise SignatureError(f"map from {self.source.name} is not total")
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

    def inverse(self) -> "SpaceMap":
        if not self.is_bijective:
            raise SignatureError(f"map {self.source.name} → {self.target.name} is not bijective")
        inv = [0] * self.target.n
        for i, v in enumerate(self.mapping):
            inv[v] = i
        return SpaceMap(self.target, self.source, tuple(inv), self.kind)

    def image(self, bits: int) -> int:
        return bits_of(self.mapping[i] for i in members(bits))

    def preimage(self, bits: int) -> int:
        return bits_of(i for i, v in enumerate(self.mapping) if bits >> v & 1)


def compose_maps(g: SpaceMap, h: SpaceMap) -> SpaceMap:
    """g after h."""
    return SpaceMap(h.source, g.target, tuple(g.mapping[v] for v in h.mapping), h.kind)


def identity_map(X) -> SpaceMap:
    return SpaceMap(X, X, tuple(range(X.n)))


def _isotone(phi: SpaceMap, report: ValidationReport) -> np.ndarray:
    h = np.asarray(phi.mapping, dtype=np.intp)
    bad = phi.source.leq & ~phi.target.leq[h[:, None], h[None, :]]
    report.add("isotone", first_witness(bad, phi.source.names))
    return h


def _pmorphism(phi: SpaceMap, report: ValidationReport, label: str = "p-morphism") -> None:
    h = np.asarray(phi.mapping, dtype=np.intp)
    X, Y = phi.source, phi.target
    witness = None
    for x in range(X.n):
        reach = {int(h[y]) for y in members(X.poset.up(x))}
        for z in np.flatnonzero(Y.leq[h[x]]):
            if int(z) not in reach:
                witness = (X.names[x], Y.names[z])
                break
        if witness:
            break
    report.add(f"{label}: φ(x) ≤ z ⟹ ∃y ≥ x, φ(y) = z", witness)


def _designated(phi: SpaceMap, report: ValidationReport, both: bool) -> None:
    X, Y = phi.source, phi.target
    bad = [i for i in range(X.n) if X.in_designated(i) and not Y.in_designated(phi.mapping[i])]
    report.check("φ[D] ⊆ D", not bad, (X.names[bad[0]],) if bad else ())
    if both:
        bad = [i for i in range(X.n) if not X.in_designated(i) and Y.in_designated(phi.mapping[i])]
        report.check("φ[D^∁] ⊆ D^∁", not bad, (X.names[bad[0]],) if bad else ())


def _top(phi: SpaceMap, report: ValidationReport) -> None:
    X, Y = phi.source, phi.target
    if X.flavor.pointed and Y.flavor.pointed:
        report.check("top preserved", phi.mapping[X.top] == Y.top, (X.names[X.top],))


def esakia_morphism_report(phi: SpaceMap) -> ValidationReport:
    """bRS/bG-space morphism: isotone p-morphism keeping D and D^∁, and top."""
    report = ValidationReport(f"{phi.source.name} → {phi.target.name}")
    _isotone(phi, report)
    _pmorphism(phi, report)
    _designated(phi, report, both=True)
    _top(phi, report)
    return report


def kleene_morphism_report(phi: SpaceMap) -> ValidationReport:
    """Kleene/Sugihara-space morphism: keeps ≤, Q, D and the top."""
    report = ValidationReport(f"{phi.source.name} → {phi.target.name}")
    h = _isotone(phi, report)
    QX, QY = phi.source.relation(), phi.target.relation()
    report.add("preserves Q", first_witness(QX & ~QY[h[:, None], h[None, :]], phi.source.names))
    _designated(phi, report, both=False)
    _top(phi, report)
    return report


def space_iso_report(phi: SpaceMap) -> ValidationReport:
    """Bijection reflecting and preserving ≤, Q, D and top."""
    X, Y = phi.source, phi.target
    report = ValidationReport(f"{X.name} ≅ {Y.name}")
    report.check("bijective", phi.is_bijective, (X.name,))
    if not phi.is_bijective:
        return report
    h = np.asarray(phi.mapping, dtype=np.intp)
    report.add("order embedding", first_witness(X.leq != Y.leq[h[:, None], h[None, :]], X.names))
    report.add("φ[D] = D", first_witness(X.designated_mask() != Y.designated_mask()[h], X.names))
    if X.flavor.kleene and Y.flavor.kleene:
        report.add(
            "Q preserved and reflected",
            first_witness(X.relation() != Y.relation()[h[:, None], h[None, :]], X.names),
        )
    if X.top is not None or Y.top is not None:
        report.check(
            "top preserved",
            X.top is not None and Y.top is not None and phi.mapping[X.top] == Y.top,
            (X.name,),
        )
    return report


def _point_invariants(X) -> list[tuple]:
    P = X.poset
    return [
        (
            bin(P.up(i)).count("1"),
            bin(P.down(i)).count("1"),
            X.in_designated(i) if hasattr(X, "in_designated") else False,
            getattr(X, "top", None) == i,
        )
        for i in range(X.n)
    ]


def search_bijections(X, Y, extra_ok, invariants=_point_invariants):
    """Yield order isomorphisms X → Y (as tuples) accepted by ``extra_ok``.

    ``extra_ok(assign, x)`` checks the partial map after x was assigned;
    assignments are numpy arrays with -1 for unassigned points.
    """
    if X.n != Y.n:
        return
    kx, ky = invariants(X), invariants(Y)
    if sorted(kx) != sorted(ky):
        return
    allowed = [[v for v in range(Y.n) if kx[x] == ky[v]] for x in range(X.n)]
    order = X.poset.linear_extension()
    assign = np.full(X.n, -1, dtype=np.intp)
    used = np.zeros(Y.n, dtype=bool)

    def consistent(x) -> bool:
        done = np.flatnonzero(assign >= 0)
        v = assign[x]
        if np.any(X.leq[x, done] != Y.leq[v, assign[done]]):
            return False
        if np.any(X.leq[done, x] != Y.leq[assign[done], v]):
            return False
        return extra_ok(assign, x)

    def dfs(k):
        if k == X.n:
            yield tuple(int(v) for v in assign)
            return
        x = order[k]
        for v in allowed[x]:
            if used[v]:
                continue
            assign[x] = v
            used[v] = True
            if consistent(x):
                yield from dfs(k + 1)
            assign[x] = -1
            used[v] = False

    yield from dfs(0)


def find_space_isomorphism(X: StructuredSpace, Y: StructuredSpace) -> SpaceMap | None:
    """First isomorphism of structured spaces, or None."""
    if X.flavor != Y.flavor:
        return None
    QX, QY = X.relation(), Y.relation()

    def q_ok(assign, x):
        done = np.flatnonzero(assign >= 0)
        v = assign[x]
        return bool(
            np.all(QX[x, done] == QY[v, assign[done]]) and np.all(QX[done, x] == QY[assign[done], v])
        )

    for mapping in search_bijections(X, Y, q_ok):
        phi = SpaceMap(X, Y, mapping, "iso")
        logger.debug(f"Space isomorphism {X.name} → {Y.name} found")
        return phi
    return None
