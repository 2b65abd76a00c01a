"""
Urquhart duals of bounded Sugihara monoids and the reflection construction.

A relevant space carries a ternary relation R, an involution ' and a set I.
``reflect_space`` builds one from an unpointed Sugihara space X by adding a
mirrored copy -x of every non-designated point; ``project_space`` goes back
by restricting to I.
"""
import logging
from dataclasses import dataclass

import numpy as np

from .algebra import FiniteAlgebra, Profile, validate, with_bounds
from .config import check_carrier_size
from .esakia import filter_name, inclusion_order
from .exceptions import OracleMismatch, SignatureError
from .homs import Morphism
from .poset import FinitePoset, bits_of, members, popcount, prime_filters, up_sets
from .report import ValidationReport, first_witness
from .spaces import (
    Flavor,
    SpaceMap,
    StructuredSpace,
    kleene_morphism_report,
    search_bijections,
    space_iso_report,
    validate_space,
)

logger = logging.getLogger(__name__)


class RelevantSpace:
    """A finite poset with a ternary relation R, an involution ' and a subset I.

    Args:
        poset: The order.
        R: Boolean array of shape (n, n, n); R[x, y, z] reads Rxyz.
        prime: Index table of the involution '.
        I: Bitset of I.
        name: Display name.
    """

    flavor = "relevant"

    def __init__(self, poset: FinitePoset, R, prime, I: int, name: str = "Y") -> None:
        n = poset.n
        R = np.array(R, dtype=bool, copy=True).reshape(n, n, n)
        R.setflags(write=False)
        prime = np.array(prime, dtype=np.intp, copy=True).reshape(n)
        if np.any((prime < 0) | (prime >= n)):
            raise SignatureError(f"' leaves the carrier of {name}")
        prime.setflags(write=False)
        self.poset = poset
        self.R = R
        self.prime = prime
        self.I = int(I)
        self.name = name

    @property
    def n(self) -> int:
        return self.poset.n

    def __len__(self) -> int:
        return self.poset.n

    @property
    def names(self) -> tuple[str, ...]:
        return self.poset.names

    @property
    def leq(self) -> np.ndarray:
        return self.poset.leq

    def index(self, name: str) -> int:
        return self.poset.index(name)

    def subset_names(self, bits: int) -> str:
        return self.poset.subset_names(bits)

    @property
    def designated(self) -> int:
        """Fixed points of '."""
        return bits_of(i for i in range(self.n) if self.prime[i] == i)

    def in_designated(self, i: int) -> bool:
        return bool(self.designated >> i & 1)

    def odot(self, x: int, y: int) -> int:
        """x⊙y = {z : Rxyz}."""
        return bits_of(np.flatnonzero(self.R[x, y]))

    def box(self, U: int, V: int) -> int:
        """U⊠V: points z with Rxyz for some x ∈ U, y ∈ V."""
        xs, ys = members(U), members(V)
        if not xs or not ys:
            return 0
        return bits_of(np.flatnonzero(self.R[np.ix_(xs, ys)].any(axis=(0, 1))))

    def arrow(self, U: int, V: int) -> int:
        """U⇒V: points x with Rxyz and y ∈ U forcing z ∈ V."""
        inside_u = np.array([bool(U >> y & 1) for y in range(self.n)])
        outside_v = np.array([not V >> z & 1 for z in range(self.n)])
        bad = (self.R & inside_u[None, :, None] & outside_v[None, None, :]).any(axis=(1, 2))
        return bits_of(np.flatnonzero(~bad))

    def negation(self, U: int) -> int:
        """¬U = {x : x' ∉ U}."""
        return bits_of(x for x in range(self.n) if not U >> int(self.prime[x]) & 1)

    def evolve(self, **changes) -> "RelevantSpace":
        fields = dict(poset=self.poset, R=self.R, prime=self.prime, I=self.I, name=self.name)
        fields.update(changes)
        return RelevantSpace(**fields)

    def same_structure(self, other: "RelevantSpace") -> bool:
        return (
            isinstance(other, RelevantSpace)
            and self.poset == other.poset
            and np.array_equal(self.R, other.R)
            and np.array_equal(self.prime, other.prime)
            and self.I == other.I
        )

    def __repr__(self) -> str:
        return f"RelevantSpace({self.name!r}, n={self.n}, |R|={int(self.R.sum())})"


def _bounded(A: FiniteAlgebra) -> FiniteAlgebra:
    if A.profile is Profile.SUGIHARA:
        return with_bounds(A)
    if A.profile is not Profile.SUGIHARA_BOUNDED:
        raise SignatureError(f"expected a Sugihara monoid, got {A.profile.value}")
    return A


def complex_product(A: FiniteAlgebra, x: int, y: int) -> int:
    """{c : a·b ≤ c for some a ∈ x, b ∈ y}."""
    xs, ys = members(x), members(y)
    if not xs or not ys:
        return 0
    products = bits_of(int(v) for v in np.unique(A.mult[np.ix_(xs, ys)]))
    return A.poset.upset_closure(products)


def prime(A: FiniteAlgebra, x: int) -> int:
    """x' = {a : ¬a ∉ x}."""
    return bits_of(a for a in range(A.n) if not x >> int(A.neg[a]) & 1)


def absolute(A: FiniteAlgebra, x: int) -> int:
    """|x|, the larger of x and x'."""
    return x | prime(A, x)


def _comparable(x: int, y: int) -> bool:
    return x & ~y == 0 or y & ~x == 0


def _strictly_below(x: int, y: int) -> bool:
    return x != y and x & ~y == 0


def _filter_join(A: FiniteAlgebra, x: int, y: int) -> int:
    """Least prime or improper filter containing x and y."""
    above = [z for z in prime_filters(A, generalized=True) if (x | y) & ~z == 0]
    least = min(above, key=popcount)
    if any(least & ~z for z in above):
        raise OracleMismatch(f"join of filters in {A.name}", "a least upper bound", A.subset_names(x | y))
    return least


def filter_mult(A: FiniteAlgebra, x: int, y: int) -> int:
    """x·y by the case analysis on I(A), comparability and absolute values.

    The result is compared with the complex product.

    Raises:
        OracleMismatch: The case formula and the complex product disagree.
    """
    A = _bounded(A)
    in_i = x >> A.t & 1 and y >> A.t & 1
    if in_i or not _comparable(x, y):
        value = _filter_join(A, x, y)
    else:
        ax, ay = absolute(A, x), absolute(A, y)
        if _strictly_below(ax, ay):
            value = y
        elif _strictly_below(ay, ax):
            value = x
        elif ax == ay:
            value = x & y
        else:
            raise OracleMismatch(
                f"|x|, |y| in {A.name}", "comparable absolute values", (A.subset_names(ax), A.subset_names(ay))
            )
    brute = complex_product(A, x, y)
    if value != brute:
        raise OracleMismatch(
            f"{filter_name(A, x)}·{filter_name(A, y)} in {A.name}",
            A.subset_names(brute),
            A.subset_names(value),
        )
    return value


def prime_filter_laws(A: FiniteAlgebra) -> ValidationReport:
    """Facts about ' and · on the prime filters of a bounded Sugihara monoid."""
    A = _bounded(A)
    family = list(prime_filters(A))
    nt = int(A.neg[A.t])
    report = ValidationReport(f"prime filters of {A.name}")
    bad = {key: [] for key in ("cmp", "larger", "fixed", "chain", "meet")}
    for x in family:
        xp = prime(A, x)
        name = filter_name(A, x)
        if not _comparable(x, xp):
            bad["cmp"].append(name)
        elif not (x | xp) >> A.t & 1:
            bad["larger"].append(name)
        if (x == xp) != bool(x >> A.t & 1 and not x >> nt & 1):
            bad["fixed"].append(name)
        if complex_product(A, x, xp) != x & xp:
            bad["meet"].append(name)
        for y in family:
            if not _comparable(x, y):
                continue
            group = [x, y, xp, prime(A, y)]
            if not all(_comparable(u, v) for u in group for v in group):
                bad["chain"].append((name, filter_name(A, y)))
    report.check("x ⊆ x' or x' ⊆ x", not bad["cmp"], tuple(bad["cmp"][:1]))
    report.check("the larger of x, x' lies in I", not bad["larger"], tuple(bad["larger"][:1]))
    report.check("x = x' ⟺ t ∈ x and ¬t ∉ x", not bad["fixed"], tuple(bad["fixed"][:1]))
    report.check("x, y comparable ⟹ {x, y, x', y'} is a chain", not bad["chain"], bad["chain"][0] if bad["chain"] else ())
    report.check("x·x' = x ∩ x'", not bad["meet"], tuple(bad["meet"][:1]))
    return report


def urquhart_dual(A: FiniteAlgebra) -> RelevantSpace:
    """Prime filters of A with Rxyz iff x·y ⊆ z, x' and I = {x : t ∈ x}."""
    A = _bounded(A)
    family = list(prime_filters(A))
    n = len(family)
    check_carrier_size(n, "Urquhart dual")
    where = {x: i for i, x in enumerate(family)}
    R = np.zeros((n, n, n), dtype=bool)
    for i, x in enumerate(family):
        for j, y in enumerate(family):
            product = complex_product(A, x, y)
            R[i, j] = [product & ~z == 0 for z in family]
    try:
        primes = [where[prime(A, x)] for x in family]
    except KeyError:
        raise OracleMismatch(f"' on {A.name}", "a prime filter", "another subset") from None
    Y = RelevantSpace(
        FinitePoset.from_leq([filter_name(A, x) for x in family], inclusion_order(family)),
        R,
        primes,
        bits_of(i for i, x in enumerate(family) if x >> A.t & 1),
        name=f"{A.name}_*",
    )
    validate_relevant(Y).raise_if_failed()
    logger.info(f"urquhart_dual({A.name}): {n} points, |R| = {int(R.sum())}")
    return Y


def _odot_table(Y: RelevantSpace) -> list[list[int]]:
    return [[Y.odot(x, y) for y in range(Y.n)] for x in range(Y.n)]


def _lift(table, S: int, w: int, left: bool) -> int:
    out = 0
    for s in members(S):
        out |= table[s][w] if left else table[w][s]
    return out


def validate_relevant(Y: RelevantSpace) -> ValidationReport:
    """Relevant-space conditions plus the Sugihara laws."""
    report = ValidationReport(f"{Y.name} (relevant)")
    P, L, R, names = Y.poset, Y.leq, Y.R, Y.names
    n = Y.n
    ups = list(up_sets(P))

    witness = None
    for U in ups:
        for V in ups:
            if not P.is_upset(Y.box(U, V)) or not P.is_upset(Y.arrow(U, V)):
                witness = (Y.subset_names(U), Y.subset_names(V))
                break
        if witness:
            break
    report.add("U⊠V and U⇒V are up-sets", witness)

    # R is down-closed in x and y and up-closed in z
    down_x = np.einsum("ab,bcd->acd", L.astype(np.int64), R.astype(np.int64)) > 0
    down_y = np.einsum("ab,cbd->cad", L.astype(np.int64), R.astype(np.int64)) > 0
    up_z = np.einsum("abc,cd->abd", R.astype(np.int64), L.astype(np.int64)) > 0
    report.add("R monotone", first_witness((down_x | down_y | up_z) & ~R, names))

    # ↑x, ↑y are the least up-sets holding x and y
    boxes = np.array(
        [[[Y.box(P.up(x), P.up(y)) >> z & 1 for z in range(n)] for y in range(n)] for x in range(n)],
        dtype=bool,
    ).reshape(n, n, n)
    report.add("separation by up-sets", first_witness(~R & boxes, names))

    p = Y.prime
    report.add("' antitone", first_witness(L & ~L[p[None, :], p[:, None]], names))
    report.check("I is an up-set", P.is_upset(Y.I), (Y.subset_names(Y.I),))
    in_i = np.array([bool(Y.I >> x & 1) for x in range(n)])
    reach = (R & in_i[:, None, None]).any(axis=0)
    report.add("y ≤ z ⟺ ∃x ∈ I Rxyz", first_witness(reach != L, names))

    report.add("x⊙y = y⊙x", first_witness(R != R.transpose(1, 0, 2), names))
    table = _odot_table(Y)
    witness = None
    for x in range(n):
        for y in range(n):
            for w in range(n):
                if _lift(table, table[x][y], w, left=True) != _lift(table, table[y][w], x, left=False):
                    witness = (names[x], names[y], names[w])
                    break
            if witness:
                break
        if witness:
            break
    report.add("x⊙(y⊙w) = (x⊙y)⊙w", witness)
    report.add("x'' = x", first_witness(p[p] != np.arange(n), names))
    # Rxyz ⟹ R x z' y'
    flipped = R[:, p, :][:, :, p].transpose(0, 2, 1)
    report.add("z ∈ x⊙y ⟹ y' ∈ x⊙z'", first_witness(R & ~flipped, names))
    report.add("x⊙x = ↑x", first_witness(
        np.array([table[x][x] != P.up(x) for x in range(n)]), names
    ))
    return report


def relevant_algebra(Y: RelevantSpace) -> FiniteAlgebra:
    """Up-sets of Y with ∩, ∪, ⊠, ⇒, unit I and ¬U = {x : x' ∉ U}."""
    family = list(up_sets(Y.poset))
    k = len(family)
    check_carrier_size(k, "relevant algebra")
    where = {U: i for i, U in enumerate(family)}

    def lookup(U, what):
        if U not in where:
            raise OracleMismatch(f"{what} on {Y.name}^*", "an up-set", Y.subset_names(U))
        return where[U]

    meet = np.array([[where[U & V] for V in family] for U in family], dtype=np.intp)
    join = np.array([[where[U | V] for V in family] for U in family], dtype=np.intp)
    mult = np.array([[lookup(Y.box(U, V), "⊠") for V in family] for U in family], dtype=np.intp)
    arrow = np.array([[lookup(Y.arrow(U, V), "⇒") for V in family] for U in family], dtype=np.intp)
    neg = np.array([lookup(Y.negation(U), "¬") for U in family], dtype=np.intp)
    A = FiniteAlgebra(
        FinitePoset.from_leq([Y.subset_names(U) for U in family], inclusion_order(family)),
        meet,
        join,
        mult=mult,
        arrow=arrow,
        unit=lookup(Y.I, "I"),
        neg=neg,
        constants={"bot": where[0], "top": where[Y.poset.everything]},
        profile=Profile.SUGIHARA_BOUNDED,
        name=f"{Y.name}^*",
    )
    validate(A).raise_if_failed()
    logger.info(f"relevant_algebra({Y.name}): {k} up-sets")
    return A


@dataclass(frozen=True)
class Reflected:
    """X^⋈ together with where each point came from."""

    space: RelevantSpace
    base: StructuredSpace
    mirrored: tuple[int, ...]

    def point(self, x: int, negative: bool = False) -> int:
        """Index of x, or of -x, in the reflected carrier."""
        if not negative or self.base.in_designated(x):
            return x
        return self.base.n + self.mirrored.index(x)

    def origin(self, i: int) -> tuple[int, bool]:
        if i < self.base.n:
            return i, False
        return self.mirrored[i - self.base.n], True


def _reflect(X: StructuredSpace) -> Reflected:
    if X.flavor is not Flavor.SUGIHARA_UNPOINTED:
        raise SignatureError(f"reflect_space needs an unpointed Sugihara space, got {X.flavor.value}")
    n = X.n
    mirrored = tuple(x for x in range(n) if not X.in_designated(x))
    total = n + len(mirrored)
    check_carrier_size(total, "reflected space")
    base = [(x, False) for x in range(n)] + [(x, True) for x in mirrored]
    L = X.leq
    comp = L | L.T

    leq = np.zeros((total, total), dtype=bool)
    for i, (x, nx) in enumerate(base):
        for j, (y, ny) in enumerate(base):
            if not nx and not ny:
                leq[i, j] = L[x, y]
            elif nx and ny:
                leq[i, j] = L[y, x]
            elif nx:
                leq[i, j] = comp[x, y]

    prime = list(range(total))
    for k, x in enumerate(mirrored):
        prime[x], prime[n + k] = n + k, x
    absolute = [x for x, _ in base]
    names = list(X.names) + [f"-{X.names[x]}" for x in mirrored]
    poset = FinitePoset.from_leq(names, leq)

    def join(i, j):
        above = [k for k in range(total) if leq[i, k] and leq[j, k]]
        least = [k for k in above if all(leq[k, m] for m in above)]
        return least[0] if least else None

    def product(i, j):
        both_in_x = i < n and j < n
        if both_in_x or not (leq[i, j] or leq[j, i]):
            return join(i, j)
        ai, aj = absolute[i], absolute[j]
        if ai != aj and L[ai, aj]:
            return j
        if ai != aj and L[aj, ai]:
            return i
        if ai == aj:
            return i if leq[i, j] else j
        return None

    R = np.zeros((total, total, total), dtype=bool)
    for i in range(total):
        for j in range(total):
            k = product(i, j)
            if k is not None:
                R[i, j] = leq[k]
    Y = RelevantSpace(poset, R, prime, bits_of(range(n)), name=f"{X.name}^refl")
    validate_relevant(Y).raise_if_failed()
    return Reflected(Y, X, mirrored)


def reflect_space(X: StructuredSpace) -> RelevantSpace:
    """X^⋈ = X ∪ -D^∁ with the extended order, the partial product's R and I = X."""
    Y = _reflect(X).space
    logger.info(f"reflect_space({X.name}): {Y.n} points")
    return Y


def project_space(Y: RelevantSpace) -> StructuredSpace:
    """Y_⋈: the subposet on I with D the fixed points of '."""
    keep = members(Y.I)
    X = StructuredSpace(
        Y.poset.subposet(keep),
        bits_of(k for k, x in enumerate(keep) if Y.prime[x] == x),
        flavor=Flavor.SUGIHARA_UNPOINTED,
        name=f"{Y.name}_proj",
    )
    validate_space(X).raise_if_failed()
    return X


def relevant_iso_report(phi: SpaceMap) -> ValidationReport:
    """Bijection preserving and reflecting ≤, R, ' and I."""
    X, Y = phi.source, phi.target
    report = ValidationReport(f"{X.name} ≅ {Y.name}")
    report.check("bijective", phi.is_bijective, (X.name,))
    if not phi.is_bijective:
        return report
    h = np.asarray(phi.mapping, dtype=np.intp)
    report.add("order embedding", first_witness(X.leq != Y.leq[h[:, None], h[None, :]], X.names))
    report.add("R preserved and reflected", first_witness(
        X.R != Y.R[h[:, None, None], h[None, :, None], h[None, None, :]], X.names
    ))
    report.add("φ(x') = φ(x)'", first_witness(h[X.prime] != Y.prime[h], X.names))
    report.check("φ[I] = I", phi.image(X.I) == Y.I, (X.subset_names(X.I),))
    return report


def relevant_map_report(phi: SpaceMap) -> ValidationReport:
    """Isotone, R-preserving, both back conditions, ' and I."""
    X, Y = phi.source, phi.target
    report = ValidationReport(f"{X.name} → {Y.name} (relevant map)")
    h = np.asarray(phi.mapping, dtype=np.intp)
    names = X.names
    report.add("isotone", first_witness(X.leq & ~Y.leq[h[:, None], h[None, :]], names))
    report.add("Rxyz ⟹ Rφxφyφz", first_witness(
        X.R & ~Y.R[h[:, None, None], h[None, :, None], h[None, None, :]], names
    ))
    RX = X.R.astype(np.int64)
    up_to_image = Y.leq[:, h].astype(np.int64)       # [y, u] : y ≤ φu
    image_below = Y.leq[h, :].astype(np.int64)       # [v, z] : φv ≤ z
    # R_Y x y φz ⟹ ∃u,v: R_X uvz, x ≤ φu, y ≤ φv
    back_left = np.einsum("au,bv,uvz->abz", up_to_image, up_to_image, RX) > 0
    need = Y.R[:, :, h]
    bad = need & ~back_left
    witness = None
    if bad.any():
        a, b, z = (int(i) for i in np.argwhere(bad)[0])
        witness = (Y.names[a], Y.names[b], names[z])
    report.add("Rxyφz ⟹ ∃u,v (Ruvz, x ≤ φu, y ≤ φv)", witness)
    # R_Y φx y z ⟹ ∃u,v: R_X xuv, y ≤ φu, φv ≤ z
    back_right = np.einsum("xuv,bu,vc->xbc", RX, up_to_image, image_below) > 0
    bad = Y.R[h, :, :] & ~back_right
    witness = None
    if bad.any():
        x, b, c = (int(i) for i in np.argwhere(bad)[0])
        witness = (names[x], Y.names[b], Y.names[c])
    report.add("Rφxyz ⟹ ∃u,v (Rxuv, y ≤ φu, φv ≤ z)", witness)
    report.add("φ(x') = φ(x)'", first_witness(h[X.prime] != Y.prime[h], names))
    report.check("φ⁻¹[I] = I", phi.preimage(Y.I) == X.I, (X.subset_names(X.I),))
    return report


def urquhart_dual_hom(h: Morphism) -> SpaceMap:
    """h_*(x) = h⁻¹[x], from the Urquhart dual of the target to that of the source."""
    A, B = _bounded(h.source), _bounded(h.target)
    fa, fb = prime_filters(A), prime_filters(B)
    mapping = tuple(
        fa.index(bits_of(i for i in range(A.n) if y >> h.mapping[i] & 1)) for y in fb
    )
    phi = SpaceMap(urquhart_dual(B), urquhart_dual(A), mapping, "relevant")
    relevant_map_report(phi).raise_if_failed()
    return phi


def _relevant_invariants(Y: RelevantSpace) -> list[tuple]:
    P = Y.poset
    return [
        (
            popcount(P.up(i)),
            popcount(P.down(i)),
            int(Y.prime[i]) == i,
            bool(Y.I >> i & 1),
            int(Y.R[i].sum()),
        )
        for i in range(Y.n)
    ]


def find_relevant_isomorphism(X: RelevantSpace, Y: RelevantSpace) -> SpaceMap | None:
    """First isomorphism of relevant spaces, or None."""

    def extra_ok(assign, x):
        done = np.flatnonzero(assign >= 0)
        v = assign[x]
        px = int(X.prime[x])
        if assign[px] >= 0 and assign[px] != Y.prime[v]:
            return False
        sub = assign[done]
        rx = X.R[np.ix_(done, done, done)]
        ry = Y.R[np.ix_(sub, sub, sub)]
        return bool(np.array_equal(rx, ry))

    for mapping in search_bijections(X, Y, extra_ok, _relevant_invariants):
        phi = SpaceMap(X, Y, mapping, "relevant")
        if relevant_iso_report(phi).ok:
            logger.debug(f"Relevant isomorphism {X.name} → {Y.name} found")
            return phi
    return None


def reflection_identity(X: StructuredSpace) -> SpaceMap:
    """The identity X → (X^⋈)_⋈, checked as an isomorphism."""
    back = project_space(reflect_space(X))
    phi = SpaceMap(X, back, tuple(range(X.n)), "sugihara")
    space_iso_report(phi).raise_if_failed()
    return phi


def gamma(A: FiniteAlgebra) -> SpaceMap:
    """Γ(x) = x for x ∈ I(A) and -(x') otherwise, onto the reflected I(A)."""
    A = _bounded(A)
    Y = urquhart_dual(A)
    X = project_space(Y)
    refl = _reflect(X)
    keep = members(Y.I)
    mapping = []
    for x in range(Y.n):
        if Y.I >> x & 1:
            mapping.append(refl.point(keep.index(x)))
        else:
            mapping.append(refl.point(keep.index(int(Y.prime[x])), negative=True))
    phi = SpaceMap(Y, refl.space, tuple(mapping), "relevant")
    relevant_iso_report(phi).raise_if_failed()
    return phi


def theta(Y: RelevantSpace) -> SpaceMap:
    """θ(x) = x on I and θ(-x) = x', from (Y_⋈)^⋈ back to Y."""
    X = project_space(Y)
    refl = _reflect(X)
    keep = members(Y.I)
    mapping = []
    for i in range(refl.space.n):
        x, negative = refl.origin(i)
        mapping.append(int(Y.prime[keep[x]]) if negative else keep[x])
    phi = SpaceMap(refl.space, Y, tuple(mapping), "relevant")
    relevant_iso_report(phi).raise_if_failed()
    return phi


def reflect_hom(phi: SpaceMap) -> SpaceMap:
    """φ^⋈: x ↦ φ(x) on X and -x ↦ -φ(x) on the mirrored copies."""
    src, dst = _reflect(phi.source), _reflect(phi.target)
    mapping = []
    for i in range(src.space.n):
        x, negative = src.origin(i)
        mapping.append(dst.point(phi.mapping[x], negative=negative))
    lifted = SpaceMap(src.space, dst.space, tuple(mapping), "relevant")
    relevant_map_report(lifted).raise_if_failed()
    return lifted


def project_hom(phi: SpaceMap) -> SpaceMap:
    """φ_⋈, the restriction of a relevant map to I."""
    X, Y = phi.source, phi.target
    keep_x, keep_y = members(X.I), members(Y.I)
    mapping = tuple(keep_y.index(phi.mapping[x]) for x in keep_x)
    restricted = SpaceMap(project_space(X), project_space(Y), mapping, "sugihara")
    kleene_morphism_report(restricted).raise_if_failed()
    return restricted


def theta_naturality(phi: SpaceMap) -> ValidationReport:
    """φ ∘ θ_X = θ_Y ∘ (φ_⋈)^⋈ for a relevant map φ: X → Y."""
    left = [phi.mapping[v] for v in theta(phi.source).mapping]
    lifted = reflect_hom(project_hom(phi))
    ty = theta(phi.target)
    right = [ty.mapping[v] for v in lifted.mapping]
    report = ValidationReport(f"θ naturality for {phi.source.name} → {phi.target.name}")
    bad = [i for i, (a, b) in enumerate(zip(left, right)) if a != b]
    report.check("φ∘θ = θ∘(φ_⋈)^⋈", not bad, (lifted.source.names[bad[0]],) if bad else ())
    return report
