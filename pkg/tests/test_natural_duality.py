"""
Unit tests for the hom-dual of Sugihara monoids
Run with: python -m pytest tests/test_natural_duality.py -v
"""
import os
import sys
import pytest
from hypothesis import given, settings, strategies as st

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from core.builtins import builtin  # noqa: E402
from core import natural_duality as nd  # noqa: E402
from core.spaces import Flavor, validate_space  # noqa: E402


class TestAlterEgo:
    """Test the three-element alter ego"""

    def test_pointed_space(self):
        X = nd.alter_ego_space(True)
        assert X.name == "L~"
        assert X.names[X.top] == "0"
        assert X.subset_names(X.designated) == "{-1,1}"
        assert not X.Q[0, 2] and not X.Q[2, 0]
        assert validate_space(X).ok

    def test_unpointed_space(self):
        X = nd.alter_ego_space(False)
        assert X.name == "K~"
        assert X.top is None
        assert X.flavor is Flavor.KLEENE

    def test_algebras(self):
        assert nd.alter_ego_algebra(False).name == "L3"
        assert nd.alter_ego_algebra(True).name == "K3"


class TestHomDual:
    """Test A₊ and its structure maps"""

    def test_s3_points(self):
        X = nd.dw_dual(builtin("S3"))
        assert X.names == ("h:-0+", "h:000")
        assert X.names[X.top] == "h:000"
        assert X.designated == 0
        assert X.leq[0, 1]
        assert X.name == "S3_+"

    def test_s2_points(self):
        X = nd.dw_dual(builtin("S2"))
        assert X.names == ("h:-+", "h:00")
        assert X.subset_names(X.designated) == "{h:-+}"

    def test_e_points(self):
        X = nd.dw_dual(builtin("E"))
        assert X.n == 4
        assert bin(X.designated).count("1") == 1
        assert X.flavor is Flavor.SUGIHARA_POINTED

    def test_bounded_dual_is_unpointed(self):
        X = nd.dw_dual(builtin("E_bot"))
        assert X.n == 3
        assert X.top is None
        assert X.flavor is Flavor.SUGIHARA_UNPOINTED

    def test_rejects_non_sugihara(self):
        from core.exceptions import SignatureError

        with pytest.raises(SignatureError):
            nd.dw_dual(builtin("E_neg"))

    @pytest.mark.parametrize("name", ["S2", "S3", "S4", "S5", "E", "E_bot"])
    def test_xi_and_psi_are_isomorphisms(self, name):
        A = builtin(name)
        assert nd.xi(A).is_bijective
        assert nd.psi(A).is_bijective

    def test_i_space_of_e(self):
        X = nd.i_space(builtin("E"))
        assert X.n == 4
        assert X.name == "I(E)"

    def test_hom_from_improper_filter(self):
        A = builtin("S3")
        h = nd.hom_from_filter(A, A.poset.everything)
        assert h.mapping == (1, 1, 1)

    def test_hom_from_filter_inverts_psi(self):
        A = builtin("E")
        vectors = nd.dw_points(A)
        family = nd.i_filters(A)
        phi = nd.psi(A)
        for i, v in enumerate(vectors):
            h = nd.hom_from_filter(A, family[phi.mapping[i]])
            assert h.mapping == tuple(int(x) + 1 for x in v)


class TestEncodedMaps:
    """Test the maps C_{U,V}"""

    def test_not_covering(self):
        from core.exceptions import NotCovering

        X = nd.dw_dual(builtin("S3"))
        with pytest.raises(NotCovering):
            nd.c_uv(X, 0, 0b10)

    def test_values(self):
        X = nd.dw_dual(builtin("S3"))
        top = 1 << X.top
        enc = nd.c_uv(X, X.poset.everything, top)
        assert enc.values == (1, 0)
        assert enc.name == "C:+0"
        assert enc.criterion and enc.morphism
        assert nd.decompose(enc.values) == (0b11, 0b10)

    @given(st.data())
    @settings(max_examples=60, deadline=None)
    def test_criterion_matches_direct_check(self, data):
        X = nd.dw_dual(builtin("E"))
        full = X.poset.everything
        U = data.draw(st.integers(min_value=0, max_value=full))
        V = data.draw(st.integers(min_value=0, max_value=full)) | (full & ~U)
        enc = nd.c_uv(X, U, V)
        assert enc.criterion == enc.morphism
        assert enc.report.results[-1].passed


class TestPlusAlgebra:
    """Test X⁺ and the evaluation isomorphisms"""

    def test_plus_of_s3_dual(self):
        from core.algebra import Profile

        A = nd.plus_algebra(nd.dw_dual(builtin("S3")))
        assert A.n == 3
        assert A.profile is Profile.SUGIHARA
        assert A.name == "S3_+^+"

    def test_plus_of_unpointed_is_bounded(self):
        from core.algebra import Profile

        A = nd.plus_algebra(nd.dw_dual(builtin("E_bot")))
        assert A.profile is Profile.SUGIHARA_BOUNDED
        assert A.names[A.bot] == "C:---"
        assert A.names[A.top] == "C:+++"

    @pytest.mark.parametrize("name", ["S2", "S3", "S4", "S5", "S6", "S7", "S8", "E", "E_bot"])
    def test_evaluation_iso(self, name):
        A = builtin(name)
        assert nd.evaluation_iso(A).validate_isomorphism().ok

    @pytest.mark.parametrize("name", ["S3", "E", "E_bot"])
    def test_evaluation_space_iso(self, name):
        X = nd.dw_dual(builtin(name))
        assert nd.evaluation_space_iso(X).is_bijective

    def test_mu_is_isomorphism(self):
        m = nd.mu(nd.dw_dual(builtin("E")))
        assert m.validate_isomorphism().ok

    def test_rejects_esakia_space(self):
        from core.esakia import dual_space
        from core.exceptions import SignatureError

        with pytest.raises(SignatureError):
            nd.plus_algebra(dual_space(builtin("E_neg")))


class TestFunctoriality:
    """Test the dual functors on morphisms"""

    def test_plus_hom_of_identity(self):
        from core.homs import identity

        phi = nd.plus_hom(identity(builtin("E")))
        assert phi.mapping == tuple(range(4))

    def test_plus_hom_of_collapse(self):
        from core.homs import enumerate_homs

        S3 = builtin("S3")
        for h in enumerate_homs(S3, S3):
            nd.plus_hom(h)

    def test_space_plus_hom_of_identity(self):
        from core.spaces import identity_map

        X = nd.dw_dual(builtin("E"))
        m = nd.space_plus_hom(identity_map(X))
        assert m.mapping == tuple(range(8))

    def test_evaluation_is_natural_for_a_surjection(self):
        from core.homs import compose, enumerate_homs

        S5, S3 = builtin("S5"), builtin("S3")
        h = next(h for h in enumerate_homs(S5, S3) if len(set(h.mapping)) == S3.n)
        phi = nd.plus_hom(h)
        assert len(set(phi.mapping)) == phi.source.n
        m = nd.space_plus_hom(phi)
        assert len(set(m.mapping)) == m.target.n
        left = compose(m, nd.evaluation_iso(S5))
        right = compose(nd.evaluation_iso(S3), h)
        assert left.mapping == right.mapping

    def test_plus_hom_reverses_composition(self):
        from core.homs import compose, enumerate_homs
        from core.spaces import compose_maps

        S7, S5, S3 = builtin("S7"), builtin("S5"), builtin("S3")
        h = next(h for h in enumerate_homs(S7, S5) if len(set(h.mapping)) == S5.n)
        g = next(g for g in enumerate_homs(S5, S3) if len(set(g.mapping)) == S3.n)
        whole = nd.plus_hom(compose(g, h))
        parts = compose_maps(nd.plus_hom(h), nd.plus_hom(g))
        assert whole.mapping == parts.mapping


class TestConvexPrimeSubalgebras:
    """Test convex prime subalgebras of odd Sugihara monoids"""

    def test_s3(self):
        family = nd.convex_prime_subalgebras(builtin("S3"))
        assert family.names() == ["{0}", "{-1,0,1}"]

    def test_s5(self):
        assert len(nd.convex_prime_subalgebras(builtin("S5"))) == 3

    @pytest.mark.parametrize("name", ["S4", "E"])
    def test_even_rejected(self, name):
        from core.exceptions import NotOdd

        with pytest.raises(NotOdd):
            nd.convex_prime_subalgebras(builtin(name))

    def test_witness_s5(self):
        witness, report = nd.convex_prime_witness(builtin("S5"))
        assert report.ok
        assert witness == {"{0}": "^0", "{-1,0,1}": "^-1", "{-2,-1,0,1,2}": "^-2"}


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
