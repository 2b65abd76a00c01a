"""
Unit tests for the twist constructions over bRS-algebras
Run with: python -m pytest tests/test_twist.py -v
"""
import os
import sys
import pytest

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from core.algebra import Profile, validate  # noqa: E402
from core.builtins import builtin  # noqa: E402
from core import twist  # noqa: E402


SIGMA_E_NEG = {"(a,t)", "(b,t)", "(c,t)", "(f,t)", "(t,t)", "(f,c)", "(t,c)", "(t,a)"}
BOWTIE_E_NEG = {"(a,t)", "(b,t)", "(f,t)", "(t,a)", "(t,b)", "(t,f)", "(c,f)", "(f,c)"}


class TestCarriers:
    """Test the two pair carriers"""

    def test_sigma_carrier(self):
        assert twist.sigma_carrier(builtin("E_neg")).name_set() == SIGMA_E_NEG

    def test_bowtie_carrier(self):
        assert twist.bowtie_carrier(builtin("E_neg")).name_set() == BOWTIE_E_NEG

    def test_carrier_difference(self):
        only_sigma, only_bowtie = twist.carrier_difference(builtin("E_neg"))
        assert only_sigma == {"(c,t)", "(t,t)", "(t,c)"}
        assert only_bowtie == {"(t,b)", "(t,f)", "(c,f)"}
        assert len(only_sigma | only_bowtie) == 6

    def test_carriers_need_boolean_constant(self):
        from core.exceptions import SignatureError

        with pytest.raises(SignatureError):
            twist.sigma_carrier(builtin("S3"))


class TestBowtieDown:
    """Test the negative cone functor"""

    def test_e(self):
        B = twist.bowtie_down(builtin("E"))
        assert B.name == "E_neg"
        assert B.profile is Profile.BRSA
        assert B.n == 5
        assert B.names[B.f] == "(0,-1)"

    def test_odd_chain_has_f_equal_t(self):
        B = twist.bowtie_down(builtin("S3"))
        assert B.n == 2
        assert B.f == B.t

    def test_bounded_input_gives_bga(self):
        B = twist.bowtie_down(builtin("E_bot"))
        assert B.profile is Profile.BGA
        assert B.names[B.bot] == "(-2,-2)"

    def test_rejects_non_sugihara(self):
        from core.exceptions import SignatureError

        with pytest.raises(SignatureError):
            twist.bowtie_down(builtin("E_neg"))


class TestTwistMonoids:
    """Test the Sugihara monoids rebuilt on pairs"""

    def test_sigma_monoid(self):
        S = twist.sigma_monoid(builtin("E_neg"))
        assert S.profile is Profile.SUGIHARA
        assert S.n == 8
        assert validate(S).ok
        assert S.names[S.t] == "(t,t)"

    def test_bowtie_up(self):
        U = twist.bowtie_up(builtin("E_neg"))
        assert U.n == 8
        assert validate(U).ok
        assert U.names[U.t] == "(t,f)"
        swap = {U.names[i]: U.names[int(U.neg[i])] for i in range(U.n)}
        assert swap["(c,f)"] == "(f,c)"
        assert swap["(a,t)"] == "(t,a)"

    def test_bowtie_up_of_bga_is_bounded(self):
        B = twist.bowtie_down(builtin("E_bot"))
        U = twist.bowtie_up(B)
        assert U.profile is Profile.SUGIHARA_BOUNDED
        assert U.names[U.bot] == "((-2,-2),(0,1))"

    @pytest.mark.parametrize("name", ["S2", "S3", "S4", "S5", "S6", "S7", "S8", "E"])
    def test_unit_iso(self, name):
        A = builtin(name)
        iso = twist.unit_iso(A)
        assert iso.validate_isomorphism().ok
        assert iso.target.n == A.n

    def test_counit_iso(self):
        B = builtin("E_neg")
        iso = twist.counit_iso(B)
        assert iso.validate_isomorphism().ok
        assert iso.by_name()["t"] == "(t,f)"
        assert iso.by_name()["f"] == "(f,t)"


class TestDelta:
    """Test the isomorphism between the two pair monoids"""

    def test_delta_on_e_neg(self):
        B = builtin("E_neg")
        d = twist.delta(B)
        assert d.validate_isomorphism().ok
        by_name = d.by_name()
        assert by_name["(t,f)"] == "(t,t)"
        assert by_name["(t,b)"] == "(t,c)"
        assert by_name["(a,t)"] == "(a,t)"

    def test_delta_report_passes(self):
        _, report = twist.delta_report(builtin("E_neg"))
        assert report.ok
        assert any(r.name.startswith("δ⁻¹") for r in report.results)

    def test_transport(self):
        B = builtin("E_neg")
        assert twist.check_transport(B).ok
        up = twist.bowtie_up(B)
        assert (twist.transport_product(B) == up.mult).all()
        assert (twist.transport_residual(B) == up.arrow).all()


class TestLiftedMorphisms:
    """Test functoriality of the constructions"""

    def test_cone_hom_of_identity(self):
        from core.homs import identity

        h = twist.cone_hom(identity(builtin("E")))
        assert h.mapping == tuple(range(5))

    def test_lift_identity(self):
        from core.homs import identity

        B = builtin("E_neg")
        for direction in ("up", "sigma"):
            lifted = twist.lift_hom(identity(B), direction)
            assert lifted.mapping == tuple(range(8))

    def test_lift_every_endomorphism(self):
        from core.homs import enumerate_homs

        B = builtin("E_neg")
        homs = enumerate_homs(B, B)
        assert homs
        for h in homs:
            assert twist.lift_hom(h, "up").validate().ok

    def test_unknown_direction(self):
        from core.exceptions import SignatureError
        from core.homs import identity

        with pytest.raises(SignatureError):
            twist.lift_hom(identity(builtin("E_neg")), "down")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
