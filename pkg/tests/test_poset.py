"""
Unit tests for finite posets, bitsets and up-set families
Run with: python -m pytest tests/test_poset.py -v
"""
import os
import sys
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from core.poset import FinitePoset, bits_of, members, poset_from_covers, up_sets  # noqa: E402


@st.composite
def random_posets(draw, max_size=6):
    """Posets from random DAGs whose edges point from lower to higher labels."""
    n = draw(st.integers(min_value=1, max_value=max_size))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    names = [f"p{i}" for i in range(n)]
    return poset_from_covers(names, [(names[i], names[j]) for i, j in chosen])


def _diamond():
    return poset_from_covers(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


class TestBitsets:
    """Test bitset helpers"""

    def test_bits_and_members(self):
        from core.poset import popcount

        bits = bits_of([0, 2, 5])
        assert bits == 0b100101
        assert members(bits) == [0, 2, 5]
        assert popcount(bits) == 3

    @given(st.sets(st.integers(min_value=0, max_value=63)))
    def test_members_inverts_bits_of(self, indices):
        assert members(bits_of(indices)) == sorted(indices)


class TestFinitePoset:
    """Test order construction and queries"""

    def test_from_covers_closes_transitively(self):
        P = poset_from_covers(["a", "b", "c"], [("a", "b"), ("b", "c")])
        assert P.le(P.index("a"), P.index("c"))
        assert not P.le(P.index("c"), P.index("a"))
        assert P.least() == 0
        assert P.greatest() == 2

    def test_cycle_detected(self):
        from core.exceptions import CycleDetected

        with pytest.raises(CycleDetected) as info:
            poset_from_covers(["a", "b"], [("a", "b"), ("b", "a")])
        assert info.value.cycle[0] == info.value.cycle[-1]

    def test_unknown_name(self):
        from core.exceptions import UnknownName

        with pytest.raises(UnknownName):
            poset_from_covers(["a"], [("a", "z")])

    def test_from_leq_rejects_non_orders(self):
        from core.exceptions import NotAPartialOrder

        with pytest.raises(NotAPartialOrder, match="antisymmetric"):
            FinitePoset.from_leq(["a", "b"], [[1, 1], [1, 1]])
        with pytest.raises(NotAPartialOrder, match="reflexive"):
            FinitePoset.from_leq(["a", "b"], [[0, 0], [0, 1]])
        with pytest.raises(NotAPartialOrder, match="transitive"):
            FinitePoset.from_leq(["a", "b", "c"], [[1, 1, 0], [0, 1, 1], [0, 0, 1]])

    def test_carrier_limit(self, mocker):
        from core import config
        from core.exceptions import CarrierTooLarge

        mocker.patch.object(config, "get_max_carrier", return_value=3)
        with pytest.raises(CarrierTooLarge):
            poset_from_covers(list("abcd"), [])

    def test_diamond_queries(self):
        P = _diamond()
        a, b = P.index("a"), P.index("b")
        assert not P.comparable(a, b)
        assert P.minimal() == 1 << P.index("0")
        assert P.maximal() == 1 << P.index("1")
        assert P.covers() == sorted([(0, 1), (0, 2), (1, 3), (2, 3)])
        assert P.subset_names(P.up(a)) == "{a,1}"
        assert not P.is_chain(P.everything)
        assert P.is_chain(P.up(a))

    def test_subposet(self):
        P = _diamond()
        Q = P.subposet([P.index("a"), P.index("b")])
        assert Q.names == ("a", "b")
        assert not Q.leq[0, 1]

    def test_is_forest(self):
        from core.poset import is_forest

        vee = poset_from_covers(["x", "y", "z"], [("x", "z"), ("y", "z")])
        wedge = poset_from_covers(["x", "y", "z"], [("z", "x"), ("z", "y")])
        assert is_forest(vee)
        assert not is_forest(wedge)

    def test_canonical_key_identifies_isomorphic_orders(self):
        P = poset_from_covers(["a", "b", "c"], [("a", "b"), ("a", "c")])
        Q = poset_from_covers(["x", "y", "z"], [("z", "x"), ("z", "y")])
        R = poset_from_covers(["a", "b", "c"], [("a", "b"), ("b", "c")])
        assert P.canonical_key() == Q.canonical_key()
        assert P.canonical_key() != R.canonical_key()

    def test_canonical_key_respects_marks(self):
        R = poset_from_covers(["a", "b", "c"], [("a", "b"), ("b", "c")])
        assert R.canonical_key(marked=(0,)) != R.canonical_key(marked=(1,))

    @given(random_posets())
    @settings(max_examples=40, deadline=None)
    def test_order_laws(self, P):
        leq = P.leq
        assert np.all(np.diag(leq))
        assert not np.any(leq & leq.T & ~np.eye(P.n, dtype=bool))
        composed = (leq.astype(int) @ leq.astype(int)) > 0
        assert np.array_equal(composed, leq)

    @given(random_posets())
    @settings(max_examples=40, deadline=None)
    def test_covers_generate_the_order(self, P):
        rebuilt = poset_from_covers(P.names, [(P.names[i], P.names[j]) for i, j in P.covers()])
        assert rebuilt == P

    @given(random_posets())
    @settings(max_examples=40, deadline=None)
    def test_linear_extension_respects_order(self, P):
        position = {x: k for k, x in enumerate(P.linear_extension())}
        for i in range(P.n):
            for j in range(P.n):
                if i != j and P.le(i, j):
                    assert position[i] < position[j]


class TestUpSets:
    """Test up-set enumeration and the Heyting arrow"""

    def test_diamond_up_sets(self):
        P = _diamond()
        family = up_sets(P)
        assert len(family) == 6
        assert family[0] == 0
        assert family[-1] == P.everything
        assert list(family) == sorted(family)

    @given(random_posets(max_size=5), st.data())
    @settings(max_examples=40, deadline=None)
    def test_up_sets_are_exactly_the_upward_closed_sets(self, P, data):
        family = up_sets(P)
        assert all(P.is_upset(U) for U in family)
        bits = data.draw(st.integers(min_value=0, max_value=P.everything))
        assert (bits in family) == P.is_upset(bits)
        assert P.upset_closure(bits) in family
        assert P.is_downset(P.downset_closure(bits))

    @given(random_posets(max_size=5), st.data())
    @settings(max_examples=40, deadline=None)
    def test_heyting_arrow_is_residual(self, P, data):
        from core.poset import heyting_arrow_upsets

        family = list(up_sets(P))
        U = data.draw(st.sampled_from(family))
        V = data.draw(st.sampled_from(family))
        W = heyting_arrow_upsets(P, U, V)
        assert W in family
        for X in family:
            assert (X & U & ~V == 0) == (X & ~W == 0)

    def test_heyting_arrow_rejects_non_up_sets(self):
        from core.exceptions import NotAnUpSet
        from core.poset import heyting_arrow_upsets

        P = _diamond()
        with pytest.raises(NotAnUpSet):
            heyting_arrow_upsets(P, 1 << P.index("0"), 0)


class TestPrimeFilters:
    """Test prime filters of lattices"""

    def test_diamond_prime_filters(self):
        from core.algebra import lattice_tables
        from core.poset import prime_filters

        P = _diamond()

        class Lattice:
            poset = P
            join = lattice_tables(P)[1]

        plain = prime_filters(Lattice)
        assert plain.names() == ["{a,1}", "{b,1}"]
        generalized = prime_filters(Lattice, generalized=True)
        assert P.everything in generalized
        assert len(generalized) == 3


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
