"""Tests for mapping-cone homotopy and stable classification mod 12."""

import itertools
from math import gcd

import pytest

from sumfactor.cones import (
    ConeClass,
    ConeComplex,
    cone_homotopy_equiv,
    cone_stable_equiv,
    cone_witness_pairs,
    minus_orbit,
)
from sumfactor.errors import DomainError

ALL = [ConeClass(a) for a in range(12)]


class TestEquivalences:
    def test_examples(self):
        assert cone_homotopy_equiv(ConeClass(1), ConeClass(11))
        assert not cone_homotopy_equiv(ConeClass(1), ConeClass(5))
        assert cone_homotopy_equiv(ConeClass(0), ConeClass(0))
        assert cone_stable_equiv(ConeClass(1), ConeClass(5))
        assert not cone_stable_equiv(ConeClass(2), ConeClass(3))
        assert cone_stable_equiv(ConeClass(7), ConeClass(7))

    def test_equivalence_relations_exhaustive(self):
        for rel in (cone_homotopy_equiv, cone_stable_equiv):
            for a in ALL:
                assert rel(a, a)
            for a, b in itertools.product(ALL, ALL):
                assert rel(a, b) == rel(b, a)
            for a, b, c in itertools.product(ALL, ALL, ALL):
                if rel(a, b) and rel(b, c):
                    assert rel(a, c)

    def test_homotopy_implies_stable_all_pairs(self):
        for a, b in itertools.product(ALL, ALL):
            if cone_homotopy_equiv(a, b):
                assert cone_stable_equiv(a, b)

    def test_normalization(self):
        assert ConeClass.of(13) == ConeClass(1)
        assert ConeClass.of(-1) == ConeClass(11)
        with pytest.raises(DomainError):
            ConeClass(12)


class TestWitnessPairs:
    def brute_force(self):
        out = set()
        for a in range(12):
            for b in range(a + 1, 12):
                ca, cb = ConeClass(a), ConeClass(b)
                if cone_stable_equiv(ca, cb) and not cone_homotopy_equiv(ca, cb):
                    out.add((a, b))
        return out

    def test_brute_force_filter(self):
        # the 66 unordered pairs reduce to the gcd-1 crossings of {1,11} x {5,7}
        assert self.brute_force() == {(1, 5), (1, 7), (5, 11), (7, 11)}

    def test_reported_up_to_sign_orbits(self):
        pairs = cone_witness_pairs()
        assert pairs == ((1, 5),)
        brute_orbits = {
            tuple(sorted((min(minus_orbit(ConeClass(a))), min(minus_orbit(ConeClass(b))))))
            for a, b in self.brute_force()
        }
        assert set(pairs) == brute_orbits

    def test_no_other_gcd_class_contributes(self):
        for a, b in cone_witness_pairs():
            assert gcd(a, 12) == 1 and gcd(b, 12) == 1

    def test_excludes_sign_equivalent_pair(self):
        assert (1, 11) not in cone_witness_pairs()


class TestConeComplex:
    def test_cells(self):
        c = ConeComplex(ConeClass(1))
        assert c.dim == 8
        assert c.euler_char == 3
