"""Brute-force cross-checks of search procedures against exhaustive oracles.

These tests re-derive the library's answers by a second, dumber route:
divisibility by scanning every candidate complement, enumeration by
validating every (group, height) pair, divisor hooks by scanning full
composition tables.
"""

import itertools

from sumfactor import monoidkit as mk
from sumfactor.abgroup import AbelianGroup
from sumfactor.barden import (
    H0,
    INF,
    Height,
    Manifold5,
    consum,
    divides5,
    divisor_pairs,
    enumerate5,
)
from sumfactor.errors import DomainError

from helpers import torsion_groups_up_to


class TestDivides5Oracle:
    def test_exhaustive_against_scan(self):
        # the candidate range is closed under complements of its members:
        # rank and torsion of a complement never exceed the target's
        els = enumerate5(2, 12, INF)
        for n in els:
            for m in els:
                got = divides5(n, m)
                brute = next((L for L in els if consum(n, L) == m), None)
                assert (got is None) == (brute is None), (n, m)
                if got is not None:
                    assert consum(n, got) == m


class TestEnumerate5Oracle:
    def test_completeness_against_validation_scan(self):
        max_rank, max_torsion = 2, 16
        expected = set()
        heights = [Height(k) for k in range(8)] + [INF]
        for torsion in torsion_groups_up_to(max_torsion):
            for rank in range(max_rank + 1):
                h2 = AbelianGroup(rank, torsion.invariant_factors)
                for h in heights:
                    try:
                        expected.add(Manifold5(h2, h))
                    except DomainError:
                        pass
        assert set(enumerate5(max_rank, max_torsion, INF)) == expected

    def test_finite_height_cap(self):
        capped = set(enumerate5(2, 16, Height(1)))
        full = set(enumerate5(2, 16, INF))
        assert capped == {m for m in full if m.height <= Height(1)}


class TestDivisorPairsOracle:
    def test_against_composition_scan(self):
        els = enumerate5(1, 8, INF)
        table = {}
        for a, b in itertools.product(els, els):
            table.setdefault(consum(a, b), set()).add(tuple(sorted((a, b), key=Manifold5.sort_key)))
        for m in els:
            got = {tuple(sorted(dc, key=Manifold5.sort_key)) for dc in divisor_pairs(m)}
            assert got == table.get(m, set()), m


class TestHookAgainstTableScan:
    def test_stable_wedge_divisors_complete(self):
        spec = mk.builtin_specs()["stable-wedge"]
        els = mk._elements(spec, 6)
        table = {}
        for a, b in itertools.product(els, els):
            key = tuple(sorted((a, b)))
            table.setdefault(spec.compose(a, b), set()).add(key)
        for x in els:
            got = {tuple(sorted(dc)) for dc in spec.divisors(x)}
            assert got == table.get(x, set()), x

    def test_wall_type_divisors_complete(self):
        spec = mk.builtin_specs()["wall-type"]
        els = mk._elements(spec, 5)
        table = {}
        for a, b in itertools.product(els, els):
            key = tuple(sorted((a, b), key=spec.sort_key))
            table.setdefault(spec.compose(a, b), set()).add(key)
        for x in els:
            got = {tuple(sorted(dc, key=spec.sort_key)) for dc in spec.divisors(x)}
            assert got == table.get(x, set()), x

    def test_sign_collapse_divisors_complete(self):
        spec = mk.builtin_specs()["remark4"]
        els = mk._elements(spec, 20)
        table = {}
        for a, b in itertools.product(els, els):
            key = tuple(sorted((a, b)))
            table.setdefault(spec.compose(a, b), set()).add(key)
        for x in els:
            got = {tuple(sorted(dc)) for dc in spec.divisors(x)}
            assert got == table.get(x, set()), x

    def test_numeric_divisors_complete(self):
        for name, bound in (("nat-add", 16), ("nat-mult", 16), ("wall-even", 5)):
            spec = mk.builtin_specs()[name]
            els = mk._elements(spec, bound)
            table = {}
            for a, b in itertools.product(els, els):
                key = tuple(sorted((a, b)))
                table.setdefault(spec.compose(a, b), set()).add(key)
            for x in els:
                got = {tuple(sorted(dc)) for dc in spec.divisors(x)}
                assert got == table.get(x, set()), (name, x)


class TestKnownMonoidAnswers:
    def test_nat_mult_factors_uniquely(self):
        assert mk.ufm_check(mk.builtin_specs()["nat-mult"], 30).is_yes

    def test_nat_mult_prime_table(self):
        spec = mk.builtin_specs()["nat-mult"]
        primes = {2, 3, 5, 7, 11}
        for n in range(2, 13):
            verdict = mk.is_prime(spec, n, 12)
            assert verdict.is_yes == (n in primes), n
