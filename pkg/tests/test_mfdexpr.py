"""Tests for manifold descriptors, complexity, thickenings and certificates."""

import random

import pytest

from sumfactor.abgroup import AbelianGroup, cyclic, parse_group
from sumfactor.cones import ConeClass, ConeComplex
from sumfactor.errors import DomainError
from sumfactor.grouppres import (
    CayleyComplex,
    ParameterViolation,
    SphereComplex,
    WedgeComplex,
    metzler_presentation,
    q28_presentations,
)
from sumfactor.mfdexpr import (
    Complexity,
    DimensionMismatch,
    DimensionTooSmall,
    FreeProductDesc,
    InvalidWitnessPair,
    OPAQUE,
    boundary_thickening,
    complexity,
    consum_descriptor,
    descriptor,
    is_sphere_like,
    make_witness,
    parse_descriptor,
    parse_pi1,
    sphere,
    sphere_product,
)


class TestComplexity:
    def test_sphere(self):
        assert complexity(sphere(5)) == Complexity(0, 0, 1)
        assert is_sphere_like(sphere(5))

    def test_sphere_product(self):
        assert complexity(sphere_product(2, 3)) == Complexity(0, 2, 1)

    def test_wu_shape(self):
        wu = descriptor(5, homology={2: cyclic(2)})
        assert complexity(wu) == Complexity(0, 0, 2)
        assert not is_sphere_like(wu)

    def test_kernel_characterization(self):
        rng = random.Random(4)
        for _ in range(200):
            dim = rng.randrange(3, 8)
            hom = {}
            for deg in range(2, dim):
                if rng.random() < 0.4:
                    hom[deg] = AbelianGroup.from_orders(
                        rng.randrange(0, 2), [rng.randrange(2, 9)] * rng.randrange(0, 2)
                    )
            m = descriptor(dim, homology=hom)
            assert (complexity(m) == Complexity(0, 0, 1)) == is_sphere_like(m)


class TestConsum:
    def test_homology_adds(self):
        m = consum_descriptor(sphere_product(2, 3), sphere_product(2, 3))
        assert m.homology_group(2) == parse_group("Z^2")
        assert m.homology_group(3) == parse_group("Z^2")

    def test_sphere_is_neutral(self):
        m = sphere_product(2, 3)
        assert consum_descriptor(m, sphere(5)) == m

    def test_grushko_additivity_example(self):
        d = descriptor(6, pi1=parse_pi1("Z/5+Z/5+Z/5"))
        both = consum_descriptor(d, d)
        assert complexity(both).d == 6
        assert len(both.pi1.factors) == 2  # two indecomposable abelian factors

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            consum_descriptor(sphere(5), sphere(6))

    def test_complexity_homomorphism_random(self):
        rng = random.Random(11)
        for _ in range(300):
            dim = rng.randrange(3, 7)

            def rand_desc():
                factors = []
                for _ in range(rng.randrange(0, 3)):
                    factors.append(
                        AbelianGroup.from_orders(0, [rng.randrange(2, 8)])
                    )
                pi1 = FreeProductDesc.build(factors, rng.randrange(0, 3))
                hom = {}
                for deg in range(2, dim):
                    if rng.random() < 0.5:
                        hom[deg] = AbelianGroup.from_orders(
                            rng.randrange(0, 3),
                            [rng.randrange(2, 10) for _ in range(rng.randrange(0, 2))],
                        )
                return descriptor(dim, pi1=pi1, homology=hom)

            a, b = rand_desc(), rand_desc()
            ca, cb, cab = complexity(a), complexity(b), complexity(consum_descriptor(a, b))
            assert cab.d == ca.d + cb.d
            assert cab.rank_sum == ca.rank_sum + cb.rank_sum
            assert cab.torsion_order == ca.torsion_order * cb.torsion_order


class TestSphereProduct:
    def test_kunneth(self):
        m = sphere_product(2, 2)
        assert m.homology_group(2) == parse_group("Z^2")
        m = sphere_product(5, 12)
        assert m.dim == 17
        assert m.homology_group(5) == parse_group("Z")
        assert m.homology_group(12) == parse_group("Z")

    def test_circle_factor(self):
        m = sphere_product(1, 3)
        assert m.pi1.free_rank == 1
        assert m.homology_group(1) == parse_group("Z")

    def test_preconditions(self):
        with pytest.raises(DomainError):
            sphere_product(0, 3)
        with pytest.raises(DomainError):
            sphere_product(1, 1)


class TestBoundaryThickening:
    def test_sphere_reduces_to_product(self):
        assert boundary_thickening(SphereComplex(2), 5) == sphere_product(2, 3)

    def test_wedge_distributes(self):
        p1, _, _ = q28_presentations()
        complexes = [
            CayleyComplex(metzler_presentation(5, 3, 1)),
            CayleyComplex(p1),
            SphereComplex(2),
            SphereComplex(3),
            ConeComplex(ConeClass(1)),
        ]
        for x in complexes:
            for y in complexes:
                for k in range(5, 21):
                    wedge = WedgeComplex((x, y))
                    if k < 2 * wedge.dim:
                        continue
                    lhs = boundary_thickening(wedge, k)
                    rhs = consum_descriptor(
                        boundary_thickening(x, k), boundary_thickening(y, k)
                    )
                    assert lhs == rhs

    def test_metzler_token(self):
        tok = boundary_thickening(CayleyComplex(metzler_presentation(5, 3, 1)), 5)
        assert tok.pi1 == parse_pi1("Z/5+Z/5+Z/5")
        assert tok.homology_group(1) == parse_group("Z/5+Z/5+Z/5")
        assert tok.homology_group(2) is OPAQUE
        c = complexity(tok)
        assert c.d == 3 and c.rank_sum is None and not c.is_total

    def test_q28_token_has_declared_generator_count(self):
        p1, _, _ = q28_presentations()
        tok = boundary_thickening(CayleyComplex(p1), 5)
        assert complexity(tok).d == 2
        assert tok.homology_group(1) == cyclic(4)

    def test_dimension_guard(self):
        with pytest.raises(DimensionTooSmall):
            boundary_thickening(SphereComplex(2), 3)
        with pytest.raises(DimensionTooSmall):
            boundary_thickening(ConeComplex(ConeClass(1)), 15)
        boundary_thickening(ConeComplex(ConeClass(1)), 16)


class TestWitnesses:
    def test_metzler_certificate(self):
        cert = make_witness("metzler", 5, p=5, s=3, q=1, q2=2)
        assert cert.stabilizer == sphere_product(2, 3)
        assert cert.obstruction.euler_base == 2
        assert cert.obstruction.euler_value == 4
        assert cert.replay()
        text = cert.serialize()
        assert "2^2 = 4 = -1 (mod 5): non-residue" in text
        assert "citations:" in text
        # stabilized forms agree at invariant level
        lhs = consum_descriptor(cert.left, cert.stabilizer)
        rhs = consum_descriptor(cert.right, cert.stabilizer)
        assert lhs == rhs

    def test_metzler_rejects_square_ratio(self):
        with pytest.raises(ParameterViolation):
            make_witness("metzler", 5, p=5, s=3, q=1, q2=4)
        with pytest.raises(ParameterViolation):
            make_witness("metzler", 4, p=5, s=3, q=1, q2=2)

    def test_cone_certificate(self):
        cert = make_witness("cone", 17, a=1, b=5)
        assert cert.stabilizer == sphere_product(5, 12)
        assert cert.replay()
        assert cert.left.pi1.is_trivial
        assert "mod-12" in cert.serialize()

    def test_cone_guards(self):
        with pytest.raises(InvalidWitnessPair):
            make_witness("cone", 17, a=1, b=11)  # homotopy equivalent
        with pytest.raises(InvalidWitnessPair):
            make_witness("cone", 17, a=2, b=3)  # not stably equivalent
        with pytest.raises(ParameterViolation):
            make_witness("cone", 16, a=1, b=5)

    def test_q28_high_dimensional(self):
        cert = make_witness("q28", 6)
        assert cert.stabilizer_label == "S^2xS^4"
        assert not cert.r_existential
        assert cert.replay()

    def test_q28_dimension_four(self):
        cert = make_witness("q28", 4)
        assert cert.r_existential
        assert cert.k == 4
        assert cert.left.dim == 4
        assert "for some r >= 1" in cert.serialize()
        assert cert.replay()

    def test_unknown_family(self):
        with pytest.raises(ParameterViolation):
            make_witness("lens", 5)

    def test_certificates_cite(self):
        for cert in (
            make_witness("metzler", 5, p=5, s=3, q=1, q2=2),
            make_witness("cone", 17, a=1, b=5),
            make_witness("q28", 4),
        ):
            assert len(cert.citations) >= 2

    def test_stabilized_forms_agree_for_all_families(self):
        certs = [
            make_witness("metzler", 7, p=13, s=3, q=1, q2=2),
            make_witness("cone", 18, a=5, b=11),
            make_witness("q28", 5),
        ]
        for cert in certs:
            assert cert.replay()
            lhs = consum_descriptor(cert.left, cert.stabilizer)
            rhs = consum_descriptor(cert.right, cert.stabilizer)
            assert lhs == rhs


class TestLiterals:
    def test_parse_descriptor(self):
        d = parse_descriptor("MD(dim=5, pi1=1, H2=Z/2)")
        assert complexity(d) == Complexity(0, 0, 2)
        d = parse_descriptor("MD(dim=6, pi1=Z/5+Z/5+Z/5 * F2)")
        assert complexity(d).d == 5

    def test_h1_must_match(self):
        with pytest.raises(DomainError):
            parse_descriptor("MD(dim=5, pi1=Z/3, H1=Z/2)")

    def test_round_trip_display(self):
        d = parse_descriptor("MD(dim=5, pi1=1, H2=Z, H3=Z)")
        assert str(d) == "MD(dim=5, pi1=1, H2=Z, H3=Z)"


class TestGrushkoExhaustive:
    def test_generator_count_additive_over_splits(self):
        # all free products with <= 2 abelian factors of order <= 9 and free
        # rank <= 2, composed pairwise: d is exactly additive
        from helpers import torsion_groups_up_to

        pool = [g for g in torsion_groups_up_to(9) if not g.is_trivial]
        descs = []
        for r in range(3):
            descs.append(FreeProductDesc.build([], r))
            for i, g in enumerate(pool):
                descs.append(FreeProductDesc.build([g], r))
        for a in descs:
            for b in descs:
                merged = a.merge(b)
                assert merged.generator_count() == a.generator_count() + b.generator_count()
