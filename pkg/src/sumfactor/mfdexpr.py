"""Symbolic manifold descriptors and non-cancellation witness certificates.

A :class:`ManifoldDescriptor` records the invariant-level data this library
can actually compute for a closed oriented manifold: the dimension, the
fundamental group as a free product of freely indecomposable factors, and
the homology groups in middle degrees.  Descriptor equality is equality of
these invariants, not diffeomorphism; homology entries that no rule here
determines are stored as the opaque marker rather than guessed.

The complexity of a descriptor is the triple (minimal generator count of
the fundamental group, total free rank of middle homology, exact torsion
order of middle homology).  Under connected sum the components add, add,
and multiply respectively; the kernel of the complexity consists of the
homotopy-sphere-shaped descriptors.

Boundaries of thickenings turn finite complexes into manifolds: for a
finite ``n``-complex ``X`` and ``k >= max(2n, 5)`` the boundary ``M^k(X)``
of a ``(k+1)``-dimensional thickening is a closed ``k``-manifold, simple
homotopy equivalence of complexes gives diffeomorphism of boundaries,
wedges go to connected sums, and spheres go to sphere products (Wall 1966;
Kreck-Schafer 1984).  Those four facts convert the presentation-complex
and mapping-cone pairs into non-cancellation certificates: two manifolds
that are not homotopy equivalent but become diffeomorphic after one
stabilizing connected summand.

Certificates are replayable: the recorded obstruction (a quadratic-residue
computation, a mod-12 subgroup computation, or a cited classification
fact with its recomputed side conditions) can be re-run, and the cited
results are listed in an ordered citation chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Union

from . import monoidkit
from .abgroup import AbelianGroup, TRIVIAL, Z, direct_sum, direct_sum_all, min_generators, parse_group
from .cones import ConeClass, ConeComplex, cone_homotopy_equiv, cone_stable_equiv
from .errors import DomainError
from .grouppres import (
    CayleyComplex,
    ComplexDescriptor,
    ParameterViolation,
    Presentation,
    QrCertificate,
    SphereComplex,
    WedgeComplex,
    abelianization,
    metzler_distinct,
    metzler_presentation,
    q28_presentations,
)


class DimensionMismatch(DomainError):
    """Connected sums require equal dimensions."""


class DimensionTooSmall(DomainError):
    """The thickening-boundary operator needs k >= max(2 dim X, 5)."""


class InvalidWitnessPair(DomainError):
    """The requested cone classes do not witness non-cancellation."""


class _Opaque:
    """Marker for a homology group no rule determines; never invented."""

    _instance: Optional["_Opaque"] = None

    def __new__(cls) -> "_Opaque":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "?"


OPAQUE = _Opaque()
Homology = Union[AbelianGroup, _Opaque]


# ---------------------------------------------------------------------------
# Fundamental groups as free products
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupFactor:
    """A freely indecomposable, non-abelian factor given by a presentation.

    The ``name`` declares the group's identity, so two factors compare equal
    exactly when they carry the same declared group (built-in families name
    their groups; ad hoc presentations get a name derived from their text).
    ``min_generators`` is declared, not computed: minimal generation is not
    decidable from a presentation.  ``None`` means unknown, which makes
    complexities involving this factor partial.
    """

    name: str
    presentation: Presentation = field(compare=False)
    min_generators: Optional[int]

    def abelianized(self) -> AbelianGroup:
        return abelianization(self.presentation)

    def sort_key(self) -> tuple:
        return (1, self.name, self.min_generators if self.min_generators is not None else -1)

    def __str__(self) -> str:
        return self.name


Factor = Union[AbelianGroup, GroupFactor]


def _factor_key(f: Factor) -> tuple:
    if isinstance(f, AbelianGroup):
        return (0,) + f.sort_key()
    return f.sort_key()


@dataclass(frozen=True)
class FreeProductDesc:
    """A free product of freely indecomposable factors and a free group.

    Factors are canonically ordered with trivial factors dropped and
    infinite cyclic factors absorbed into the free rank, so value equality
    matches the uniqueness statement for free product decompositions of
    finitely generated groups (Grushko; Kurosh).
    """

    factors: tuple[Factor, ...] = ()
    free_rank: int = 0

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise DomainError("free rank must be non-negative")
        for f in self.factors:
            if isinstance(f, AbelianGroup):
                if f.is_trivial or f == Z:
                    raise DomainError("factors must be canonical: non-trivial, not Z")

    @classmethod
    def build(cls, factors=(), free_rank: int = 0) -> "FreeProductDesc":
        kept = []
        rank = free_rank
        for f in factors:
            if isinstance(f, AbelianGroup):
                if f.is_trivial:
                    continue
                if f == Z:
                    rank += 1
                    continue
            kept.append(f)
        kept.sort(key=_factor_key)
        return cls(tuple(kept), rank)

    @property
    def is_trivial(self) -> bool:
        return not self.factors and self.free_rank == 0

    def generator_count(self) -> Optional[int]:
        """Minimal generators, additive over factors; None when undeclared."""
        total = self.free_rank
        for f in self.factors:
            if isinstance(f, AbelianGroup):
                total += min_generators(f)
            else:
                if f.min_generators is None:
                    return None
                total += f.min_generators
        return total

    def abelianized(self) -> AbelianGroup:
        parts = [
            f if isinstance(f, AbelianGroup) else f.abelianized() for f in self.factors
        ]
        return direct_sum(AbelianGroup(self.free_rank), direct_sum_all(parts))

    def merge(self, other: "FreeProductDesc") -> "FreeProductDesc":
        return FreeProductDesc.build(
            self.factors + other.factors, self.free_rank + other.free_rank
        )

    def __str__(self) -> str:
        parts = [str(f) for f in self.factors]
        if self.free_rank:
            parts.append(f"F{self.free_rank}")
        return " * ".join(parts) if parts else "1"


TRIVIAL_PI1 = FreeProductDesc()


# ---------------------------------------------------------------------------
# Descriptors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Provenance:
    kind: str  # sphere-product | boundary-thickening | consum | user
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.kind}({self.detail})" if self.detail else self.kind


@dataclass(frozen=True)
class ManifoldDescriptor:
    """Invariant-level data for a closed oriented manifold of dimension >= 3.

    ``homology`` lists ``H_1 .. H_(dim-1)``; the first entry is forced to be
    the abelianization of the fundamental group.  Provenance records the
    construction but is excluded from equality.
    """

    dim: int
    pi1: FreeProductDesc
    homology: tuple[Homology, ...]
    provenance: Provenance = field(default=Provenance("user"), compare=False)

    def __post_init__(self) -> None:
        if self.dim < 3:
            raise DomainError("descriptors model dimensions >= 3")
        if len(self.homology) != self.dim - 1:
            raise DomainError(
                f"need {self.dim - 1} homology entries for dimension {self.dim}"
            )
        h1 = self.homology[0]
        if isinstance(h1, _Opaque):
            raise DomainError("H_1 is determined by pi_1 and may not be opaque")
        if h1 != self.pi1.abelianized():
            raise DomainError(
                f"H_1 = {h1} does not match the abelianized fundamental group "
                f"{self.pi1.abelianized()}"
            )

    def homology_group(self, degree: int) -> Homology:
        if not 1 <= degree <= self.dim - 1:
            raise DomainError(f"degree {degree} outside 1..{self.dim - 1}")
        return self.homology[degree - 1]

    @property
    def has_opaque_homology(self) -> bool:
        return any(isinstance(h, _Opaque) for h in self.homology)

    def __str__(self) -> str:
        named = [
            f"H{i + 1}={h}"
            for i, h in enumerate(self.homology)
            if isinstance(h, _Opaque) or not h.is_trivial
        ]
        inner = ", ".join([f"dim={self.dim}", f"pi1={self.pi1}"] + named)
        return f"MD({inner})"


def descriptor(
    dim: int,
    pi1: FreeProductDesc = TRIVIAL_PI1,
    homology: Optional[dict[int, Homology]] = None,
    provenance: Provenance = Provenance("user"),
) -> ManifoldDescriptor:
    """Build a descriptor from sparse homology data; H_1 is filled from pi_1."""
    table: list[Homology] = [TRIVIAL] * (dim - 1)
    table[0] = pi1.abelianized()
    for degree, group in (homology or {}).items():
        if degree == 1:
            if group != table[0]:
                raise DomainError("H_1 must equal the abelianized fundamental group")
            continue
        if not 2 <= degree <= dim - 1:
            raise DomainError(f"degree {degree} outside 2..{dim - 1}")
        table[degree - 1] = group
    return ManifoldDescriptor(dim, pi1, tuple(table), provenance)


def sphere(n: int) -> ManifoldDescriptor:
    """The sphere descriptor: trivial group, trivial middle homology."""
    if n < 3:
        raise DomainError("sphere descriptors start at dimension 3")
    return descriptor(n, provenance=Provenance("user", f"S^{n}"))


def sphere_product(n: int, m: int) -> ManifoldDescriptor:
    """The product of spheres ``S^n x S^m`` with its Kunneth homology."""
    if n < 1 or m < 1 or n + m < 3:
        raise DomainError("need n, m >= 1 and total dimension >= 3")
    dim = n + m
    pi1 = TRIVIAL_PI1
    rank = 0
    if n == 1:
        rank += 1
    if m == 1:
        rank += 1
    if rank:
        pi1 = FreeProductDesc.build(free_rank=rank)
    hom: dict[int, Homology] = {}
    for degree in (n, m):
        if degree >= 2 and degree <= dim - 1:
            existing = hom.get(degree, TRIVIAL)
            hom[degree] = direct_sum(existing, Z)
    return descriptor(
        dim, pi1, hom, provenance=Provenance("sphere-product", f"S^{n}xS^{m}")
    )


# ---------------------------------------------------------------------------
# Complexity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Complexity:
    """The complexity triple; rank and torsion are None when homology is opaque.

    The torsion component is the exact order of the torsion subgroup; its
    logarithm (the additive normalization) exists only in display code.
    """

    d: Optional[int]
    rank_sum: Optional[int]
    torsion_order: Optional[int]

    def __post_init__(self) -> None:
        if self.d is not None and self.d < 0:
            raise DomainError("generator counts are non-negative")
        if self.rank_sum is not None and self.rank_sum < 0:
            raise DomainError("ranks are non-negative")
        if self.torsion_order is not None and self.torsion_order < 1:
            raise DomainError("torsion orders are at least 1")

    @property
    def is_total(self) -> bool:
        return None not in (self.d, self.rank_sum, self.torsion_order)

    def __str__(self) -> str:
        def show(v) -> str:
            return "?" if v is None else str(v)

        return f"(d={show(self.d)}, rank={show(self.rank_sum)}, t={show(self.torsion_order)})"


def complexity(m: ManifoldDescriptor) -> Complexity:
    """Generator count of pi_1, middle free rank, and middle torsion order.

    Opaque homology entries (or factors with undeclared generator counts)
    make the corresponding components None; nothing is invented.
    """
    d = m.pi1.generator_count()
    if m.has_opaque_homology:
        return Complexity(d, None, None)
    rank_sum = sum(h.free_rank for h in m.homology)
    torsion = 1
    for h in m.homology:
        torsion *= h.torsion_order
    return Complexity(d, rank_sum, torsion)


def is_sphere_like(m: ManifoldDescriptor) -> bool:
    """Trivial fundamental group and trivial middle homology."""
    return m.pi1.is_trivial and all(
        not isinstance(h, _Opaque) and h.is_trivial for h in m.homology
    )


def consum_descriptor(a: ManifoldDescriptor, b: ManifoldDescriptor) -> ManifoldDescriptor:
    """Connected sum: fundamental groups free-product, homology adds.

    Middle-degree homology additivity is the standard Mayer-Vietoris
    consequence for dimensions at least 3.
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
    hom: list[Homology] = []
    for ha, hb in zip(a.homology, b.homology):
        if isinstance(ha, _Opaque) or isinstance(hb, _Opaque):
            hom.append(OPAQUE)
        else:
            hom.append(direct_sum(ha, hb))
    return ManifoldDescriptor(
        a.dim,
        a.pi1.merge(b.pi1),
        tuple(hom),
        Provenance("consum", f"{a.provenance} # {b.provenance}"),
    )


def consum_descriptors(parts) -> ManifoldDescriptor:
    parts = list(parts)
    if not parts:
        raise DomainError("need at least one descriptor")
    out = parts[0]
    for p in parts[1:]:
        out = consum_descriptor(out, p)
    return out


# ---------------------------------------------------------------------------
# Boundaries of thickenings
# ---------------------------------------------------------------------------


def _complex_pi1(x: ComplexDescriptor) -> FreeProductDesc:
    if isinstance(x, SphereComplex):
        return FreeProductDesc.build(free_rank=1) if x.n == 1 else TRIVIAL_PI1
    if isinstance(x, ConeComplex):
        return TRIVIAL_PI1
    if isinstance(x, WedgeComplex):
        out = TRIVIAL_PI1
        for part in x.parts:
            out = out.merge(_complex_pi1(part))
        return out
    if isinstance(x, CayleyComplex):
        meta = x.presentation.metadata or {}
        if "pi1" in meta:
            return FreeProductDesc.build([meta["pi1"]])
        if "pi1_name" in meta:
            factor = GroupFactor(
                meta["pi1_name"], x.presentation, meta.get("pi1_min_generators")
            )
            return FreeProductDesc.build([factor])
        if not x.presentation.relators:
            return FreeProductDesc.build(free_rank=x.presentation.generator_count)
        factor = GroupFactor(f"pres{x.presentation}", x.presentation, None)
        return FreeProductDesc.build([factor])
    raise DomainError(f"unknown complex kind {type(x).__name__}")


def boundary_thickening(x: ComplexDescriptor, k: int) -> ManifoldDescriptor:
    """The boundary ``M^k(X)`` of a ``(k+1)``-dimensional thickening of ``X``.

    Requires ``k >= 2 dim(X)`` and ``k >= 5``.  Wedges distribute over
    connected sums and spheres reduce to sphere products; for other
    complexes the token carries the fundamental group and its forced
    ``H_1`` while the remaining homology stays opaque (no formula for the
    homology of a thickening boundary is computed here).
    """
    if k < 5 or k < 2 * x.dim:
        raise DimensionTooSmall(
            f"need k >= max(2 dim X, 5) = {max(2 * x.dim, 5)}, got {k}"
        )
    if isinstance(x, SphereComplex):
        return sphere_product(x.n, k - x.n)
    if isinstance(x, WedgeComplex):
        return consum_descriptors(boundary_thickening(part, k) for part in x.parts)
    pi1 = _complex_pi1(x)
    hom: list[Homology] = [OPAQUE] * (k - 1)
    hom[0] = pi1.abelianized()
    return ManifoldDescriptor(
        k, pi1, tuple(hom), Provenance("boundary-thickening", f"M^{k}({x.label()})")
    )


# ---------------------------------------------------------------------------
# Witness certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConeObstruction:
    """Replayable record that two cone classes are stably but not
    homotopy equivalent: equal gcd with 12, distinct sign orbits."""

    alpha: int
    beta: int
    gcd_alpha: int
    gcd_beta: int

    def replay(self) -> bool:
        a, b = ConeClass(self.alpha), ConeClass(self.beta)
        return (
            gcd(self.alpha, 12) == self.gcd_alpha
            and gcd(self.beta, 12) == self.gcd_beta
            and cone_stable_equiv(a, b)
            and not cone_homotopy_equiv(a, b)
        )

    def summary(self) -> str:
        return (
            f"gcd({self.alpha},12)={self.gcd_alpha} = gcd({self.beta},12)={self.gcd_beta}; "
            f"{self.beta} not in {{+-{self.alpha} mod 12}}"
        )


@dataclass(frozen=True)
class CitedObstruction:
    """An inequivalence taken from the literature, with its recomputable
    side conditions (equal deficiency and abelianization of the pair)."""

    citation: str
    left: Presentation
    right: Presentation

    def replay(self) -> bool:
        p1, p2, cert = q28_presentations()
        return (
            (self.left, self.right) == (p1, p2)
            and cert.replay()
            and self.citation == cert.inequivalence_citation
        )

    def summary(self) -> str:
        return f"cited: {self.citation}"


Obstruction = Union[QrCertificate, ConeObstruction, CitedObstruction]

_CITE_THICKENING = (
    "Wall, Classification problems IV: thickenings, Topology 5 (1966); "
    "Kreck-Schafer, Classification of simply connected manifolds..., "
    "Comment. Math. Helv. 59 (1984): boundaries of thickenings turn stable "
    "wedge equivalences into connected-sum diffeomorphisms and detect "
    "homotopy inequivalence"
)
_CITE_METZLER = (
    "Metzler, Uber den Homotopietyp zweidimensionaler CW-Komplexe..., "
    "J. reine angew. Math. 285 (1976): quadratic non-residue ratios give "
    "homotopy inequivalent presentation complexes of (Z/p)^s"
)
_CITE_STABLE = (
    "Browning 1979 / Hambleton-Kreck 1993: equal Euler characteristic and "
    "finite fundamental group give simple homotopy equivalence after one "
    "S^2 wedge"
)
_CITE_HILTON = (
    "Hilton, On the Grothendieck group of compact polyhedra, Fund. Math. 61 "
    "(1967): cones on torsion classes are homotopy equivalent only up to "
    "sign and stably equivalent exactly on subgroup generation"
)
_CITE_TODA = (
    "Toda, Composition methods in homotopy groups of spheres (1962): "
    "pi_6(S^3) = Z/12 suspends injectively onto the torsion of pi_7(S^4)"
)
_CITE_Q28 = "Mannan-Popiel, An exotic presentation of Q28, Algebr. Geom. Topol. (2021)"
_CITE_WALL_STAB = (
    "Wall, On simply-connected 4-manifolds, J. London Math. Soc. 39 (1964): "
    "h-cobordant (here: s-cobordant) smooth 4-manifolds become diffeomorphic "
    "after finitely many S^2 x S^2 connected summands"
)
_CITE_5DIM_THICKENING = (
    "Wall 1966 / Kreck-Schafer 1984: 5-dimensional thickenings of a finite "
    "2-complex have s-cobordant boundaries, and those boundaries remember "
    "the homotopy type of the complex"
)


@dataclass(frozen=True)
class WitnessCertificate:
    """A replayable non-cancellation instance.

    ``left`` and ``right`` are descriptor tokens that agree on every modeled
    invariant yet are certified homotopy inequivalent by the obstruction;
    composing either with the stabilizer yields equal descriptors, and the
    classification results applied are listed in order in ``citations``.
    For 4-dimensional certificates the number of stabilizing summands is
    existential (``r >= 1`` copies for some unspecified ``r``).
    """

    family: str
    parameters: tuple[tuple[str, int], ...]
    k: int
    left: ManifoldDescriptor
    right: ManifoldDescriptor
    stabilizer: ManifoldDescriptor
    stabilizer_label: str
    r_existential: bool
    obstruction: Obstruction
    citations: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.citations:
            raise DomainError("a certificate needs a non-empty citation chain")

    def replay(self) -> bool:
        """Re-run the obstruction and re-check the stabilized equality."""
        if not self.obstruction.replay():
            return False
        if self.r_existential:
            return True
        left = consum_descriptor(self.left, self.stabilizer)
        right = consum_descriptor(self.right, self.stabilizer)
        return left == right

    def serialize(self) -> str:
        """A line-oriented, diff-friendly key=value block."""
        lines = [
            f"family={self.family}",
            f"k={self.k}",
        ]
        lines += [f"{key}={value}" for key, value in self.parameters]
        lines += [
            f"left={self.left.provenance}",
            f"right={self.right.provenance}",
            f"left.pi1={self.left.pi1}",
            f"right.pi1={self.right.pi1}",
            f"stabilizer={self.stabilizer_label}",
            "claim.inequivalent=left and right are not homotopy equivalent",
            f"claim.stabilized=left # {self.stabilizer_label} and "
            f"right # {self.stabilizer_label} are orientation-preserving diffeomorphic"
            + (" for some r >= 1" if self.r_existential else ""),
        ]
        obs = self.obstruction
        if isinstance(obs, QrCertificate):
            lines += [
                f"obstruction.kind=quadratic-residue",
                f"obstruction.p={obs.p}",
                f"obstruction.ratio={obs.ratio}",
                f"obstruction.inverse_ratio={obs.inverse_ratio}",
                f"obstruction.euler={obs.summary()}",
            ]
        elif isinstance(obs, ConeObstruction):
            lines += [
                "obstruction.kind=mod-12",
                f"obstruction.alpha={obs.alpha}",
                f"obstruction.beta={obs.beta}",
                f"obstruction.gcds={obs.gcd_alpha},{obs.gcd_beta}",
                f"obstruction.summary={obs.summary()}",
            ]
        else:
            lines += [
                "obstruction.kind=cited",
                f"obstruction.summary={obs.summary()}",
            ]
        lines.append(f"replayed={'ok' if self.replay() else 'FAILED'}")
        lines.append("citations:")
        lines += [f"  - {c}" for c in self.citations]
        return "\n".join(lines)


def make_witness(
    family: str,
    k: int,
    *,
    p: Optional[int] = None,
    s: Optional[int] = None,
    q: Optional[int] = None,
    q2: Optional[int] = None,
    a: Optional[int] = None,
    b: Optional[int] = None,
) -> WitnessCertificate:
    """Assemble a non-cancellation certificate for one of the built-in families.

    * ``metzler``: needs ``p, s, q, q2`` with the presentation complexes
      homotopy inequivalent (non-residue ratio) and ``k >= 5``; stabilizer
      ``S^2 x S^(k-2)``.
    * ``q28``: ``k >= 5`` (same stabilizer), or ``k = 4`` where the
      stabilizer is ``r`` copies of ``S^2 x S^2`` for some unspecified
      ``r >= 1``.
    * ``cone``: needs residues ``a, b`` mod 12 that are stably but not
      homotopy equivalent and ``k >= 17``; stabilizer ``S^5 x S^(k-5)``.
    """
    if family == "metzler":
        if None in (p, s, q, q2):
            raise ParameterViolation("metzler witnesses need p, s, q and q2")
        if k < 5:
            raise ParameterViolation(f"metzler witnesses need k >= 5, got {k}")
        distinct, qr = metzler_distinct(p, q, q2)
        if not distinct:
            raise ParameterViolation(
                f"q/q' = {qr.ratio} is a square mod {p}; the complexes are not "
                "known to be inequivalent"
            )
        pres_q = metzler_presentation(p, s, q)
        pres_q2 = metzler_presentation(p, s, q2)
        left = boundary_thickening(CayleyComplex(pres_q), k)
        right = boundary_thickening(CayleyComplex(pres_q2), k)
        stab = sphere_product(2, k - 2)
        return WitnessCertificate(
            family="metzler",
            parameters=(("p", p), ("s", s), ("q", q), ("q2", q2)),
            k=k,
            left=left,
            right=right,
            stabilizer=stab,
            stabilizer_label=f"S^2xS^{k - 2}",
            r_existential=False,
            obstruction=qr,
            citations=(_CITE_METZLER, _CITE_STABLE, _CITE_THICKENING),
        )

    if family == "q28":
        if k != 4 and k < 5:
            raise ParameterViolation(f"q28 witnesses need k >= 5 or k = 4, got {k}")
        p1, p2, cert = q28_presentations()
        obstruction = CitedObstruction(cert.inequivalence_citation, p1, p2)
        if k == 4:
            # boundaries of 5-dimensional thickenings: dimension 4 tokens
            def boundary_of_5_thickening(pres: Presentation) -> ManifoldDescriptor:
                complex_ = CayleyComplex(pres)
                pi1 = _complex_pi1(complex_)
                hom = (pi1.abelianized(), OPAQUE, OPAQUE)
                return ManifoldDescriptor(
                    4, pi1, hom,
                    Provenance("boundary-thickening", f"dN^5({complex_.label()})"),
                )

            left = boundary_of_5_thickening(p1)
            right = boundary_of_5_thickening(p2)
            stab = sphere_product(2, 2)
            return WitnessCertificate(
                family="q28",
                parameters=(),
                k=4,
                left=left,
                right=right,
                stabilizer=stab,
                stabilizer_label="r*(S^2xS^2)",
                r_existential=True,
                obstruction=obstruction,
                citations=(_CITE_Q28, _CITE_STABLE, _CITE_5DIM_THICKENING, _CITE_WALL_STAB),
            )
        left = boundary_thickening(CayleyComplex(p1), k)
        right = boundary_thickening(CayleyComplex(p2), k)
        stab = sphere_product(2, k - 2)
        return WitnessCertificate(
            family="q28",
            parameters=(),
            k=k,
            left=left,
            right=right,
            stabilizer=stab,
            stabilizer_label=f"S^2xS^{k - 2}",
            r_existential=False,
            obstruction=obstruction,
            citations=(_CITE_Q28, _CITE_STABLE, _CITE_THICKENING),
        )

    if family == "cone":
        if a is None or b is None:
            raise ParameterViolation("cone witnesses need residues a and b")
        if k < 17:
            raise ParameterViolation(f"cone witnesses need k >= 17, got {k}")
        ca, cb = ConeClass.of(a), ConeClass.of(b)
        if cone_homotopy_equiv(ca, cb) or not cone_stable_equiv(ca, cb):
            raise InvalidWitnessPair(
                f"classes {ca.alpha} and {cb.alpha} are not a stably-equivalent, "
                "homotopy-inequivalent pair"
            )
        left = boundary_thickening(ConeComplex(ca), k)
        right = boundary_thickening(ConeComplex(cb), k)
        stab = sphere_product(5, k - 5)
        obstruction = ConeObstruction(
            ca.alpha, cb.alpha, gcd(ca.alpha, 12), gcd(cb.alpha, 12)
        )
        return WitnessCertificate(
            family="cone",
            parameters=(("a", ca.alpha), ("b", cb.alpha)),
            k=k,
            left=left,
            right=right,
            stabilizer=stab,
            stabilizer_label=f"S^5xS^{k - 5}",
            r_existential=False,
            obstruction=obstruction,
            citations=(_CITE_TODA, _CITE_HILTON, _CITE_THICKENING),
        )

    raise ParameterViolation(f"unknown witness family {family!r}")


# ---------------------------------------------------------------------------
# The stabilized-wedge monoid
# ---------------------------------------------------------------------------


def stable_wedge_spec() -> monoidkit.MonoidSpec:
    """The monoid generated by a witness pair and its stabilizing sphere.

    Elements are formal connected sums ``a*X + b*Y + c*S`` of the boundary
    tokens of two complexes with ``X v S ~ Y v S`` (simple homotopy), so the
    single relation ``X + S = Y + S`` holds.  Canonical form converts every
    ``Y`` to ``X`` once an ``S`` is present.  The sphere token ``S`` is not
    cancellable: ``X + S = Y + S`` while ``X != Y``.
    """

    def canon(t: tuple[int, int, int]) -> tuple[int, int, int]:
        a, b, c = t
        if c >= 1:
            return (a + b, 0, c)
        return t

    def compose(u, v):
        return canon((u[0] + v[0], u[1] + v[1], u[2] + v[2]))

    def enumerate_level(level: int):
        out = []
        for total in range(level + 1):
            for c in range(total + 1):
                for aa in range(total - c + 1):
                    bb = total - c - aa
                    t = (aa, bb, c)
                    if canon(t) == t:
                        out.append(t)
        return out

    def fmt(t) -> str:
        a, b, c = t
        parts = []
        for count, sym in ((a, "X"), (b, "Y"), (c, "S")):
            if count == 1:
                parts.append(sym)
            elif count > 1:
                parts.append(f"{count}{sym}")
        return "+".join(parts) if parts else "0"

    def parse(text: str):
        s = text.strip()
        if s == "0":
            return (0, 0, 0)
        counts = {"X": 0, "Y": 0, "S": 0}
        for raw in s.split("+"):
            term = raw.strip()
            sym = term[-1]
            if sym not in counts:
                raise DomainError(f"bad token term {term!r}")
            mult = term[:-1].strip()
            counts[sym] += int(mult) if mult else 1
        return canon((counts["X"], counts["Y"], counts["S"]))

    def divisors(x):
        a, b, c = x
        pairs = []
        if c == 0:
            # no sphere available: the relation never fires, plain splits
            for a1 in range(a + 1):
                for b1 in range(b + 1):
                    pairs.append(((a1, b1, 0), (a - a1, b - b1, 0)))
        else:
            # canonical x is all-X; complex letters split freely between the
            # parts, and a part without a sphere may carry them as Y
            for c1 in range(c + 1):
                c2 = c - c1
                for t1 in range(a + 1):
                    t2 = a - t1
                    lefts = [(t1, 0, c1)] if c1 else [(i, t1 - i, 0) for i in range(t1 + 1)]
                    rights = [(t2, 0, c2)] if c2 else [(j, t2 - j, 0) for j in range(t2 + 1)]
                    for u in lefts:
                        for v in rights:
                            pairs.append((u, v))
        return pairs

    return monoidkit.MonoidSpec(
        name="stable-wedge",
        compose=compose,
        neutral=(0, 0, 0),
        complexity=lambda t: t[0] + t[1] + t[2],
        enumerate_level=enumerate_level,
        fmt=fmt,
        parse=parse,
        divisor_complete=True,
        strictly_additive=True,
        divisors=divisors,
        description="tokens X, Y, S with the stabilization relation X+S = Y+S",
    )


# ---------------------------------------------------------------------------
# Descriptor literals
# ---------------------------------------------------------------------------


def parse_pi1(text: str) -> FreeProductDesc:
    """Parse a free product literal: abelian group literals and ``F<k>``
    joined by ``*``; ``1`` is the trivial group."""
    s = text.strip()
    if s == "1":
        return TRIVIAL_PI1
    factors = []
    rank = 0
    for raw in s.split("*"):
        term = raw.strip()
        if term.startswith("F"):
            rank += int(term[1:]) if term[1:] else 1
        else:
            factors.append(parse_group(term))
    return FreeProductDesc.build(factors, rank)


def parse_descriptor(text: str) -> ManifoldDescriptor:
    """Parse ``MD(dim=5, pi1=Z/5, H2=Z/2, ...)``; omitted degrees are trivial."""
    s = text.strip()
    if not (s.startswith("MD(") and s.endswith(")")):
        raise DomainError(f"bad descriptor literal {text!r}")
    fields: dict[str, str] = {}
    for part in s[3:-1].split(","):
        key, eq, value = part.partition("=")
        if not eq:
            raise DomainError(f"bad descriptor field {part!r}")
        fields[key.strip()] = value.strip()
    if "dim" not in fields:
        raise DomainError("descriptor literals need a dim field")
    dim = int(fields.pop("dim"))
    pi1 = parse_pi1(fields.pop("pi1", "1"))
    hom: dict[int, Homology] = {}
    for key, value in fields.items():
        if not key.startswith("H"):
            raise DomainError(f"unknown descriptor field {key!r}")
        hom[int(key[1:])] = parse_group(value)
    return descriptor(dim, pi1, hom)
