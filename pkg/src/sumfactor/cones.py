"""Mapping cones on torsion classes in the seventh homotopy group of S^4.

The torsion of ``pi_7(S^4)`` is cyclic of order 12 (the image of the
injective suspension from ``pi_6(S^3) = Z/12``, Toda 1962).  For cones on
such classes, homotopy type is governed by the class up to sign and stable
type (after one ``S^8`` wedge) by the generated subgroup, i.e. by
``gcd(alpha, 12)``.  Everything here is therefore arithmetic mod 12.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import DomainError
from .grouppres import ComplexDescriptor

TORSION_ORDER = 12


@dataclass(frozen=True)
class ConeClass:
    """A torsion attaching class, as a residue ``alpha`` mod 12."""

    alpha: int

    def __post_init__(self) -> None:
        if not 0 <= self.alpha < TORSION_ORDER:
            raise DomainError(f"cone classes are residues mod 12, got {self.alpha}")

    @classmethod
    def of(cls, n: int) -> "ConeClass":
        return cls(n % TORSION_ORDER)

    @property
    def subgroup_order_divisor(self) -> int:
        return gcd(self.alpha, TORSION_ORDER)

    def __str__(self) -> str:
        return f"C_{self.alpha}"


def cone_homotopy_equiv(a: ConeClass, b: ConeClass) -> bool:
    """Cones are homotopy equivalent exactly when the classes agree up to sign."""
    return b.alpha == a.alpha or (b.alpha + a.alpha) % TORSION_ORDER == 0


def cone_stable_equiv(a: ConeClass, b: ConeClass) -> bool:
    """After one S^8 wedge, equivalence is generation of the same subgroup."""
    return gcd(a.alpha, TORSION_ORDER) == gcd(b.alpha, TORSION_ORDER)


def minus_orbit(a: ConeClass) -> frozenset[int]:
    return frozenset({a.alpha, (-a.alpha) % TORSION_ORDER})


def cone_witness_pairs() -> tuple[tuple[int, int], ...]:
    """All stably-equivalent, homotopy-inequivalent pairs up to ``a ~ -a``.

    One representative per pair of sign orbits: the orbit minima, ordered.
    Exhausting the 66 unordered residue pairs shows only the gcd-1 class
    splits into two orbits, so the list is exactly ``((1, 5),)``.
    """
    orbit_reps = sorted({min(minus_orbit(ConeClass(a))) for a in range(TORSION_ORDER)})
    pairs = []
    for i, a in enumerate(orbit_reps):
        for b in orbit_reps[i + 1 :]:
            ca, cb = ConeClass(a), ConeClass(b)
            if cone_stable_equiv(ca, cb) and not cone_homotopy_equiv(ca, cb):
                pairs.append((a, b))
    return tuple(sorted(pairs))


@dataclass(frozen=True)
class ConeComplex(ComplexDescriptor):
    """The mapping cone as a CW-complex: cells in dimensions 0, 4 and 8."""

    attaching: ConeClass

    @property
    def dim(self) -> int:
        return 8

    @property
    def euler_char(self) -> int:
        return 3

    def label(self) -> str:
        return f"C(alpha={self.attaching.alpha})"
