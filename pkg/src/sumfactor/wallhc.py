"""The invariant fragment of highly connected even-dimensional manifolds.

Wall's classification of ``(k-1)``-connected smooth ``2k``-manifolds (1962)
supports a small exactly-computable fragment: half the rank of the middle
homology, the Arf-Kervaire invariant of the canonical quadratic refinement
(defined for odd ``k``), and, for ``k = 1 mod 8``, the type bit recording
whether the stabilized normal-bundle map is trivial.  Equality of
:class:`HcClass` values means equality of these modeled invariants only;
completeness relative to diffeomorphism is not claimed.

The connected-sum rules on the fragment: ranks add, Arf invariants add in
``Z/2``, and the type of a sum is 1 exactly when both summands have type 1.
The last rule is an AND, not a homomorphism to ``(Z/2, +)``, and it is the
whole engine of non-cancellation in the ``k = 1 mod 8`` dimensions: two
irreducible classes differing only in type glue to equal sums.

:func:`ufm_case` tabulates, for each ``k``, whether unique factorization
holds in the smooth and PL monoids, with the Kervaire-dimension set
``{1, 3, 7, 15, 31}`` stored as data and the 63 entry marked conditional on
a Kervaire sphere in dimension 126.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from . import monoidkit
from .errors import DomainError


class ResidueMismatch(DomainError):
    """Connected sums are only defined within one residue class of k mod 8."""


KERVAIRE_INVARIANT_ONE = frozenset({1, 3, 7, 15, 31})
CONDITIONAL_KERVAIRE = 63  # open: needs a Kervaire sphere in dimension 126


def _has_arf(k_mod_8: int) -> bool:
    return k_mod_8 % 2 == 1


def _has_type(k_mod_8: int) -> bool:
    return k_mod_8 == 1


@dataclass(frozen=True)
class HcClass:
    """A highly connected ``2k``-manifold class, seen through the fragment.

    Fields are present exactly per residue class: ``arf`` for odd ``k``,
    ``type_bit`` for ``k = 1 mod 8``.  Empty middle homology forces a
    trivial quadratic refinement and a trivial stabilized map, so
    ``half_rank == 0`` pins ``arf == 0`` and ``type_bit == 1``.
    """

    k_mod_8: int
    half_rank: int
    arf: Optional[int] = None
    type_bit: Optional[int] = None

    def __post_init__(self) -> None:
        if not 0 <= self.k_mod_8 <= 7:
            raise DomainError("k_mod_8 must lie in 0..7")
        if self.half_rank < 0:
            raise DomainError("half_rank must be non-negative")
        if _has_arf(self.k_mod_8) != (self.arf is not None):
            raise DomainError(
                f"arf must be present exactly for odd residues (k mod 8 = {self.k_mod_8})"
            )
        if _has_type(self.k_mod_8) != (self.type_bit is not None):
            raise DomainError(
                f"type_bit must be present exactly for residue 1 (k mod 8 = {self.k_mod_8})"
            )
        if self.arf is not None and self.arf not in (0, 1):
            raise DomainError("arf lies in Z/2")
        if self.type_bit is not None and self.type_bit not in (0, 1):
            raise DomainError("type_bit is 0 or 1")
        if self.half_rank == 0:
            if self.arf not in (None, 0):
                raise DomainError("empty middle homology forces arf = 0")
            if self.type_bit not in (None, 1):
                raise DomainError("empty middle homology forces type 1")

    def sort_key(self) -> tuple:
        return (self.half_rank, self.arf or 0, self.type_bit if self.type_bit is not None else 1)

    def __str__(self) -> str:
        parts = [f"g={self.half_rank}"]
        if self.arf is not None:
            parts.append(f"arf={self.arf}")
        if self.type_bit is not None:
            parts.append(f"type={self.type_bit}")
        return "W(" + ",".join(parts) + ")"


def neutral_class(k_mod_8: int) -> HcClass:
    """The sphere class in the given residue fragment."""
    return HcClass(
        k_mod_8,
        0,
        arf=0 if _has_arf(k_mod_8) else None,
        type_bit=1 if _has_type(k_mod_8) else None,
    )


def consum_hc(a: HcClass, b: HcClass) -> HcClass:
    """Connected sum on the fragment: ranks and Arf add, types AND."""
    if a.k_mod_8 != b.k_mod_8:
        raise ResidueMismatch(f"k mod 8 disagrees: {a.k_mod_8} vs {b.k_mod_8}")
    arf = None
    if a.arf is not None:
        arf = (a.arf + b.arf) % 2
    type_bit = None
    if a.type_bit is not None:
        type_bit = 1 if (a.type_bit == 1 and b.type_bit == 1) else 0
    return HcClass(a.k_mod_8, a.half_rank + b.half_rank, arf=arf, type_bit=type_bit)


# ---------------------------------------------------------------------------
# The unique-factorization case table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UfmCase:
    """Verdict for the monoid of highly connected ``2k``-manifolds.

    ``smooth`` and ``pl`` are each one of ``"ufm"``, ``"not-ufm"``,
    ``"open"``; the mechanisms name the witness family behind a failure or
    the isomorphism behind a success.
    """

    k: int
    k_mod_8: int
    smooth: str
    smooth_mechanism: str
    pl: str
    pl_mechanism: str
    notes: tuple[str, ...]
    citations: tuple[str, ...]


_CITES = (
    "Wall, Classification of (n-1)-connected 2n-manifolds, Ann. of Math. 75 (1962)",
    "Smale, On the structure of manifolds, Amer. J. Math. 84 (1962)",
    "Hill-Hopkins-Ravenel, On the nonexistence of elements of Kervaire invariant one, Ann. of Math. 184 (2016)",
)


def ufm_case(k: int) -> UfmCase:
    """The unique-factorization verdict for half-dimension ``k >= 1``."""
    if k < 1:
        raise DomainError("k must be at least 1")
    r = k % 8
    notes: list[str] = []

    if k == 1:
        return UfmCase(
            k, r, "ufm", "genus gives an isomorphism with N",
            "ufm", "genus gives an isomorphism with N",
            ("surfaces: the monoid is free on the torus",), _CITES,
        )
    if k % 2 == 0:
        note = (
            "definite versus indefinite intersection forms: M # -M is a sum of "
            "S^k x S^k classes that divide neither summand"
        )
        if k == 2:
            notes.append(
                "dimension 4: (S^2 x S^2) # CP^2 and CP^2 # -CP^2 # CP^2 are diffeomorphic"
            )
        return UfmCase(k, r, "not-ufm", note, "not-ufm", note, tuple(notes), _CITES)
    # odd k from here on
    if k in KERVAIRE_INVARIANT_ONE and k not in (1, 3, 7):
        mech = "a Kervaire-invariant-one manifold splits M # M two ways"
        return UfmCase(k, r, "not-ufm", mech, "not-ufm", mech, (), _CITES)
    if k == CONDITIONAL_KERVAIRE:
        return UfmCase(
            k, r, "open", "conditional on a Kervaire sphere in dimension 126",
            "not-ufm", "Arf-Kervaire witness in PL",
            ("smooth case open: tied to the dimension-126 Kervaire invariant",), _CITES,
        )
    if r == 1:
        mech = "type witness: W0 # W1 = W0 # W0 with W0, W1 of different type"
        return UfmCase(k, r, "not-ufm", mech, "not-ufm", mech, (), _CITES)
    # r in {3, 5, 7}, k not a Kervaire dimension
    smooth_mech = "half the middle rank is an isomorphism with N"
    if k == 3:
        return UfmCase(k, r, "ufm", smooth_mech, "ufm", smooth_mech, (), _CITES)
    if k == 7:
        return UfmCase(
            k, r, "ufm", smooth_mech, "open", "PL case unresolved",
            ("PL unique factorization is only known for k = 1, 3",), _CITES,
        )
    return UfmCase(
        k, r, "ufm", smooth_mech, "not-ufm", "Arf-Kervaire witness in PL", (), _CITES,
    )


class TypeWitness(NamedTuple):
    """A verified non-cancellation instance in the ``k = 1 mod 8`` fragment."""

    w0: HcClass
    w1: HcClass
    left: HcClass
    right: HcClass


def type_noncancellation_witness(g: int, arf: int) -> TypeWitness:
    """Two classes equal in rank and Arf but of different type whose sums agree.

    Returns ``(W0, W1, W0 # W1, W0 # W0)`` after verifying the two sums are
    equal while ``W0 != W1``; rejects ``g = 0`` (the degenerate sphere class
    admits only type 1).
    """
    if g < 1:
        raise DomainError("the witness needs positive middle rank")
    w0 = HcClass(1, g, arf=arf, type_bit=0)
    w1 = HcClass(1, g, arf=arf, type_bit=1)
    left = consum_hc(w0, w1)
    right = consum_hc(w0, w0)
    if left != right or w0 == w1:
        raise AssertionError("type combination rule violated")
    return TypeWitness(w0, w1, left, right)


# ---------------------------------------------------------------------------
# Monoid adapters
# ---------------------------------------------------------------------------


def parse_hc(text: str) -> HcClass:
    """Parse ``W(g=1,arf=0,type=1)`` style literals (fields per residue)."""
    s = text.strip()
    if s.startswith("W(") and s.endswith(")"):
        s = s[2:-1]
    fields: dict[str, int] = {}
    for part in s.split(","):
        key, _, value = part.partition("=")
        if not value:
            raise DomainError(f"bad class literal field {part!r}")
        fields[key.strip()] = int(value)
    g = fields.pop("g")
    arf = fields.pop("arf", None)
    type_bit = fields.pop("type", None)
    if fields:
        raise DomainError(f"unknown class literal fields {sorted(fields)}")
    k_mod_8 = 1 if type_bit is not None else (3 if arf is not None else 0)
    return HcClass(k_mod_8, g, arf=arf, type_bit=type_bit)


def type_fragment_spec() -> monoidkit.MonoidSpec:
    """The ``k = 1 mod 8`` fragment: (rank, arf, type) with the AND-type rule."""

    def enumerate_level(level: int):
        out = [neutral_class(1)]
        for g in range(1, level + 1):
            for arf in (0, 1):
                for type_bit in (0, 1):
                    out.append(HcClass(1, g, arf=arf, type_bit=type_bit))
        return out

    def divisors(x: HcClass):
        pairs = []
        for g in range(x.half_rank + 1):
            for arf in (0, 1) if g else (0,):
                for type_bit in (0, 1) if g else (1,):
                    a = HcClass(1, g, arf=arf, type_bit=type_bit)
                    g2 = x.half_rank - g
                    arf2 = (x.arf - arf) % 2
                    if g2 == 0 and arf2 != 0:
                        continue
                    for tb2 in (0, 1) if g2 else (1,):
                        b = HcClass(1, g2, arf=arf2, type_bit=tb2)
                        if consum_hc(a, b) == x:
                            pairs.append((a, b))
        return pairs

    return monoidkit.MonoidSpec(
        name="wall-type",
        compose=consum_hc,
        neutral=neutral_class(1),
        complexity=lambda x: x.half_rank,
        enumerate_level=enumerate_level,
        fmt=str,
        parse=parse_hc,
        divisor_complete=True,
        strictly_additive=True,
        divisors=divisors,
        description="highly connected fragment for k = 1 mod 8: rank, Arf, type",
    )


def even_rank_signature_spec() -> monoidkit.MonoidSpec:
    """Rank and signature of unimodular symmetric forms, for even ``k >= 4``.

    Elements are pairs ``(rank, signature)`` with ``|signature| <= rank``
    and matching parity; composition is componentwise addition.  Definite
    classes such as (1, 1) (realized by manifolds with form <1>, e.g. the
    quaternionic projective plane in dimension 16) make the hyperbolic class
    ``S^k x S^k = (2, 0)`` non-prime: it divides the sum of a definite class
    and its reverse without dividing either.
    """

    def valid(r: int, s: int) -> bool:
        return r >= 0 and abs(s) <= r and (r - s) % 2 == 0

    def enumerate_level(level: int):
        return [
            (r, s)
            for r in range(level + 1)
            for s in range(-r, r + 1, 2)
        ]

    def divisors(x: tuple[int, int]):
        r, s = x
        pairs = []
        for r1 in range(r + 1):
            for s1 in range(-r1, r1 + 1, 2):
                r2, s2 = r - r1, s - s1
                if valid(r2, s2):
                    pairs.append(((r1, s1), (r2, s2)))
        return pairs

    def parse(text: str) -> tuple[int, int]:
        s = text.strip().lstrip("(").rstrip(")")
        rank_s, _, sig_s = s.partition(",")
        pair = (int(rank_s), int(sig_s))
        if not valid(*pair):
            raise DomainError(f"no unimodular symmetric form has rank/signature {pair}")
        return pair

    return monoidkit.MonoidSpec(
        name="wall-even",
        compose=lambda a, b: (a[0] + b[0], a[1] + b[1]),
        neutral=(0, 0),
        complexity=lambda x: x[0],
        enumerate_level=enumerate_level,
        fmt=lambda x: f"({x[0]},{x[1]})",
        parse=parse,
        divisor_complete=True,
        strictly_additive=True,
        divisors=divisors,
        description="rank and signature fragment for even k >= 4",
    )
