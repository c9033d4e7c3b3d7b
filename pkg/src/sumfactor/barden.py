"""The monoid of smooth simply connected 5-manifolds under connected sum.

Barden's classification (1965) reduces smooth, closed, oriented, simply
connected 5-manifolds (where smooth = PL = Top) to pairs: the second
homology group together with a height in ``{0, 1, 2, ..., inf}``.  Height 0
means spin; otherwise the second Stiefel-Whitney class factors through a
``Z/2^h`` direct summand (``Z/2^inf`` read as ``Z``).  The pair determines
the diffeomorphism class, so value equality below is diffeomorphism.

Realizability of a pair ``(H, h)``:

* the torsion of ``H`` has every primary multiplicity even, except that for
  ``h = 1`` the ``Z/2`` multiplicity is instead at least 1 with everything
  else even (this covers both the Wu manifold shape ``A + A + Z/2`` and its
  fully doubled companions such as the double of the Wu manifold);
* a finite height ``h >= 2`` requires a ``Z/2^h`` direct summand;
* height ``inf`` requires positive free rank.

These constraints are exactly closed under connected sum, whose height
obeys: a spin summand is neutral, otherwise heights combine by minimum.

The unique unit is ``S^5``; irreducibility and factorization are decided
exactly by a finite divisor search over summands of the homology group.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from itertools import product as _cartesian
from typing import Iterator, Optional

from . import monoidkit
from .abgroup import AbelianGroup, TRIVIAL, cyclic, direct_sum, parse_group, split_summand
from .errors import DomainError


class NotRealizable(DomainError):
    """The torsion shape admits no simply connected 5-manifold at this height."""


class UnsupportedHeight(DomainError):
    """The homology group cannot support the requested height."""


class NotDivisible(DomainError):
    """The Wu manifold does not divide this manifold."""


# ---------------------------------------------------------------------------
# Heights
# ---------------------------------------------------------------------------


@total_ordering
@dataclass(frozen=True)
class Height:
    """A value in the totally ordered set ``0 < 1 < 2 < ... < inf``.

    ``finite`` is the integer value, or ``None`` for infinity.
    """

    finite: Optional[int]

    def __post_init__(self) -> None:
        if self.finite is not None and self.finite < 0:
            raise ValueError("finite heights are non-negative")

    @property
    def is_infinite(self) -> bool:
        return self.finite is None

    @property
    def is_zero(self) -> bool:
        return self.finite == 0

    def __lt__(self, other: "Height") -> bool:
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.finite < other.finite

    def __str__(self) -> str:
        return "inf" if self.finite is None else str(self.finite)

    @classmethod
    def parse(cls, text: str) -> "Height":
        s = text.strip()
        if s == "inf":
            return INF
        try:
            return cls(int(s))
        except ValueError:
            raise DomainError(f"bad height literal {s!r}") from None


INF = Height(None)
H0 = Height(0)
H1 = Height(1)


def combine_heights(a: Height, b: Height) -> Height:
    """Height of a connected sum: spin is neutral, otherwise the minimum."""
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    return min(a, b)


# ---------------------------------------------------------------------------
# Manifolds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Manifold5:
    """A diffeomorphism class of smooth simply connected 5-manifolds.

    Construction validates realizability, so every value in circulation is a
    genuine manifold class.
    """

    h2: AbelianGroup
    height: Height

    def __post_init__(self) -> None:
        _check_realizable(self.h2, self.height)

    @property
    def is_spin(self) -> bool:
        return self.height.is_zero

    def sort_key(self) -> tuple:
        h = (1, 0) if self.height.is_infinite else (0, self.height.finite)
        return self.h2.sort_key() + h

    def __str__(self) -> str:
        return f"M5(H2={self.h2}, h={self.height})"


def _check_realizable(h2: AbelianGroup, height: Height) -> None:
    primary = h2.primary_multiset()
    odd = {pe for pe, mult in primary.items() if mult % 2}
    if height == H1:
        if primary.get((2, 1), 0) < 1:
            raise NotRealizable(
                f"height 1 needs a Z/2 summand; torsion of {h2} has none"
            )
        if odd - {(2, 1)}:
            raise NotRealizable(
                f"torsion of {h2} is not doubled away from its Z/2 part"
            )
        return
    if odd:
        raise NotRealizable(f"torsion of {h2} is not of the doubled form A+A")
    if height.is_infinite:
        if h2.free_rank == 0:
            raise UnsupportedHeight(
                f"height inf needs positive free rank, got H2={h2}"
            )
    elif height.finite >= 2:
        if primary.get((2, height.finite), 0) < 1:
            raise UnsupportedHeight(
                f"height {height} needs a Z/2^{height.finite} summand in H2={h2}"
            )


def validate(h2: AbelianGroup, height: Height) -> Manifold5:
    """Construct a manifold class, raising when the pair is not realizable."""
    return Manifold5(h2, height)


S5 = Manifold5(TRIVIAL, H0)
WU = Manifold5(cyclic(2), H1)


def consum(m: Manifold5, n: Manifold5) -> Manifold5:
    """Connected sum: homology adds, heights combine by the spin/min rule."""
    return Manifold5(direct_sum(m.h2, n.h2), combine_heights(m.height, n.height))


def consum_all(ms) -> Manifold5:
    out = S5
    for m in ms:
        out = consum(out, m)
    return out


def wu_divides(m: Manifold5) -> bool:
    """The Wu manifold divides ``m`` exactly when the height is 1."""
    return m.height == H1


def wu_complement(m: Manifold5) -> Manifold5:
    """A complement ``L`` with ``WU # L == m``.

    The homology of ``L`` is that of ``m`` with one ``Z/2`` summand removed.
    When the remaining torsion is fully doubled the complement is spin; when
    a ``Z/2`` factor of odd multiplicity remains (the double of the Wu
    manifold is the smallest case) the complement itself has height 1.
    """
    if not wu_divides(m):
        raise NotDivisible(f"{m} has height {m.height}, not 1")
    primary = m.h2.primary_multiset()
    primary[(2, 1)] -= 1
    h2 = AbelianGroup.from_primary(m.h2.free_rank, primary)
    height = H0 if primary.get((2, 1), 0) % 2 == 0 else H1
    return Manifold5(h2, height)


def _candidate_heights(target: Height, given: Height) -> list[Height]:
    """Heights ``h`` with ``combine_heights(given, h) == target`` worth trying.

    The spin/min table makes ``{0, target, inf}`` a complete candidate set:
    any other solution exists only when an element of this set also works.
    """
    out = []
    for h in (H0, target, INF):
        if combine_heights(given, h) == target and h not in out:
            out.append(h)
    return out


def divides5(n: Manifold5, m: Manifold5) -> Optional[Manifold5]:
    """Return a complement ``L`` with ``n # L == m``, or ``None``.

    The homology of any complement is forced to be the summand difference;
    only finitely many heights can close the height equation, and every
    candidate is re-validated before the connected sum is checked.
    """
    h2 = split_summand(m.h2, n.h2)
    if h2 is None:
        return None
    for height in _candidate_heights(m.height, n.height):
        try:
            cand = Manifold5(h2, height)
        except DomainError:
            continue
        if consum(n, cand) == m:
            return cand
    return None


def _sub_multisets(primary: dict[tuple[int, int], int]) -> Iterator[dict[tuple[int, int], int]]:
    items = sorted(primary.items())
    ranges = [range(mult + 1) for _, mult in items]
    for counts in _cartesian(*ranges):
        yield {pe: c for (pe, _), c in zip(items, counts) if c}


def valid_heights(h2: AbelianGroup) -> tuple[Height, ...]:
    """All heights at which ``h2`` is realizable, in canonical order."""
    primary = h2.primary_multiset()
    finite_candidates = {0, 1} | {e for (p, e) in primary if p == 2}
    out = []
    for k in sorted(finite_candidates):
        try:
            Manifold5(h2, Height(k))
        except DomainError:
            continue
        out.append(Height(k))
    try:
        Manifold5(h2, INF)
    except DomainError:
        pass
    else:
        out.append(INF)
    return tuple(out)


def divisor_pairs(m: Manifold5) -> list[tuple[Manifold5, Manifold5]]:
    """All pairs ``(d, L)`` with ``d # L == m``, canonically ordered.

    Candidate divisor homology ranges over sub-multisets of the primary
    decomposition together with all smaller free ranks; this is finite and
    exhaustive because homology summands of a connected-sum divisor are
    forced by the structure theorem.
    """
    pairs = []
    seen = set()
    primary = m.h2.primary_multiset()
    for rank in range(m.h2.free_rank + 1):
        for sub in _sub_multisets(primary):
            h2 = AbelianGroup.from_primary(rank, sub)
            for height in valid_heights(h2):
                d = Manifold5(h2, height)
                comp = divides5(d, m)
                if comp is not None and (d, comp) not in seen:
                    seen.add((d, comp))
                    pairs.append((d, comp))
    pairs.sort(key=lambda dc: (dc[0].sort_key(), dc[1].sort_key()))
    return pairs


def divisors5(m: Manifold5) -> list[Manifold5]:
    """All divisors of ``m`` (including ``S^5`` and ``m`` itself)."""
    out = []
    seen = set()
    for d, _ in divisor_pairs(m):
        if d not in seen:
            seen.add(d)
            out.append(d)
    return out


def irreducible5(m: Manifold5) -> bool:
    """A non-unit whose only divisors are ``S^5`` and itself."""
    if m == S5:
        return False
    return all(d == S5 or d == m for d in divisors5(m))


def factorize5(m: Manifold5) -> tuple[Manifold5, ...]:
    """A multiset of irreducibles whose connected sum is ``m``.

    ``S^5`` factors as the empty multiset.  Termination: each extracted
    irreducible strictly decreases free rank or torsion order, and there are
    no infinite divisor chains.
    """
    factors = []
    current = m
    while current != S5:
        pick = None
        for d, comp in divisor_pairs(current):
            if d != S5 and irreducible5(d):
                pick = (d, comp)
                break
        if pick is None:
            raise DomainError(f"no irreducible divisor of {current}")
        factors.append(pick[0])
        current = pick[1]
    return tuple(sorted(factors, key=Manifold5.sort_key))


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def _torsion_groups(max_order: int) -> Iterator[AbelianGroup]:
    """Every finite abelian group of order at most ``max_order``."""

    def partitions(n: int) -> Iterator[tuple[int, ...]]:
        if n == 0:
            yield ()
            return
        for first in range(n, 0, -1):
            for rest in partitions(n - first):
                if not rest or first >= rest[0]:
                    yield (first,) + rest

    from .abgroup import _factorint

    for order in range(1, max_order + 1):
        factorization = _factorint(order)
        choices = []
        for p, e in factorization:
            choices.append([(p, part) for part in partitions(e)])
        for combo in _cartesian(*choices):
            primary: dict[tuple[int, int], int] = {}
            for p, part in combo:
                for exp in part:
                    primary[(p, exp)] = primary.get((p, exp), 0) + 1
            yield AbelianGroup.from_primary(0, primary)


def enumerate5(max_rank: int, max_torsion_order: int, max_height: Height) -> tuple[Manifold5, ...]:
    """All valid manifolds within the bounds, duplicate-free, canonical order.

    Heights range over the finite values up to ``max_height``; passing
    ``Height(None)`` (infinity) additionally includes the infinite-height
    classes, which require positive free rank.
    """
    if max_rank < 0 or max_torsion_order < 1:
        raise DomainError("enumeration bounds must be non-negative")
    out = []
    for torsion in _torsion_groups(max_torsion_order):
        for rank in range(max_rank + 1):
            h2 = AbelianGroup(rank, torsion.invariant_factors)
            for height in valid_heights(h2):
                if height <= max_height:
                    out.append(Manifold5(h2, height))
    out.sort(key=Manifold5.sort_key)
    return tuple(out)


# ---------------------------------------------------------------------------
# Literals and the monoid adapter
# ---------------------------------------------------------------------------


def parse_manifold(text: str) -> Manifold5:
    """Parse a literal ``M5(H2=<group literal>, h=<nat|inf>)``."""
    s = text.strip()
    if not (s.startswith("M5(") and s.endswith(")")):
        raise DomainError(f"bad manifold literal {text!r}")
    body = s[3:-1]
    fields = {}
    for part in body.split(","):
        if "=" not in part:
            raise DomainError(f"bad manifold literal field {part!r}")
        key, _, value = part.partition("=")
        fields[key.strip()] = value.strip()
    if set(fields) != {"H2", "h"}:
        raise DomainError(f"manifold literal needs H2 and h, got {sorted(fields)}")
    return Manifold5(parse_group(fields["H2"]), Height.parse(fields["h"]))


def complexity5(m: Manifold5) -> int:
    """Rank plus torsion order minus one; zero exactly on ``S^5``."""
    return m.h2.free_rank + m.h2.torsion_order - 1


def monoid_spec() -> monoidkit.MonoidSpec:
    """The 5-manifold monoid packaged for the generic decision procedures.

    Sums can multiply torsion orders, so complexity is not strictly
    additive, but divisors never exceed the level of their product and the
    divisor hook enumerates them exactly.
    """

    def enumerate_level(level: int):
        return enumerate5(level, level + 1, INF if level else H0)

    return monoidkit.MonoidSpec(
        name="barden",
        compose=consum,
        neutral=S5,
        complexity=complexity5,
        enumerate_level=lambda level: [
            m for m in enumerate_level(level) if complexity5(m) <= level
        ],
        fmt=str,
        parse=parse_manifold,
        divisor_complete=True,
        divisors=divisor_pairs,
        description="smooth simply connected 5-manifolds under connected sum",
    )
