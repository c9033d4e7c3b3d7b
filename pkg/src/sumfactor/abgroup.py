"""Exact arithmetic for finitely generated abelian groups.

Everything here is integer arithmetic.  Groups are kept in invariant-factor
canonical form (an ascending divisibility chain ``d1 | d2 | ... | dm`` with
every ``di >= 2``), so value equality coincides with isomorphism.  Torsion
data is carried as the exact integer order of the torsion subgroup, never as
a floating-point logarithm; additivity statements about ``ln #T`` become
exact multiplicative statements about ``#T``.

The Smith normal form routine is the single gateway through which relation
matrices become canonical groups.  It works over arbitrary-precision
integers with no modular shortcuts; entry growth on desk-scale inputs is
acceptable and correctness is primary.

Group literals use the textual grammar ``Z^r + Z/d1 + Z/d2 + ...``.  Terms
may appear in any order on input; canonical output lists the free part
first, then torsion in ascending divisibility, omits ``Z^0`` and empty
torsion, and prints the trivial group as ``1``.

>>> from sumfactor.abgroup import parse_group, direct_sum
>>> str(direct_sum(parse_group("Z/6"), parse_group("Z/4")))
'Z/2+Z/12'
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Iterable, Mapping, Optional

from .errors import DomainError


class GroupLiteralError(DomainError):
    """A textual group literal failed to parse."""


# ---------------------------------------------------------------------------
# Integer matrices and Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """An integer matrix stored densely in row-major order.

    Entries are plain Python integers, hence arbitrary precision.
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], cols: Optional[int] = None) -> "IntMatrix":
        """Build a matrix from an iterable of rows.

        ``cols`` disambiguates the width of a matrix with zero rows.
        """
        row_list = [tuple(int(v) for v in row) for row in rows]
        if row_list:
            width = len(row_list[0])
            if any(len(r) != width for r in row_list):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError("cols does not match row width")
        else:
            width = 0 if cols is None else cols
        flat = tuple(v for row in row_list for v in row)
        return cls(len(row_list), width, flat)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                out.append(sum(r[k] * other.entry(k, j) for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def __str__(self) -> str:
        return "[" + ",".join("[" + ",".join(map(str, self.row(i))) + "]" for i in range(self.rows)) + "]"


def snf(m: IntMatrix) -> tuple[tuple[int, ...], IntMatrix, IntMatrix]:
    """Smith normal form: return ``(diag, left, right)``.

    ``left`` and ``right`` are unimodular and ``left * m * right`` is the
    diagonal matrix whose diagonal is ``diag``.  Diagonal entries are
    non-negative, satisfy ``diag[i] | diag[i+1]``, and zeros trail.  The
    returned chain has length ``min(rows, cols)``; empty matrices yield an
    empty chain.
    """
    nr, nc = m.rows, m.cols
    a = m.to_rows()
    left = IntMatrix.identity(nr).to_rows()
    right = IntMatrix.identity(nc).to_rows()

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            a[i], a[j] = a[j], a[i]
            left[i], left[j] = left[j], left[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in right:
                row[i], row[j] = row[j], row[i]

    def add_row(src: int, dst: int, q: int) -> None:
        # row[dst] += q * row[src], mirrored into the left transform
        if q:
            asrc, adst = a[src], a[dst]
            for j in range(nc):
                adst[j] += q * asrc[j]
            lsrc, ldst = left[src], left[dst]
            for j in range(nr):
                ldst[j] += q * lsrc[j]

    def add_col(src: int, dst: int, q: int) -> None:
        if q:
            for row in a:
                row[dst] += q * row[src]
            for row in right:
                row[dst] += q * row[src]

    def negate_row(i: int) -> None:
        a[i] = [-v for v in a[i]]
        left[i] = [-v for v in left[i]]

    limit = min(nr, nc)
    for t in range(limit):
        # Pivot: the entry of smallest non-zero magnitude in the submatrix.
        piv = None
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = a[i][j]
                if v and (best is None or abs(v) < best):
                    piv, best = (i, j), abs(v)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])

        while True:
            # Euclidean descent down the pivot column.
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            # Column below is clear; now the pivot row.  Column operations
            # here never touch the (already zero) entries below the pivot
            # unless a swap pulls in a fresh column, which re-enters the loop.
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # Enforce that the pivot divides the entire remaining submatrix,
            # which is what makes the divisibility chain come out for free.
            offender = None
            for i in range(t + 1, nr):
                if any(v % a[t][t] for v in a[i][t + 1 :]):
                    offender = i
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        if a[t][t] < 0:
            negate_row(t)

    diag = tuple(a[i][i] for i in range(limit))
    return diag, IntMatrix.from_rows(left, cols=nr), IntMatrix.from_rows(right, cols=nc)


# ---------------------------------------------------------------------------
# Canonical abelian groups
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _factorint(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization ``((p, e), ...)`` of ``n >= 1`` by trial division."""
    if n < 1:
        raise ValueError("can only factor positive integers")
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e:
                out.append((p, e))
        f += 6
    if n > 1:
        out.append((n, 1))
    return tuple(sorted(out))


def _invariant_factors_from_primary(primary: Mapping[tuple[int, int], int]) -> tuple[int, ...]:
    """Recombine a primary multiset ``{(p, e): multiplicity}`` into the chain."""
    by_prime: dict[int, list[int]] = {}
    for (p, e), mult in primary.items():
        if mult < 0:
            raise ValueError("negative multiplicity in primary multiset")
        if mult:
            by_prime.setdefault(p, []).extend([e] * mult)
    width = max((len(v) for v in by_prime.values()), default=0)
    factors = []
    for slot in range(width):
        d = 1
        for p, exps in by_prime.items():
            exps_desc = sorted(exps, reverse=True)
            if slot < len(exps_desc):
                d *= p ** exps_desc[slot]
        factors.append(d)
    return tuple(reversed(factors))


@dataclass(frozen=True)
class AbelianGroup:
    """A finitely generated abelian group in invariant-factor canonical form.

    ``free_rank`` is the rank of the free part; ``invariant_factors`` is the
    ascending divisibility chain of the torsion part, every entry at least 2.
    Because the form is canonical, ``==`` means isomorphism.

    >>> AbelianGroup(1, (2, 6))
    AbelianGroup(free_rank=1, invariant_factors=(2, 6))
    >>> AbelianGroup(0, (2, 6)).torsion_order
    12
    """

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        for d in self.invariant_factors:
            if d < 2:
                raise ValueError("invariant factors must all be at least 2")
        for d, e in zip(self.invariant_factors, self.invariant_factors[1:]):
            if e % d:
                raise ValueError("invariant factors must form a divisibility chain")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_orders(cls, free_rank: int, orders: Iterable[int]) -> "AbelianGroup":
        """Build from an arbitrary list of finite cyclic orders (each >= 1)."""
        primary: dict[tuple[int, int], int] = {}
        for n in orders:
            if n < 1:
                raise ValueError("cyclic orders must be positive")
            for p, e in _factorint(n):
                primary[(p, e)] = primary.get((p, e), 0) + 1
        return cls(free_rank, _invariant_factors_from_primary(primary))

    @classmethod
    def from_primary(cls, free_rank: int, primary: Mapping[tuple[int, int], int]) -> "AbelianGroup":
        return cls(free_rank, _invariant_factors_from_primary(primary))

    # -- views ----------------------------------------------------------------

    @property
    def torsion_order(self) -> int:
        """Exact order of the torsion subgroup (1 for torsion-free groups)."""
        return prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def primary_multiset(self) -> dict[tuple[int, int], int]:
        """The multiset of prime-power summands ``{(p, e): multiplicity}``.

        Reconstructing invariant factors from this view is the identity.
        """
        return dict(_primary_of_chain(self.invariant_factors))

    def torsion_part(self) -> "AbelianGroup":
        return AbelianGroup(0, self.invariant_factors)

    def sort_key(self) -> tuple:
        return (self.free_rank, len(self.invariant_factors), self.invariant_factors)

    def __str__(self) -> str:
        terms = []
        if self.free_rank == 1:
            terms.append("Z")
        elif self.free_rank > 1:
            terms.append(f"Z^{self.free_rank}")
        terms.extend(f"Z/{d}" for d in self.invariant_factors)
        return "+".join(terms) if terms else "1"


@lru_cache(maxsize=None)
def _primary_of_chain(chain: tuple[int, ...]) -> tuple[tuple[tuple[int, int], int], ...]:
    primary: dict[tuple[int, int], int] = {}
    for d in chain:
        for p, e in _factorint(d):
            primary[(p, e)] = primary.get((p, e), 0) + 1
    return tuple(sorted(primary.items()))


TRIVIAL = AbelianGroup()
Z = AbelianGroup(1)


def cyclic(n: int) -> AbelianGroup:
    """The cyclic group of order ``n >= 1``."""
    return AbelianGroup.from_orders(0, [n])


def free(rank: int) -> AbelianGroup:
    return AbelianGroup(rank)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def cokernel(m: IntMatrix) -> AbelianGroup:
    """The canonical form of ``Z^cols`` modulo the row span of ``m``.

    Rows are relations among ``cols`` generators: invariant factors are the
    Smith diagonal entries that are at least 2, and the free rank is the
    number of generators minus the number of non-zero diagonal entries.
    """
    diag, _, _ = snf(m)
    nonzero = [d for d in diag if d]
    factors = tuple(d for d in nonzero if d >= 2)
    return AbelianGroup(m.cols - len(nonzero), factors)


def direct_sum(a: AbelianGroup, b: AbelianGroup) -> AbelianGroup:
    """Direct sum, recanonicalized through the primary decomposition."""
    primary = a.primary_multiset()
    for pe, mult in b.primary_multiset().items():
        primary[pe] = primary.get(pe, 0) + mult
    return AbelianGroup.from_primary(a.free_rank + b.free_rank, primary)


def direct_sum_all(groups: Iterable[AbelianGroup]) -> AbelianGroup:
    out = TRIVIAL
    for g in groups:
        out = direct_sum(out, g)
    return out


def split_summand(whole: AbelianGroup, part: AbelianGroup) -> Optional[AbelianGroup]:
    """Return ``D`` with ``whole = part (+) D`` when one exists, else ``None``.

    By the structure theorem a complement exists exactly when the free rank
    of ``part`` does not exceed that of ``whole`` and the primary multiset of
    ``part`` is contained in that of ``whole``; ``D`` is the difference.
    """
    if part.free_rank > whole.free_rank:
        return None
    whole_primary = whole.primary_multiset()
    for pe, mult in part.primary_multiset().items():
        if whole_primary.get(pe, 0) < mult:
            return None
        whole_primary[pe] -= mult
    return AbelianGroup.from_primary(whole.free_rank - part.free_rank, whole_primary)


def doubled_form(t: AbelianGroup, plus_z2: bool = False) -> Optional[AbelianGroup]:
    """Halve a finite group presented as ``A (+) A`` or ``A (+) A (+) Z/2``.

    With ``plus_z2`` false, returns ``A`` such that ``t = A (+) A`` exactly
    when every primary multiplicity is even.  With ``plus_z2`` true, one
    ``Z/2`` summand is removed first.  Returns ``None`` when ``t`` is not of
    the requested shape; inputs with positive free rank are rejected.
    """
    if t.free_rank:
        raise ValueError("doubled_form expects a finite group")
    primary = t.primary_multiset()
    if plus_z2:
        if primary.get((2, 1), 0) < 1:
            return None
        primary[(2, 1)] -= 1
    if any(mult % 2 for mult in primary.values()):
        return None
    return AbelianGroup.from_primary(0, {pe: mult // 2 for pe, mult in primary.items()})


def min_generators(a: AbelianGroup) -> int:
    """Minimal size of a generating set (exact for abelian groups)."""
    return a.free_rank + len(a.invariant_factors)


# ---------------------------------------------------------------------------
# Textual literals
# ---------------------------------------------------------------------------


def parse_group(text: str) -> AbelianGroup:
    """Parse a group literal like ``Z^2+Z/2+Z/12`` (terms in any order)."""
    s = text.strip()
    if not s:
        raise GroupLiteralError("empty group literal")
    if s == "1":
        return TRIVIAL
    free_rank = 0
    orders: list[int] = []
    for raw in s.split("+"):
        term = raw.strip()
        if term == "Z":
            free_rank += 1
        elif term.startswith("Z^"):
            try:
                k = int(term[2:])
            except ValueError:
                raise GroupLiteralError(f"bad free-part term {term!r}") from None
            if k < 0:
                raise GroupLiteralError(f"bad free-part term {term!r}")
            free_rank += k
        elif term.startswith("Z/"):
            try:
                d = int(term[2:])
            except ValueError:
                raise GroupLiteralError(f"bad torsion term {term!r}") from None
            if d < 1:
                raise GroupLiteralError(f"bad torsion term {term!r}")
            if d > 1:
                orders.append(d)
        else:
            raise GroupLiteralError(f"unrecognized term {term!r}")
    return AbelianGroup.from_orders(free_rank, orders)


def format_group(a: AbelianGroup) -> str:
    return str(a)
