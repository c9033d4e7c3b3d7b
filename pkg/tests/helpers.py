"""Independent oracles shared by the test modules.

These deliberately avoid the library's own algorithms: the Smith chain is
checked against determinantal divisors (gcds of k x k minors), determinants
come from cofactor expansion, and group enumeration is done by partitions.
"""

from __future__ import annotations

from itertools import combinations
from math import gcd, prod

from sumfactor.abgroup import AbelianGroup, IntMatrix


def det(rows: list[list[int]]) -> int:
    """Exact determinant by cofactor expansion (test sizes are tiny)."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j, v in enumerate(rows[0]):
        if v == 0:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        total += (-1) ** j * v * det(minor)
    return total


def determinantal_divisors(m: IntMatrix) -> list[int]:
    """The gcds ``D_k`` of all k x k minors, for k = 1 .. min(rows, cols)."""
    rows = m.to_rows()
    out = []
    for k in range(1, min(m.rows, m.cols) + 1):
        g = 0
        for ri in combinations(range(m.rows), k):
            for ci in combinations(range(m.cols), k):
                sub = [[rows[i][j] for j in ci] for i in ri]
                g = gcd(g, det(sub))
        out.append(g)
    return out


def smith_chain_oracle(m: IntMatrix) -> list[int]:
    """Invariant chain derived purely from determinantal divisors."""
    divisors = determinantal_divisors(m)
    chain = []
    prev = 1
    for d in divisors:
        if d == 0:
            chain.append(0)
            # all later divisor gcds vanish too
            prev = 0
        else:
            chain.append(d // prev)
            prev = d
    return chain


def partitions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(n, 0, -1):
        for rest in partitions(n - first):
            if not rest or first >= rest[0]:
                yield (first,) + rest


def torsion_groups_of_order(order: int) -> list[AbelianGroup]:
    """Every finite abelian group of exactly the given order."""
    from sumfactor.abgroup import _factorint

    factorization = _factorint(order)
    pools = []
    for p, e in factorization:
        pools.append([(p, part) for part in partitions(e)])
    groups = [dict()]
    for pool in pools:
        new = []
        for base in groups:
            for p, part in pool:
                primary = dict(base)
                for exp in part:
                    primary[(p, exp)] = primary.get((p, exp), 0) + 1
                new.append(primary)
        groups = new
    return [AbelianGroup.from_primary(0, g) for g in groups]


def torsion_groups_up_to(max_order: int) -> list[AbelianGroup]:
    out = []
    for order in range(1, max_order + 1):
        out.extend(torsion_groups_of_order(order))
    return out


def group_order(g: AbelianGroup) -> int:
    assert g.free_rank == 0
    return prod(g.invariant_factors)
