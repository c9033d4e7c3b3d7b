"""Walkthrough: the monoid of simply connected 5-manifolds.

Connected sums, divisibility, factorization into irreducibles, the Wu
manifold's primality, and the failure of unique factorization.

Run with:  python3 demos/five_manifolds_demo.py
"""

from sumfactor import monoidkit
from sumfactor.barden import (
    INF,
    WU,
    consum,
    enumerate5,
    factorize5,
    parse_manifold,
    wu_complement,
    wu_divides,
)

print("=== The Wu manifold ===")
print(f"W = {WU}   (non-spin, height 1)")
ww = consum(WU, WU)
print(f"W # W = {ww}")
print(f"W divides W # W: {wu_divides(ww)}, complement {wu_complement(ww)}")

print()
print("=== Heights combine by the spin/min rule ===")
s2s3 = parse_manifold("M5(H2=Z, h=0)")
x2 = parse_manifold("M5(H2=Z/4+Z/4, h=2)")
print(f"{s2s3} # {x2} has height {consum(s2s3, x2).height}  (spin is neutral)")
print(f"{WU} # {x2} has height {consum(WU, x2).height}  (minimum of 1 and 2)")

print()
print("=== Factorization into irreducibles ===")
m = parse_manifold("M5(H2=Z^2+Z/2+Z/6+Z/6, h=1)")
print(f"{m} factors as")
folded = None
for factor in factorize5(m):
    print(f"  {factor}")
    folded = factor if folded is None else consum(folded, factor)
print(f"folding the factors back gives {folded} (equal: {folded == m})")

print()
print("=== Wu is prime at every tested bound ===")
spec = monoidkit.builtin_specs()["barden"]
verdict = monoidkit.is_prime(spec, WU, 8)
print(f"is_prime(W) at bound 8: {monoidkit.format_verdict(spec, verdict)}")

print()
print("=== ...but the monoid is not a unique factorization monoid ===")
verdict = monoidkit.ufm_check(spec, 20)
print(monoidkit.format_verdict(spec, verdict))
print("the witness has two genuinely different irreducible decompositions:")
element, f1, f2 = verdict.witness
print(f"  {element}")
print(f"  = {' # '.join(str(x) for x in f1)}")
print(f"  = {' # '.join(str(x) for x in f2)}")

print()
print("=== Bounded enumeration ===")
els = enumerate5(1, 8, INF)
print(f"{len(els)} classes with rank <= 1, torsion order <= 8, any height:")
for m in els:
    print(f"  {m}")
