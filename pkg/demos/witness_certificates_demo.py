"""Walkthrough: machine-checkable non-cancellation certificates.

Each certificate packages two manifolds that are not homotopy equivalent
yet become diffeomorphic after a stabilizing connected summand, together
with the replayable obstruction and the classification results applied.

Run with:  python3 demos/witness_certificates_demo.py
"""

from sumfactor.grouppres import metzler_distinct, metzler_presentation, q28_presentations
from sumfactor.mfdexpr import make_witness

print("=== The quadratic-residue engine ===")
pres = metzler_presentation(5, 3, 2)
print(f"twisted presentation of (Z/5)^3: {pres}")
distinct, qr = metzler_distinct(5, 1, 2)
print(f"q = 1 versus q' = 2 mod 5: distinct = {distinct}  ({qr.summary()})")

print()
print("=== A dimension-5 certificate from that pair ===")
print(make_witness("metzler", 5, p=5, s=3, q=1, q2=2).serialize())

print()
print("=== Simply connected examples from mapping cones, dimension 17 ===")
print(make_witness("cone", 17, a=1, b=5).serialize())

print()
print("=== The quaternionic pair in dimension 4 (existential stabilization) ===")
p1, p2, cert = q28_presentations()
print(f"P1 = {p1}")
print(f"P2 = {p2}")
print(f"equal deficiencies {cert.deficiencies}, equal abelianizations "
      f"{cert.abelianizations[0]}")
print()
print(make_witness("q28", 4).serialize())
