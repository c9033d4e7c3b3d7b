"""Walkthrough: exact abelian group arithmetic via Smith normal form.

Run with:  python3 demos/abelian_groups_demo.py
"""

from sumfactor.abgroup import (
    IntMatrix,
    cokernel,
    direct_sum,
    doubled_form,
    min_generators,
    parse_group,
    snf,
    split_summand,
)

print("=== Smith normal form ===")
m = IntMatrix.from_rows([[2, 4], [6, 8]])
diag, left, right = snf(m)
print(f"matrix        {m}")
print(f"diagonal      {diag}")
print(f"left * m * right = {left.mul(m).mul(right)}  (unimodular transforms)")

print()
print("=== Presenting groups by relation matrices ===")
# the exponent-sum matrix of <x,y | x^7 = y^2, yxy^-1 = x^-1>
q28_matrix = IntMatrix.from_rows([[7, -2], [2, 0]])
print(f"cokernel of {q28_matrix} is {cokernel(q28_matrix)}")

print()
print("=== Canonical forms make equality isomorphism ===")
a = parse_group("Z/6+Z/4")
print(f"Z/6 + Z/4 canonicalizes to {a}  (torsion order {a.torsion_order})")
print(f"direct sum with Z/2: {direct_sum(a, parse_group('Z/2'))}")

print()
print("=== Summand splitting ===")
whole = parse_group("Z+Z/2+Z/12")
part = parse_group("Z/2+Z/2")
print(f"split {part} out of {whole}: {split_summand(whole, part)}")
print(f"split Z/2 out of Z/4+Z/4: {split_summand(parse_group('Z/4+Z/4'), parse_group('Z/2'))}")
print("(Z/2 is not a primary summand of (Z/4)^2, so no complement exists)")

print()
print("=== Doubled shapes ===")
t = parse_group("Z/3+Z/3+Z/2")
print(f"{t} = A + A + Z/2 with A = {doubled_form(t, plus_z2=True)}")
print(f"minimal generators of Z^2+Z/6: {min_generators(parse_group('Z^2+Z/6'))}")
