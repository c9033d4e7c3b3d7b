"""Walkthrough: bounded decision procedures on abstract commutative monoids.

The sign-collapsed integers show that unique factorization does not force
cancellation; two fragments of the highly connected classification show
how primality and unique factorization fail there.

Run with:  python3 demos/monoid_predicates_demo.py
"""

from sumfactor import monoidkit as mk

specs = mk.builtin_specs()

print("=== Nonzero integers modulo x ~ -x for |x| >= 2 ===")
r4 = specs["remark4"]
print(f"carrier: {{1, -1}} union {{n >= 2}}; units: both signs of 1")
print(f"is_unit(-1):        {mk.format_verdict(r4, mk.is_unit(r4, -1, 10))}")
print(f"ufm_check at 30:    {mk.format_verdict(r4, mk.ufm_check(r4, 30))}")
print(f"is_cancellable(2):  {mk.format_verdict(r4, mk.is_cancellable(r4, 2, 10))}")
print("unique factorization holds, yet 2 * 1 = 2 * (-1) with 1 != -1")

print()
print("=== Rank and signature: the even-dimensional definite-form argument ===")
we = specs["wall-even"]
v = mk.is_prime(we, (2, 0), 8)
print(f"is_prime(S^k x S^k class = (2,0)): {mk.format_verdict(we, v)}")
a, b = v.witness
print(f"the hyperbolic class divides {a} + {b} = definite # its reverse,")
print("but divides neither definite summand")

print()
print("=== The type bit: an AND, not a homomorphism ===")
wt = specs["wall-type"]
v = mk.ufm_check(wt, 4)
print(f"ufm_check: {mk.format_verdict(wt, v)}")

print()
print("=== Stabilized wedge tokens ===")
sw = specs["stable-wedge"]
v = mk.is_cancellable(sw, sw.parse("S"), 5)
print(f"is_cancellable(S): {mk.format_verdict(sw, v)}")
print("X + S = Y + S encodes that the two complexes' thickening boundaries")
print("become diffeomorphic after one stabilizing sphere-product summand")

print()
print("=== Verdicts are honest about their horizon ===")
nat = specs["nat-add"]
print(f"is_unit(1) over (N, +): {mk.format_verdict(nat, mk.is_unit(nat, 1, 99))}")
print("(definite: complexity is strictly additive, nothing positive cancels)")
