"""Weyl groups, the C^I partition and the Steinberg basis for A1 and A2."""

from kcompact.laurent import Laurent
from kcompact.steinberg import FlagKClass, flag_multiply, steinberg_basis, structure_constants
from kcompact.weyl import RootSystem, c_sets, subsets, weyl_group

a2 = RootSystem.from_type("A2")
W = weyl_group(a2)
print("|W(A2)| =", len(W))
for w in W:
    print(f"  {w.word_str():8s} length {w.length}")

# every element lands in exactly one C^I
for I, members in sorted(c_sets(a2).items(), key=lambda kv: sorted(kv[0])):
    print("C^", sorted(i + 1 for i in I), [w.word_str() for w in members])

B = steinberg_basis(a2)
for w, f in zip(W, B.elements):
    print(f"f_{w.word_str():6s} = {f!r}")

# expand a character; coefficients are W-invariant
g = Laurent(2, {(-2, 1): 1, (0, -1): 3})
coeffs = B.expand(g)
print("g =", g)
for w, c in zip(W, coeffs):
    if c:
        print(f"  coefficient of f_{w.word_str()}: {c!r}")
assert B.combine(coeffs) == g

a1 = RootSystem.from_type("A1")
a = structure_constants(a1)
print(f"A1: f_s * f_s = ({a[(1, 1, 0)]!r}) f_e + ({a[(1, 1, 1)]!r}) f_s")

# in K(P^1) the class of a point squares to zero
d = FlagKClass.basis(a1, 0) - FlagKClass.basis(a1, 1)
print("(fbar_e - fbar_s)^2 =", flag_multiply(d, d).coeffs)
