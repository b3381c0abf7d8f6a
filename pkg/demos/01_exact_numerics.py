"""
Exact numbers: rationals, quadratic surds and circles on the real axis.

Every quantity in stabwalls is a Fraction.  Numbers with one square root,
such as the critical abscissa 2 - sqrt(5), are Surd values; they are
compared by squaring, never by taking a floating root.
"""

from __future__ import annotations

from fractions import Fraction as Q

from stabwalls import CircleRelation, Surd, circle_pair_classify, cmp_surd

# --- surds normalise and compare exactly
c0 = Surd(2, -1, 5)
print("C0 =", c0, "~", float(c0))
print("sqrt(8/9) normalises to", Surd.sqrt(Q(8, 9)))
print("sqrt(4) vs 2:", cmp_surd(Surd.sqrt(4), 2).name)
print("2 - sqrt(2) vs 1/2:", cmp_surd(Surd(2, -1, 2), Q(1, 2)).name)

# a close call: 1 + sqrt(2) against 99/41 (they differ by about 1e-4)
print("1 + sqrt(2) vs 99/41:", cmp_surd(Surd(1, 1, 2), Q(99, 41)).name)

# floor, ceil and rational brackets
print("floor/ceil of 2 - sqrt(5):", c0.floor(), c0.ceil())
lo, hi = c0.bracket(20)
print("bracket:", lo, "<= C0 <=", hi)

# --- circle pairs
for args in [(0, 4, 0, 1), (Q(-1, 2), Q(9, 4), Q(-1, 6), Q(25, 36)), (0, 1, 2, 1), (0, 1, 1, 1), (0, 1, 3, 1)]:
    print(f"circle pair {tuple(str(a) for a in args)}: {circle_pair_classify(*args).value}")

assert circle_pair_classify(0, 4, 1, 1) is CircleRelation.INTERNALLY_TANGENT
