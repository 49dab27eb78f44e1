"""A short tour of exact arithmetic in K[x; sigma, delta] and K(x; sigma, delta).

Three stops: the twisted product rule on the Weyl pair, left fractions
with a common denominator, and the normalization that absorbs an inner
derivation into a change of variable.

Run:  python3 demos/ore_arithmetic_tour.py
"""

from orefree import (
    FunctionField, OreFraction, OrePoly, SkewDerivation, SkewEndo, SkewPair,
    lclm, normalize_presentation, weyl_check,
)

ff = FunctionField(0, ["t"])
t = ff.var(0)

print("-- stop 1: the product rule x*a = a*x + a' under d/dt")
ddt = SkewPair.derivation(SkewDerivation(ff, [ff.one()], SkewEndo.identity(ff)))
x = OrePoly.x(ddt)
tp = OrePoly.const(ddt, t)
print("  x * t        = %s" % (x * tp))
print("  x * t^2      = %s" % (x * tp * tp))
y = OreFraction.from_ratfunc(ddt, t)
z = OreFraction.from_poly(x)
print("  weyl_check(t, x): %s" % bool(weyl_check(y, z)))
print()

print("-- stop 2: least common left multiples under the shift")
shift = SkewPair.automorphism(SkewEndo(ff, [t + 1], [t - 1]))
f = OrePoly(shift, [t, ff.one()])            # x + t
g = OrePoly(shift, [-t, ff.one()])           # x - t
m, cf, cg = lclm(f, g)
print("  f = %s" % f)
print("  g = %s" % g)
print("  lclm = %s" % m)
print("  cofactors reassemble it: %s / %s" % (cf * f == m, cg * g == m))
print()

print("-- stop 3: absorbing an inner derivation")
sig = SkewEndo(ff, [t + 1], [t - 1])
mixed = SkewPair(sig, SkewDerivation(ff, [t], sig))
pure, shift_c, report = normalize_presentation(mixed)
print("  input: sigma(t) = t + 1 with delta(t) = t")
print("  " + report)
xp = OrePoly(mixed, [shift_c, ff.one()])
lhs = xp * OrePoly.const(mixed, t)
rhs = OrePoly.const(mixed, t + 1) * xp
print("  x'*t == (t+1)*x' holds: %s" % (lhs == rhs))
