"""Compare the extended-precision oracle with the leading-order formulas
in every region at c = 4, and show the recurrence-coefficient limits.

Run with ``python3 demos/regime_comparison.py``.
"""
from dlaguerre import RunConfig, build_asymptotics, coefficients, run_comparison
from dlaguerre.equilibrium import ModelParams
from dlaguerre.oracle import LatticeMeasure, build_recurrence

ctx = build_asymptotics(4.0, 0.0)
s = ctx.support
print(f"a = {s.a:.12g}, b = {s.b:.12g}, delta = {ctx.delta:.4g}\n")

print("regime     n    points  max|ratio-1|  median   tol")
for reg in ("void", "band", "saturated", "origin", "edge_a", "edge_b"):
    for n in (24, 48):
        rep = run_comparison(RunConfig(n=n, regime=reg, grid=12), ctx=ctx)
        sm = rep.summary
        print(f"{reg:<10} {n:<4} {len(rep.points):<7} {sm['max_err']:<13.3g} "
              f"{sm['median_err']:<8.3g} {sm['threshold']:.3g}")

co = coefficients(ctx)
n = 64
t = build_recurrence(LatticeMeasure(ModelParams(0.0, 4.0, n, n)), n)
print(f"\nrecurrence coefficients at n = {n}")
print(f"  A2 oracle {float(t.A2[n]):.10g}   formula {co.A2_limit:.10g}   "
      f"(b-a)^2/16 = {(s.b - s.a) ** 2 / 16:.10g}")
print(f"  B  oracle {float(t.B[n]):.10g}   formula {co.B_limit:.10g}   "
      f"(a+b)/2 = {(s.a + s.b) / 2:.10g}")
