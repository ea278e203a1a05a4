"""Order statistics as series/parallel system lifetimes.

The r-th order statistic of n component lifetimes answers reliability
questions directly: a series system fails with its first component
(r = 1), a parallel system with its last (r = n).
"""

import numpy as np

from pgduse import (
    ModelKind,
    OrderSpec,
    PgduseParams,
    median,
    order_stat_cdf,
    order_stat_pdf,
    quantile,
    system_lifetime_cdf,
)

p = PgduseParams(lam=0.034, theta=3.8)  # roughly the fitted bearing model
horizon = np.array([20.0, 50.0, 80.0, 120.0, 200.0])

print("failure probability by time t for systems of 4 bearings:")
print("  t        single     series-of-4  parallel-of-4")
for t in horizon:
    single = system_lifetime_cdf(p, 1, "series", t)
    series = system_lifetime_cdf(p, 4, "series", t)
    parallel = system_lifetime_cdf(p, 4, "parallel", t)
    print(f"  {t:6.1f}   {single:.6f}   {series:.6f}     {parallel:.6f}")

print("\nmedian lifetimes (millions of revolutions):")
for n, topology in ((1, "series"), (4, "series"), (4, "parallel")):
    # invert the system cdf by bisection on top of the closed-form quantile
    lo, hi = 0.0, quantile(ModelKind.PGDUSE, p, 1 - 1e-9)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if system_lifetime_cdf(p, n, topology, mid) < 0.5:
            lo = mid
        else:
            hi = mid
    label = "single" if n == 1 else f"{topology}-of-{n}"
    print(f"  {label:14s} {0.5 * (lo + hi):9.3f}")
print(f"  (single-unit closed form: {median(p):9.3f})")

print("\ndensity of the middle order statistic (rank 2 of 3) vs the parent:")
spec = OrderSpec(3, 2)
for t in (20.0, 60.0, 100.0):
    print(f"  t={t:5.1f}  parent={order_stat_pdf(p, OrderSpec(1, 1), t):.6f}"
          f"  rank-2-of-3={order_stat_pdf(p, spec, t):.6f}")

m = median(p)
print(f"\nat the parent median ({m:.3f}), P(rank 2 of 3 <= median) = "
      f"{order_stat_cdf(p, spec, m):.6f}  (binomial symmetry makes it exactly 1/2)")
