"""Replica-count saturation on G11: quality rises with R, then flattens.

Mirrors the benchmark CLI's sweep-replicas verb via the library API.
Expect normalized mean cut to climb steeply to about R = 10 and saturate
near 0.98 of the best-known value by R = 20.
"""

from dataclasses import replace

from ssqa.bench import RunConfig, run_trials

base = RunConfig(instance="G11", trials=5, seed=1)

print(f"{'R':>3}  {'mean':>7}  {'max':>4}  normalized")
for r in (1, 2, 5, 10, 15, 20, 25):
    summary = run_trials(replace(base, replicas=r))
    s = summary.summary_dict()
    print(f"{r:3d}  {s['mean']:7.1f}  {s['max']:4d}  {s['normalized_mean']:.4f}")
