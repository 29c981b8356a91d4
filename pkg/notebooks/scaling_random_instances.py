"""
Separator size on random unit-disk graphs
=========================================

Unit disks are dropped uniformly into a square.  For each of k random
slopes the best balanced line of that slope is found, and the k crossing
counts are averaged.  On a log-log plot against the edge count the points
line up with slope close to 1/2; larger k mainly shrinks the variance.
"""

import tempfile
from pathlib import Path

from disksever.harness import ExperimentConfig, loglog_slope, run_experiment1, summarize

out = Path(tempfile.mkdtemp()) / "scaling.csv"
config = ExperimentConfig(n_values=list(range(500, 3001, 500)), L=25.0, k_values=[1, 20],
                          repetitions=3, seed=0, output=str(out))
rows = run_experiment1(config)

for (algo, k), pts in summarize(rows).items():
    slope = loglog_slope([(m, mean) for m, mean, _ in pts])
    print(f"{algo} k={k}: fitted exponent {slope:.3f}")
    for m, mean, var in pts:
        print(f"    m={m:7d}  mean size {mean:7.2f}  variance {var:6.2f}")

print(f"rows written to {out}, plot in {out.with_suffix('.svg')}")
