"""
Minimum number of free angles needed to reach a W state.

For each n the search tries ansatz shapes in increasing parameter count and
stops at the first one where some restart reaches fidelity 0.999. A straight
line is then fitted to count vs. n.

The default range takes about ten seconds. Pass a larger upper
limit to extend it, e.g. ``python demos/w_search_scan.py 12`` takes a couple
of minutes.
"""
import logging
import sys

from isingctl.wsearch import OptimizationConfig, min_params_scan

logging.basicConfig(level=logging.INFO, format="%(message)s")

n_to = int(sys.argv[1]) if len(sys.argv) > 1 else 7
scan = min_params_scan(3, n_to, OptimizationConfig(seed=0))
for rec in scan.records:
    res = rec.result
    print(f"n={rec.n:2d}  params={rec.min_param_count:2d}  (i={res.ansatz.i}, j={res.ansatz.j})"
          f"  fidelity={rec.fidelity:.6f}")
print(f"fit: count = {scan.slope:.3f} n + {scan.intercept:.3f}   r = {scan.r:.3f}")
