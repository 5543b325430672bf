"""
A small k sweep with CSV and SVG output
=======================================

Mean sin error against k on a 2D lattice, with the predicted 1/sqrt(k)
line for comparison. Files go to ``sweep_out/`` in the working directory.
"""

# %%
import math
from pathlib import Path

from btlres.experiment import ExperimentConfig, emit_csv, emit_svg, fit_loglog_slope, run_experiment

cfg = ExperimentConfig("grid2d", "k", (10, 100, 1000, 10000), b=5, trials=20, seed=7, n=64)
res = run_experiment(cfg)
for r in res.rows:
    ratio = r.mean_error / math.sqrt(r.mean_omega_avg / r.value)
    print(f"k={r.value:>6.0f}  error={r.mean_error:.4f}  term_max={r.bound.term_max:.4f}  ratio={ratio:.3f}")
print("slope:", round(fit_loglog_slope(res), 3))

# %%
out = Path("sweep_out")
out.mkdir(exist_ok=True)
emit_csv(res, out / "grid2d_k.csv")
emit_svg(res, out / "grid2d_k.svg", reference_slope=-0.5, xlabel="k")
