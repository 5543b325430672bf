"""
Two ways to score an estimate
=============================

The sine of the angle ignores scale. The D criterion compares 1-normalized
vectors, and is sandwiched between sin and a multiple of it.
"""

# %%
import math

import numpy as np

from btlres.estimator import d_error, sin_error

rng = np.random.default_rng(0)
worst = 0.0
for _ in range(2000):
    n, b = int(rng.integers(2, 40)), 10.0
    x = np.exp(rng.uniform(0, math.log(b), n))
    y = np.exp(rng.uniform(0, math.log(b), n))
    s, d = sin_error(x, y), d_error(x, y)
    worst = max(worst, d / (math.sqrt(2) * min(1 + math.sqrt(n), 1 + math.sqrt(b)) * s))
    assert s <= d * (1 + 1e-12)
print("largest D / upper bound seen:", round(worst, 4))

# %%
x = np.array([1.0, 2.0, 4.0])
print(sin_error(x, 5 * x), d_error(5 * x, x))
