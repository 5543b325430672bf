"""
From comparisons to weights
===========================

Sample hidden BTL weights, play k games on every edge of a random graph and
recover the weights by log least squares.
"""

# %%
from btlres.btl import empirical_frequencies, log_ratios, sample_weights, simulate_comparisons
from btlres.estimator import d_error, estimate_weights, sin_error
from btlres.generators import FamilySpec, erdos_renyi_p, generate_connected

n = 60
g, attempts = generate_connected(FamilySpec("erdos_renyi", n, p=erdos_renyi_p(n, 8), seed=11))
w = sample_weights(n, b=10, seed=1)
print(f"{g.m} edges after {attempts} attempt(s); realized skewness {w.skewness:.2f}")

# %%
for k in (10, 100, 1000, 10000):
    tally = simulate_comparisons(g, w, k, seed=k)
    freq = empirical_frequencies(tally)
    est = estimate_weights(g, log_ratios(freq))
    print(f"k={k:>5}  sin={sin_error(est.w_hat, w.w):.4f}  D={d_error(est.w_hat, w.w):.4f}"
          f"  half-win fixes={len(freq.corrected_edges)}")
