"""Within-subjects statistics on a synthetic cohort.

Sixteen participants read at four effective-resolution levels; critical
print size worsens with degradation. The analysis mirrors the standard
pipeline: a Friedman test with Kendall's W across levels, then Wilcoxon
signed-rank post hocs over all six level pairs with Bonferroni correction.
"""

import numpy as np

from readacuity import stats

rng = np.random.default_rng(11)
levels = ["A", "B", "C", "D"]
true_cps = {"A": 0.10, "B": 0.18, "C": 0.35, "D": 0.62}

# 16 x 4 repeated measures, participant noise on a common trend
data = np.array([
    [true_cps[lv] + rng.normal(0, 0.06) for lv in levels]
    for _ in range(16)
])

fr = stats.friedman(data)
print(f"Friedman: chi2({fr.df}) = {fr.chi2:.1f}, p = {fr.p:.2g}, W = {fr.w:.3f}")

pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
results = [
    stats.wilcoxon_signed_rank(data[:, i], data[:, j])
    for i, j in pairs
]
adjusted = stats.adjust(results)  # Bonferroni over the six-pair family

print("\npairwise post hocs (exact signed-rank, Bonferroni m=6):")
for (i, j), res in zip(pairs, adjusted):
    marker = stats.significance_marker(res.p_adjusted)
    print(f"  {levels[i]} vs {levels[j]}:  W = {res.w_stat:5.1f}   "
          f"p_raw = {res.p_raw:.4f}   p_adj = {res.p_adjusted:.4f}  {marker}")

print("\nnote: W here is the smaller signed-rank sum; W = 0 means every "
      "participant moved the same way.")
