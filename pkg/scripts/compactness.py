"""Cut-score histograms and compact-plan counts against their binomial bound.

For each n, prints the exact histogram summary (min, max, mean cut), then
|C_n(eps)| next to compact_count_upper(n, eps) on a grid of eps. The
minimum cut is shown beside n^1.5 for comparison.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from gridplans.bounds import compact_count_upper, epsilon_threshold
from gridplans.enumeration import count_compact_plans, cut_histogram


@dataclass
class Config:
    n_values: list[int] = field(default_factory=lambda: [2, 3, 4, 5, 6])
    eps: list[float] = field(default_factory=lambda: [0.036, 0.05, 0.1, 0.25, 0.5, 1.0])


def run(cfg: Config) -> None:
    w = csv.writer(sys.stdout, lineterminator="\n")
    print(f"# eps threshold: {epsilon_threshold().root!r}")
    w.writerow(["n", "plans", "min_cut", "n_pow_1.5", "max_cut", "mean_cut"])
    hists = {}
    for n in cfg.n_values:
        h = hists[n] = cut_histogram(n)
        mean = Fraction(sum(c * v for c, v in h.items()), h.total)
        w.writerow([n, h.total, min(h), f"{n ** 1.5:.2f}", max(h), f"{float(mean):.4f}"])
    print()
    w.writerow(["n", "eps", "compact_plans", "compact_upper", "fraction_of_plans"])
    for n, h in hists.items():
        for eps in cfg.eps:
            k = count_compact_plans(n, eps, hist=h)
            w.writerow([n, eps, k, compact_count_upper(n, eps), f"{k / h.total:.6f}"])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=Config().n_values)
    ap.add_argument("--eps", type=float, nargs="+", default=Config().eps)
    a = ap.parse_args()
    run(Config(a.n, a.eps))


if __name__ == "__main__":
    main()
