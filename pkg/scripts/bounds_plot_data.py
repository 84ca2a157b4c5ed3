"""Log-scale data for the bounds plot: lower, exact and upper bound on |P_n|.

Writes ``bounds.csv`` (n = 1..N) and ``tau.csv`` to the output directory.
Exact counts are computed up to ``--exact-max``; above that the published
values (n <= 9) fill the column.
"""

from __future__ import annotations

import argparse
import csv
import math
from dataclasses import dataclass
from pathlib import Path

from gridplans.bounds import bounds_csv
from gridplans.trees import growth_constants, spanning_tree_count


@dataclass
class Config:
    n_max: int = 12
    exact_max: int = 6
    out: Path = Path("results/bounds")


def run(cfg: Config) -> None:
    cfg.out.mkdir(parents=True, exist_ok=True)
    (cfg.out / "bounds.csv").write_text(bounds_csv(cfg.n_max, exact_max=cfg.exact_max), "utf-8")

    ln_b = float(growth_constants(20).log_b)
    with (cfg.out / "tau.csv").open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "tau", "log_tau_over_n2", "gap_to_limit"])
        for n in range(1, cfg.n_max + 1):
            tau = spanning_tree_count(n)
            r = math.log(tau) / (n * n)
            w.writerow([n, tau, repr(r), repr(ln_b - r)])
    print(f"wrote {cfg.out / 'bounds.csv'} and {cfg.out / 'tau.csv'}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    ap.add_argument("--exact-max", type=int, default=Config.exact_max)
    ap.add_argument("--out", type=Path, default=Config.out)
    a = ap.parse_args()
    run(Config(a.n_max, a.exact_max, a.out))


if __name__ == "__main__":
    main()
