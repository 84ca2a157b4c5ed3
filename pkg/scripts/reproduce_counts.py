"""Exact |P_n| for n = 1..N with wall times, next to the published values.

    python scripts/reproduce_counts.py --n-max 6
    python scripts/reproduce_counts.py --n-max 7 --threads 4   # a few minutes
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass

from gridplans.bounds import known_counts
from gridplans.enumeration import count_plans, default_threads


@dataclass
class Config:
    n_max: int = 6
    threads: int = default_threads()


def run(cfg: Config) -> bool:
    published = known_counts()
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["n", "count", "published", "match", "seconds"])
    ok = True
    for n in range(1, cfg.n_max + 1):
        start = time.monotonic()
        value = count_plans(n, threads=cfg.threads)
        secs = time.monotonic() - start
        match = value == published.get(n)
        ok &= match
        w.writerow([n, value, published.get(n, ""), match, f"{secs:.2f}"])
        sys.stdout.flush()
    return ok


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    ap.add_argument("--threads", type=int, default=Config.threads)
    args = ap.parse_args()
    sys.exit(0 if run(Config(args.n_max, args.threads)) else 1)


if __name__ == "__main__":
    main()
