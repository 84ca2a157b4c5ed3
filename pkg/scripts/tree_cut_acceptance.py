"""How often does tree-cut sampling produce a balanced plan?

A tree splits into n-cell pieces in at most one way: edge (v, parent v) must
be cut exactly when the subtree under v has a multiple of n cells. So

    P(accept) = P(tree is splittable) / C(n^2 - 1, n - 1),

and the first factor is cheap to estimate from uniform trees alone. The
script compares this estimate with direct rejection sampling where that is
affordable.
"""

from __future__ import annotations

import argparse
import math
from dataclasses import dataclass

from gridplans.grid import GridGraph
from gridplans.sampler import sample_batch
from gridplans.trees import random_spanning_tree


@dataclass
class Config:
    n_max: int = 8
    trees: int = 20_000
    direct_max_n: int = 3
    seed: int = 7


def splittable(tree, n: int) -> bool:
    children: dict = {}
    for v, p in tree.parent.items():
        children.setdefault(p, []).append(v)
    root = next(v for v in GridGraph(n).vertices if v not in tree.parent)
    order, stack = [], [root]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(children.get(v, ()))
    size = {}
    cuts = 0
    for v in reversed(order):
        size[v] = 1 + sum(size[c] for c in children.get(v, ()))
        if v != root and size[v] % n == 0:
            cuts += 1
    return cuts == n - 1


def run(cfg: Config) -> None:
    print("n,splittable_fraction,p_accept_estimate,expected_attempts,direct_p_accept")
    for n in range(2, cfg.n_max + 1):
        g = GridGraph(n)
        hits = sum(splittable(random_spanning_tree(g, (cfg.seed, n, i)), n) for i in range(cfg.trees))
        frac = hits / cfg.trees
        p = frac / math.comb(n * n - 1, n - 1)
        direct = ""
        if n <= cfg.direct_max_n:
            s = sample_batch(n, cfg.seed, 2000)
            direct = f"{s.accepted / s.attempts:.3e}"
        attempts = f"{1 / p:.3e}" if p else "inf"
        print(f"{n},{frac:.4f},{p:.3e},{attempts},{direct}", flush=True)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    ap.add_argument("--trees", type=int, default=Config.trees)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    run(Config(n_max=a.n_max, trees=a.trees, seed=a.seed))


if __name__ == "__main__":
    main()
