"""Random plans: spanning tree with n-1 edges cut, and exact uniform draws."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from statistics import fmean

from .enumeration import all_plans
from .grid import GridGraph, Partition, canonical_labels, cut_score
from .rng import as_generator, stream
from .trees import random_spanning_tree


def _components(n: int, edges) -> list[int]:
    parent = list(range(n * n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, b), (c, d) in edges:
        u, v = find(a * n + b), find(c * n + d)
        if u != v:
            parent[u] = v
    return [find(x) for x in range(n * n)]


def tree_cut_sample(n: int, seed) -> Partition | None:
    """Uniform spanning tree, then a uniform (n-1)-subset of its edges removed.

    Returns the plan if all n components have exactly n cells, else ``None``.
    """
    if n < 2:
        raise ValueError("tree-cut sampling needs n >= 2")
    rng = as_generator(seed)
    g = GridGraph(n)
    tree = random_spanning_tree(g, rng)
    edges = tree.edges()
    cut = set(int(i) for i in rng.choice(len(edges), size=n - 1, replace=False))
    kept = [e for i, e in enumerate(edges) if i not in cut]
    roots = _components(n, kept)
    sizes: dict[int, int] = {}
    for x in roots:
        sizes[x] = sizes.get(x, 0) + 1
    if any(s != n for s in sizes.values()):
        return None
    return Partition.from_flat(n, canonical_labels(roots))


@dataclass
class SampleStats:
    n: int
    seed: int
    attempts: int = 0
    accepted: int = 0
    cut_scores: list[int] = field(default_factory=list)
    plans: list[Partition] = field(default_factory=list, repr=False)
    complete: bool = True

    @property
    def mean_cut(self) -> float | None:
        return fmean(self.cut_scores) if self.cut_scores else None

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["attempts", "accepted", "mean_cut", "min_cut", "max_cut"])
        if self.cut_scores:
            w.writerow([self.attempts, self.accepted, repr(self.mean_cut),
                        min(self.cut_scores), max(self.cut_scores)])
        else:
            w.writerow([self.attempts, self.accepted, "", "", ""])
        return buf.getvalue()


def _attempt_block(args):
    n, seed, start, stop = args
    return [(i, tree_cut_sample(n, (seed, i))) for i in range(start, stop)]


def sample_batch(n: int, seed: int, target_accepted: int, max_attempts: int | None = None,
                 threads: int = 1, block: int = 256) -> SampleStats:
    """Repeat tree-cut sampling until ``target_accepted`` plans are accepted.

    Attempt ``i`` draws from its own stream ``(seed, i)``, so the outcome does
    not depend on ``threads``. Hitting ``max_attempts`` first returns the
    partial stats with ``complete=False``.
    """
    if target_accepted < 1:
        raise ValueError("target_accepted must be >= 1")
    stats = SampleStats(n=n, seed=seed)
    pool = ProcessPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        start = 0
        while True:
            width = block * max(threads, 1)
            if max_attempts is not None:
                width = min(width, max_attempts - start)
            if width <= 0:
                stats.complete = False
                return stats
            chunks = [(n, seed, a, min(a + block, start + width))
                      for a in range(start, start + width, block)]
            results = pool.map(_attempt_block, chunks) if pool else map(_attempt_block, chunks)
            for res in results:
                for i, plan in res:
                    stats.attempts = i + 1
                    if plan is not None:
                        stats.accepted += 1
                        stats.cut_scores.append(cut_score(plan))
                        stats.plans.append(plan)
                        if stats.accepted == target_accepted:
                            return stats
            start += width
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)


EXACT_UNIFORM_MAX_N = 5


@lru_cache(maxsize=None)
def _plan_list(n: int) -> tuple[Partition, ...]:
    return tuple(all_plans(n))


def sample_uniform_exact(n: int, seed) -> Partition:
    """A plan drawn uniformly from all |P_n| plans (n <= 5).

    Draws an index in [0, |P_n|) and returns that plan in enumeration order.
    """
    if not 1 <= n <= EXACT_UNIFORM_MAX_N:
        raise ValueError(f"exact uniform sampling supports 1 <= n <= {EXACT_UNIFORM_MAX_N}")
    plans = _plan_list(n)
    rng = as_generator(seed)
    return plans[int(rng.integers(len(plans)))]


def sample_uniform_batch(n: int, seed: int, count: int) -> list[Partition]:
    return [sample_uniform_exact(n, stream(seed, i)) for i in range(count)]
