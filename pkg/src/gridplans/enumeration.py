"""Exact counts, cut-score histograms and exhaustive listing of grid plans.

Counting runs the frontier sweep of :mod:`gridplans.frontier` forward, merging
equal states. Histograms reuse the same sweep with the per-state value packed
as a polynomial in the cut score: slot ``c`` of a big integer (``slot_bits``
wide) holds the number of partial plans with ``c`` cut edges so far, and a
transition that cuts ``k`` edges shifts the value left by ``k`` slots.
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Callable

from .budget import Budget, BudgetExceeded  # noqa: F401  (re-exported)
from .frontier import initial_state, is_final, transitions
from .grid import Partition


def _sweep(n, layer, start, slot_bits, budget):
    for t in range(start, n * n):
        nxt: dict = {}
        get = nxt.get
        for i, (state, value) in enumerate(layer.items()):
            if budget is not None and not i & 0x3FFF:
                budget.check(len(nxt))
            for _, new, cut in transitions(n, state, t):
                nxt[new] = get(new, 0) + (value << (cut * slot_bits))
        layer = nxt
        if budget is not None:
            budget.check(len(layer))
    return sum(v for s, v in layer.items() if is_final(n, s))


def _sweep_worker(args):
    n, layer, start, slot_bits, max_seconds, max_mem_mb, max_states = args
    return _sweep(n, layer, start, slot_bits, Budget(max_seconds, max_mem_mb, max_states))


def _packed_total(n: int, slot_bits: int, budget: Budget | None, threads: int) -> int:
    layer = {initial_state(n): 1}
    if threads <= 1 or n < 3:
        return _sweep(n, layer, 0, slot_bits, budget)

    # Sweep serially until the layer is wide enough to split, then hand out
    # round-robin shares of it; each share's total is exact, so the sum is too.
    t = 0
    while t < n * n and len(layer) < 8 * threads:
        nxt: dict = {}
        for state, value in layer.items():
            for _, new, cut in transitions(n, state, t):
                nxt[new] = nxt.get(new, 0) + (value << (cut * slot_bits))
        layer = nxt
        t += 1
    items = sorted(layer.items())
    shares = [dict(items[w::threads]) for w in range(threads)]
    b = budget or Budget()
    args = [(n, share, t, slot_bits, b.max_seconds, b.max_mem_mb, b.max_states)
            for share in shares if share]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(_sweep_worker, args))


def _check_n(n):
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")


def count_plans(n: int, budget: Budget | None = None, threads: int = 1) -> int:
    """|P_n|: the number of partitions of the n x n grid into n connected
    districts of n cells each, exactly."""
    _check_n(n)
    return _packed_total(n, 0, budget, threads)


def _slot_bits(n: int) -> int:
    # The trivial bound 2^(2n(n-1)) caps every slot.
    return 2 * n * (n - 1) + 2


class CutHistogram(dict):
    """Map cut score -> number of plans with exactly that score."""

    @property
    def total(self) -> int:
        return sum(self.values())

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["cut", "count"])
        for c in sorted(self):
            w.writerow([c, self[c]])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "CutHistogram":
        rows = list(csv.DictReader(io.StringIO(text)))
        return cls({int(r["cut"]): int(r["count"]) for r in rows})


def cut_histogram(n: int, budget: Budget | None = None, threads: int = 1) -> CutHistogram:
    _check_n(n)
    bits = _slot_bits(n)
    packed = _packed_total(n, bits, budget, threads)
    mask = (1 << bits) - 1
    hist = CutHistogram()
    c = 0
    while packed:
        v = packed & mask
        if v:
            hist[c] = v
        packed >>= bits
        c += 1
    return hist


def _as_fraction(eps) -> Fraction:
    if isinstance(eps, float):
        # Shortest repr, so 0.29 means 29/100 rather than the binary neighbour.
        return Fraction(repr(eps))
    return Fraction(eps)


def cut_threshold(n: int, eps) -> int:
    """floor(eps * n^2), the largest cut score counted as compact."""
    return floor(_as_fraction(eps) * n * n)


def count_compact_plans(n: int, eps, hist: CutHistogram | None = None, **kw) -> int:
    """|C_n(eps)|: plans with cut score at most eps * n^2."""
    if _as_fraction(eps) <= 0:
        raise ValueError("eps must be positive")
    if hist is None:
        hist = cut_histogram(n, **kw)
    limit = cut_threshold(n, eps)
    return sum(v for c, v in hist.items() if c <= limit)


@dataclass(frozen=True)
class EnumerationResult:
    count: int
    complete: bool


def enumerate_plans(n: int, visitor: Callable[[Partition], object] | None = None,
                    budget: Budget | None = None) -> EnumerationResult:
    """Visit every plan once, in lexicographic order of canonical labels.

    Depth-first over the same frontier transitions as :func:`count_plans`;
    districts get labels in order of first appearance. Frontier states found
    to have no completion are remembered and never entered again; the moves out
    of live states are cached. A visitor returning
    ``False`` stops the walk and the result is flagged incomplete.
    """
    _check_n(n)
    total = n * n
    labels = [0] * total
    count = 0
    nodes = 0

    # Per (t, state): [(frontier position of the joined district or -1, next state)],
    # or None once the state is known to have no completion.
    moves: dict = {}

    def frontier_moves(t, state):
        j = t % n
        out = []
        for d, new, _ in transitions(n, state, t):
            p = state.index(d) if d >= 0 else -1
            out.append((-1 if p < 0 else (t - j + p if p < j else t - j - n + p), new))
        return out

    def walk(t, state, used):
        nonlocal count, nodes
        if t == total:
            if not is_final(n, state):
                return True
            count += 1
            if visitor is not None and visitor(Partition.from_flat(n, labels)) is False:
                return False
            return True
        key = (t, state)
        opts = moves.get(key, ())
        if opts is None:
            return True
        if opts == ():
            opts = moves[key] = frontier_moves(t, state)
        nodes += 1
        if budget is not None and not nodes & 0xFFF:
            budget.check()
        # Labels are first-appearance ids, so sorting by label gives lexicographic order.
        ranked = sorted((used if cell < 0 else labels[cell], new) for cell, new in opts)
        before = count
        for lab, new in ranked:
            labels[t] = lab
            if not walk(t + 1, new, used + (lab == used)):
                return False
        if count == before:
            moves[key] = None
        return True

    complete = walk(0, initial_state(n), 0)
    return EnumerationResult(count, complete)


def all_plans(n: int) -> list[Partition]:
    out: list[Partition] = []
    enumerate_plans(n, out.append)
    return out


def default_threads() -> int:
    return os.cpu_count() or 1
