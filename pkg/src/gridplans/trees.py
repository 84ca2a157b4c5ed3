"""Spanning trees of the grid: exact counts, uniform samples, growth constants."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

import mpmath

from .budget import BudgetExceeded
from .grid import Cell, GridGraph
from .rng import Draws, as_generator


def laplacian(g: GridGraph) -> list[list[int]]:
    m = g.n * g.n
    L = [[0] * m for _ in range(m)]
    for u, v in g.edges:
        a, b = g.index(u), g.index(v)
        L[a][b] -= 1
        L[b][a] -= 1
        L[a][a] += 1
        L[b][b] += 1
    return L


def bareiss_determinant(A: list[list[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination.

    Every intermediate entry is a minor of ``A``, so all divisions are exact.
    A step with a zero in the pivot column only rescales a row by
    ``pivot_k / pivot_(k-1)``; such rescalings telescope, so they are deferred
    until the row is next needed. For banded matrices (grid Laplacians) this
    leaves most rows untouched at most steps. ``A`` is not modified.
    """
    M = [row[:] for row in A]
    m = len(M)
    if m == 0:
        return 1
    pivots = [1]  # pivots[s] is the pivot used at step s - 1
    level = [0] * m  # row i is current as of step level[i]

    def sync(i, k):
        if level[i] != k:
            mul, div = pivots[k], pivots[level[i]]
            M[i] = [x * mul // div if x else 0 for x in M[i]]
            level[i] = k

    sign = 1
    for k in range(m - 1):
        sync(k, k)
        if M[k][k] == 0:
            for i in range(k + 1, m):
                if M[i][k] != 0:
                    sync(i, k)
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        prev = pivots[k]
        rk = M[k]
        cols = [j for j in range(k + 1, m) if rk[j]]
        for i in range(k + 1, m):
            if not M[i][k]:
                continue
            sync(i, k)
            ri = M[i]
            f = ri[k]
            ri[k] = 0
            for j in range(k + 1, m):
                if ri[j]:
                    ri[j] = pivot * ri[j]
            for j in cols:
                ri[j] -= f * rk[j]
            for j in range(k + 1, m):
                if ri[j]:
                    ri[j] //= prev
            level[i] = k + 1
        pivots.append(pivot)
    sync(m - 1, m - 1)
    return sign * M[m - 1][m - 1]


def spanning_tree_count(n: int, deleted: int = 0, max_n: int = 40) -> int:
    """tau(G_n), the number of spanning trees of the n x n grid graph.

    Determinant of the Laplacian with row and column ``deleted`` removed
    (any choice gives the same value).
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if n > max_n:
        raise BudgetExceeded(f"n={n} exceeds the exact determinant limit {max_n}")
    L = laplacian(GridGraph(n))
    minor = [row[:deleted] + row[deleted + 1:] for i, row in enumerate(L) if i != deleted]
    return bareiss_determinant(minor)


def tree_growth_ratio(n: int) -> float:
    """log(tau(G_n)) / n^2, which tends to 4C/pi from below."""
    return math.log(spanning_tree_count(n)) / (n * n)


# -- Catalan's constant -----------------------------------------------------

def catalan_series(terms: int) -> tuple[Fraction, Fraction]:
    """Accelerated partial sum of sum_k (-1)^k / (2k+1)^2 and its error bound.

    Uses the Chebyshev-weighted scheme of Cohen, Rodriguez Villegas and
    Zagier. The terms are moments of a positive measure on [0, 1], so the
    error is at most 2*S/(3+sqrt 8)^terms < 2*(5/29)^terms, with S < 1.
    Everything is rational: the normaliser is T_terms(3), an integer.
    """
    if terms < 1:
        raise ValueError("need at least one term")
    t_prev, t_cur = 1, 3
    for _ in range(terms - 1):
        t_prev, t_cur = t_cur, 6 * t_cur - t_prev
    d = t_cur
    b = Fraction(-1)
    c = Fraction(-d)
    s = Fraction(0)
    for k in range(terms):
        c = b - c
        s += c * Fraction(1, (2 * k + 1) ** 2)
        b = b * (k + terms) * (k - terms) / (Fraction(2 * k + 1, 2) * (k + 1))
    return s / d, 2 * Fraction(5, 29) ** terms


def _round(x: Fraction, digits: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = digits + 30
        v = Decimal(x.numerator) / Decimal(x.denominator)
        return v.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN)


def catalan_constant(digits: int) -> Decimal:
    """Catalan's constant rounded to ``digits`` decimal places (digits <= 50)."""
    if not 1 <= digits <= 50:
        raise ValueError("digits must be in 1..50")
    terms = int((digits + 3) * math.log(10) / math.log(5.8)) + 2
    while True:
        value, err = catalan_series(terms)
        lo, hi = _round(value - err, digits), _round(value + err, digits)
        if lo == hi:
            return lo
        terms += 4


@dataclass(frozen=True)
class GrowthConstants:
    catalan: Decimal
    b: Decimal
    log_b: Decimal


def growth_constants(digits: int) -> GrowthConstants:
    """Catalan's constant C and b = exp(4C/pi), each to ``digits`` places."""
    c_hi = catalan_constant(min(digits + 10, 50))
    places = Decimal(1).scaleb(-digits)
    with mpmath.workdps(digits + 20):
        c = mpmath.mpf(str(c_hi))
        log_b = 4 * c / mpmath.pi
        b = mpmath.exp(log_b)
        b_str = mpmath.nstr(b, digits + 15, strip_zeros=False)
        lb_str = mpmath.nstr(log_b, digits + 15, strip_zeros=False)
    with localcontext() as ctx:
        ctx.prec = digits + 30
        return GrowthConstants(
            catalan=catalan_constant(digits),
            b=Decimal(b_str).quantize(places, rounding=ROUND_HALF_EVEN),
            log_b=Decimal(lb_str).quantize(places, rounding=ROUND_HALF_EVEN),
        )


# -- uniform spanning trees -------------------------------------------------

@dataclass(frozen=True)
class SpanningTree:
    n: int
    parent: dict

    def edges(self) -> list[tuple[Cell, Cell]]:
        return [(v, p) for v, p in self.parent.items()]

    def edge_set(self) -> frozenset:
        return frozenset(frozenset(e) for e in self.edges())

    def is_valid(self) -> bool:
        g = GridGraph(self.n)
        cells = set(g.vertices)
        if len(self.parent) != len(cells) - 1:
            return False
        for v, p in self.parent.items():
            if v not in cells or p not in g.neighbors(v):
                return False
        # Every cell must reach the unique parentless cell without a cycle.
        roots = cells - set(self.parent)
        if len(roots) != 1:
            return False
        for v in cells:
            seen = set()
            while v in self.parent:
                if v in seen:
                    return False
                seen.add(v)
                v = self.parent[v]
        return True


def random_spanning_tree(g: GridGraph, seed=None, root: Cell = (0, 0)) -> SpanningTree:
    """Uniform spanning tree by Wilson's loop-erased random walks.

    ``seed`` may be an int, a sequence of ints or a ``numpy.random.Generator``.
    """
    rng = as_generator(seed)
    draws = Draws(rng)
    nbrs = {v: g.neighbors(v) for v in g.vertices}
    in_tree = {root}
    nxt: dict[Cell, Cell] = {}
    for start in g.vertices:
        v = start
        while v not in in_tree:
            opts = nbrs[v]
            nxt[v] = opts[draws.index(len(opts))]
            v = nxt[v]
        v = start
        while v not in in_tree:
            in_tree.add(v)
            v = nxt[v]
    parent = {v: nxt[v] for v in g.vertices if v != root}
    return SpanningTree(g.n, parent)
