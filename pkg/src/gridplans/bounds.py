"""Exact values of the counting bounds and the compactness threshold."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from importlib import resources

from .enumeration import cut_threshold
from .trees import spanning_tree_count


class UnsupportedResidue(ValueError):
    """The perturbation construction is only defined for n divisible by 6."""


def edge_count(n: int) -> int:
    return 2 * n * (n - 1)


def binomial(m: int, j: int) -> int:
    if m < 0 or j < 0:
        raise ValueError("binomial arguments must be nonnegative")
    return math.comb(m, j)


def trivial_upper_bound(n: int) -> int:
    """2^|E|: a plan is determined by which edges it cuts."""
    return 2 ** edge_count(n)


def upper_bound_exact(n: int) -> int:
    """tau(G_n) * C(|E|, n-1): every plan is a spanning tree with n-1 edges removed."""
    return spanning_tree_count(n) * binomial(edge_count(n), n - 1)


def family_size_exponent(n: int) -> int:
    if n < 6 or n % 6:
        raise UnsupportedResidue(f"n={n}: the base tiling needs n divisible by 6")
    return (n // 6) * (n - 3)


def lower_bound_exact(n: int) -> int:
    """3^((n/6)(n-3)): size of the perturbed all-vertical family."""
    return 3 ** family_size_exponent(n)


def compact_count_upper(n: int, eps) -> int:
    """Sum of C(|E|, j) for j from n-1 to floor(eps n^2): at most that many
    cut sets have size <= eps n^2, hence at most that many compact plans."""
    m = edge_count(n)
    top = cut_threshold(n, eps)
    return sum(math.comb(m, j) for j in range(n - 1, top + 1))


def log_compact_rate(eps: float) -> float:
    """log((2e/eps)^eps), the per-n^2 growth rate of the compact-plan bound."""
    return eps * (1.0 + math.log(2.0) - math.log(eps))


LOG_LOWER_RATE = math.log(3.0) / 6.0


@dataclass(frozen=True)
class EpsilonSolution:
    root: float
    residual: float


def epsilon_threshold(lo: float = 1e-6, hi: float = 0.5, tol: float = 1e-16) -> EpsilonSolution:
    """Solve (2e/eps)^eps = 3^(1/6) by bisection.

    Below the root the compact-plan bound grows slower than the lower bound on
    all plans, so compact plans are a vanishing fraction.
    """
    f = lambda e: log_compact_rate(e) - LOG_LOWER_RATE  # noqa: E731
    if not f(lo) < 0 < f(hi):
        raise ArithmeticError(f"bracket ({lo}, {hi}) does not straddle the root")
    while hi - lo > tol * hi:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    root = lo if abs(f(lo)) <= abs(f(hi)) else hi
    residual = abs(math.exp(log_compact_rate(root)) - 3.0 ** (1.0 / 6.0))
    return EpsilonSolution(root, residual)


def known_counts() -> dict[int, int]:
    """Published values of |P_n| (n = 1..9), for reporting only."""
    text = resources.files("gridplans.data").joinpath("known_counts.csv").read_text("utf-8")
    rows = csv.DictReader(line for line in io.StringIO(text) if not line.startswith("#"))
    return {int(r["n"]): int(r["count"]) for r in rows}


@dataclass(frozen=True)
class BoundsReport:
    n: int
    lower: int | None
    upper: int
    exact: int | None

    @staticmethod
    def _log(x):
        return math.log(x) if x is not None else None

    @property
    def log_lower(self):
        return self._log(self.lower)

    @property
    def log_upper(self):
        return self._log(self.upper)

    @property
    def log_exact(self):
        return self._log(self.exact)

    def row(self) -> list[str]:
        def fmt(x):
            if x is None:
                return ""
            return repr(x) if isinstance(x, float) else str(x)

        return [fmt(v) for v in (self.n, self.lower, self.exact, self.upper,
                                 self.log_lower, self.log_exact, self.log_upper)]


CSV_HEADER = ["n", "lower", "exact", "upper", "log_lower", "log_exact", "log_upper"]


def bounds_report(n: int, exact_max: int = 6, counter=None) -> BoundsReport:
    """Lower/exact/upper for one n.

    ``exact`` is computed with ``counter`` (default :func:`count_plans`) when
    ``n <= exact_max``, otherwise taken from the published table when listed.
    """
    if counter is None:
        from .enumeration import count_plans as counter
    try:
        lower = lower_bound_exact(n)
    except UnsupportedResidue:
        lower = None
    if n <= exact_max:
        exact = counter(n)
    else:
        exact = known_counts().get(n)
    return BoundsReport(n, lower, upper_bound_exact(n), exact)


def bounds_csv(n_max: int, **kw) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for n in range(1, n_max + 1):
        w.writerow(bounds_report(n, **kw).row())
    return buf.getvalue()
