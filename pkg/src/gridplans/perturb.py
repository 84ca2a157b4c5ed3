"""The perturbed all-vertical family of plans behind the lower bound on |P_n|.

For n divisible by 6 the grid is tiled by n rectangles, n/3 rows tall and 3
columns wide (3 tile rows of n/3 tiles each). Each vertical border between
two neighbouring tiles is cut into runs of 2 rows. On each run independently
the border is left straight (digit 0) or two diagonally opposite cells are
swapped across it (digits 1 and 2)::

    digit 0      digit 1      digit 2
    L | R        R | R        L | L
    L | R        L | L        R | R

(columns are the two cells either side of the border, rows the two rows of
the run). Every tile keeps its middle column, so tiles stay connected and of
size n whatever the other runs do. With 2-wide tiles this fails; see
:func:`width2_counterexample`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .bounds import UnsupportedResidue, family_size_exponent, lower_bound_exact
from .budget import BudgetExceeded
from .grid import Cell, GridGraph, Partition, ValidationReport, validate_partition
from .rng import as_generator


def _check(n):
    family_size_exponent(n)  # raises UnsupportedResidue


@dataclass(frozen=True)
class Segment:
    """A 2-row run of the border between a tile and its right neighbour."""

    border: int
    index: int
    top: int
    left_col: int

    @property
    def left_cells(self) -> tuple[Cell, Cell]:
        return (self.top, self.left_col), (self.top + 1, self.left_col)

    @property
    def right_cells(self) -> tuple[Cell, Cell]:
        return (self.top, self.left_col + 1), (self.top + 1, self.left_col + 1)

    @property
    def cells(self) -> tuple[Cell, ...]:
        return self.left_cells + self.right_cells


def base_tiling(n: int) -> Partition:
    """n rectangles of n/3 rows by 3 columns; tile (R, T) gets label R*(n/3) + T."""
    _check(n)
    h = n // 3
    return Partition.from_rows([[(r // h) * h + c // 3 for c in range(n)] for r in range(n)])


def list_border_segments(n: int) -> list[Segment]:
    """All (n-3) * n/6 runs, ordered by tile row, then border, then run from the top."""
    _check(n)
    h = n // 3
    out = []
    border = 0
    for tile_row in range(3):
        for t in range(h - 1):
            for s in range(n // 6):
                out.append(Segment(border, s, tile_row * h + 2 * s, 3 * t + 2))
            border += 1
    return out


@dataclass(frozen=True)
class PerturbChoice:
    n: int
    digits: tuple[int, ...]

    def __post_init__(self):
        _check(self.n)
        want = family_size_exponent(self.n)
        if len(self.digits) != want:
            raise ValueError(f"expected {want} digits for n={self.n}, got {len(self.digits)}")
        if any(d not in (0, 1, 2) for d in self.digits):
            raise ValueError("digits must be 0, 1 or 2")

    @classmethod
    def from_string(cls, n: int, text: str) -> "PerturbChoice":
        return cls(n, tuple(int(ch) for ch in text))

    @classmethod
    def from_index(cls, n: int, k: int) -> "PerturbChoice":
        """The k-th choice vector, most significant digit first."""
        length = family_size_exponent(n)
        digits = []
        for _ in range(length):
            k, d = divmod(k, 3)
            digits.append(d)
        if k:
            raise ValueError("index out of range")
        return cls(n, tuple(reversed(digits)))

    def __str__(self) -> str:
        return "".join(map(str, self.digits))


def apply_perturbation(n: int, choice: PerturbChoice | Sequence[int]) -> Partition:
    if not isinstance(choice, PerturbChoice):
        choice = PerturbChoice(n, tuple(choice))
    elif choice.n != n:
        raise ValueError("choice built for a different n")
    rows = [list(r) for r in base_tiling(n).labels]
    for seg, d in zip(list_border_segments(n), choice.digits):
        (l0, l1), (r0, r1) = seg.left_cells, seg.right_cells
        if d == 1:
            a, b = l0, r1
        elif d == 2:
            a, b = l1, r0
        else:
            continue
        rows[a[0]][a[1]], rows[b[0]][b[1]] = rows[b[0]][b[1]], rows[a[0]][a[1]]
    return Partition.from_rows(rows)


FAMILY_ENUMERATION_LIMIT = 3 ** 12


def enumerate_family(n: int, visitor: Callable[[PerturbChoice, Partition], object] | None = None,
                     limit: int = FAMILY_ENUMERATION_LIMIT) -> int:
    """Visit every member of the family once; returns 3^((n/6)(n-3)).

    Refuses (``BudgetExceeded``) when the family exceeds ``limit``; use
    :func:`sample_family` instead.
    """
    size = lower_bound_exact(n)
    if size > limit:
        raise BudgetExceeded(f"family for n={n} has {size} members (limit {limit}); sample instead")
    count = 0
    for digits in itertools.product((0, 1, 2), repeat=family_size_exponent(n)):
        choice = PerturbChoice(n, digits)
        plan = apply_perturbation(n, choice)
        count += 1
        if visitor is not None:
            visitor(choice, plan)
    return count


def sample_choice(n: int, seed) -> PerturbChoice:
    rng = as_generator(seed)
    digits = rng.integers(0, 3, size=family_size_exponent(n))
    return PerturbChoice(n, tuple(int(d) for d in digits))


def sample_family(n: int, seed) -> Partition:
    """Uniform member of the family: uniform digits, then apply them."""
    return apply_perturbation(n, sample_choice(n, seed))


def width2_counterexample() -> tuple[Partition, ValidationReport]:
    """The same swaps on 2-wide tiles can cut a tile in two.

    6 x 6 grid, tiles 3 rows by 2 columns. The middle top tile (columns 2-3)
    loses its whole second row: across its left border by a digit-1 swap and
    across its right border by a digit-2 swap. Its top row and bottom row are
    left with no connection.
    """
    n = 6
    rows = [[(r // 3) * 3 + c // 2 for c in range(n)] for r in range(n)]

    def swap(a, b):
        rows[a[0]][a[1]], rows[b[0]][b[1]] = rows[b[0]][b[1]], rows[a[0]][a[1]]

    swap((0, 1), (1, 2))  # digit 1 on the border between columns 1 | 2
    swap((1, 3), (0, 4))  # digit 2 on the border between columns 3 | 4
    plan = Partition.from_rows(rows)
    return plan, validate_partition(GridGraph(n), plan)


__all__ = [
    "PerturbChoice",
    "Segment",
    "UnsupportedResidue",
    "apply_perturbation",
    "base_tiling",
    "enumerate_family",
    "list_border_segments",
    "sample_choice",
    "sample_family",
    "width2_counterexample",
]
