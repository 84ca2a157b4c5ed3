"""Grid dual graph, partitions of it, cut scores and the plain-text plan format.

Cells are ``(row, col)`` with row 0 at the top. A cell is also addressed by
its row-major index ``row * n + col`` where that is more convenient.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Cell = tuple[int, int]


class MalformedPartition(ValueError):
    """Labels do not even have the shape of an n x n plan with ids in 0..n-1."""


@dataclass(frozen=True)
class GridGraph:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"grid side must be a positive integer, got {self.n!r}")

    @cached_property
    def vertices(self) -> tuple[Cell, ...]:
        return tuple((r, c) for r in range(self.n) for c in range(self.n))

    @cached_property
    def edges(self) -> tuple[tuple[Cell, Cell], ...]:
        n = self.n
        out = []
        for r in range(n):
            for c in range(n):
                if c + 1 < n:
                    out.append(((r, c), (r, c + 1)))
                if r + 1 < n:
                    out.append(((r, c), (r + 1, c)))
        return tuple(out)

    def neighbors(self, cell: Cell) -> list[Cell]:
        r, c = cell
        n = self.n
        cand = ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1))
        return [(a, b) for a, b in cand if 0 <= a < n and 0 <= b < n]

    def degree(self, cell: Cell) -> int:
        return len(self.neighbors(cell))

    def index(self, cell: Cell) -> int:
        return cell[0] * self.n + cell[1]


def build_grid_graph(n: int) -> GridGraph:
    return GridGraph(n)


@dataclass(frozen=True)
class Partition:
    """An assignment of every cell of the n x n grid to a district id in 0..n-1.

    Construction only checks shape and label range; balance and connectivity
    are reported by :func:`validate_partition`. Equality compares the raw
    labels, use :meth:`canonical` for label-free comparison.
    """

    n: int
    labels: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.n
        if not isinstance(n, int) or n < 1:
            raise MalformedPartition(f"side must be a positive integer, got {n!r}")
        if len(self.labels) != n:
            raise MalformedPartition(f"expected {n} rows, got {len(self.labels)}")
        for r, row in enumerate(self.labels):
            if len(row) != n:
                raise MalformedPartition(f"row {r}: expected {n} labels, got {len(row)}")
            for x in row:
                if not isinstance(x, int) or not 0 <= x < n:
                    raise MalformedPartition(f"row {r}: label {x!r} outside 0..{n - 1}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "Partition":
        labels = tuple(tuple(int(x) for x in row) for row in rows)
        return cls(len(labels), labels)

    @classmethod
    def from_flat(cls, n: int, flat: Sequence[int]) -> "Partition":
        if len(flat) != n * n:
            raise MalformedPartition(f"expected {n * n} labels, got {len(flat)}")
        return cls(n, tuple(tuple(flat[r * n:(r + 1) * n]) for r in range(n)))

    def __getitem__(self, cell: Cell) -> int:
        return self.labels[cell[0]][cell[1]]

    def flat(self) -> tuple[int, ...]:
        return tuple(x for row in self.labels for x in row)

    def canonical(self) -> "Partition":
        """Relabel districts in order of first appearance in a row-major scan."""
        return Partition.from_flat(self.n, canonical_labels(self.flat()))

    def key(self) -> bytes:
        """Label-free identity, usable as a dict/set key."""
        return bytes(canonical_labels(self.flat()))

    def districts(self) -> dict[int, list[Cell]]:
        out: dict[int, list[Cell]] = {}
        for r, row in enumerate(self.labels):
            for c, x in enumerate(row):
                out.setdefault(x, []).append((r, c))
        return out

    def transform(self, k: int) -> "Partition":
        """Apply symmetry ``k`` (0..7) of the square: ``k % 4`` quarter turns, then a
        transpose when ``k >= 4``."""
        rows = [list(row) for row in self.labels]
        for _ in range(k % 4):
            rows = [list(r) for r in zip(*rows[::-1])]
        if k >= 4:
            rows = [list(r) for r in zip(*rows)]
        return Partition.from_rows(rows)


def canonical_labels(flat: Sequence[int]) -> list[int]:
    seen: dict[int, int] = {}
    return [seen.setdefault(x, len(seen)) for x in flat]


def cut_score(p: Partition) -> int:
    """Number of grid edges whose two cells lie in different districts."""
    lab = p.labels
    n = p.n
    cut = 0
    for r in range(n):
        row = lab[r]
        for c in range(n - 1):
            cut += row[c] != row[c + 1]
        if r + 1 < n:
            below = lab[r + 1]
            for c in range(n):
                cut += row[c] != below[c]
    return cut


@dataclass(frozen=True)
class ValidationReport:
    balanced: bool
    connected: bool
    district_sizes: list[int]
    offending_district: int | None = None

    @property
    def ok(self) -> bool:
        return self.balanced and self.connected


def _coerce(g: GridGraph, p) -> Partition:
    if isinstance(p, Partition):
        part = p
    else:
        try:
            part = Partition.from_rows(p)
        except (TypeError, ValueError) as exc:
            raise MalformedPartition(str(exc)) from exc
    if part.n != g.n:
        raise MalformedPartition(f"plan has side {part.n}, graph has side {g.n}")
    return part


def validate_partition(g: GridGraph, p) -> ValidationReport:
    """Check equal district sizes and connectivity of every district.

    ``p`` may be a :class:`Partition` or a nested sequence of labels. Shape or
    label-range problems raise :class:`MalformedPartition`; invariant failures
    are returned in the report. ``offending_district`` is the smallest id that
    is either off-size or disconnected.
    """
    part = _coerce(g, p)
    n = g.n
    sizes = [0] * n
    for row in part.labels:
        for x in row:
            sizes[x] += 1
    unbalanced = [d for d in range(n) if sizes[d] != n]

    disconnected = []
    for d, cells in part.districts().items():
        members = set(cells)
        start = cells[0]
        seen = {start}
        queue = deque([start])
        while queue:
            cell = queue.popleft()
            for nb in g.neighbors(cell):
                if nb in members and nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        if len(seen) != len(members):
            disconnected.append(d)

    bad = sorted(set(unbalanced) | set(disconnected))
    return ValidationReport(
        balanced=not unbalanced,
        connected=not disconnected,
        district_sizes=sizes,
        offending_district=bad[0] if bad else None,
    )


def serialize_partition(p: Partition, comment: str | None = None) -> str:
    lines = []
    if comment is not None:
        lines.append("# " + comment.replace("\n", " "))
    lines.extend(" ".join(str(x) for x in row) for row in p.labels)
    return "\n".join(lines) + "\n"


def parse_partition(text: str) -> Partition:
    lines = text.split("\n")
    if lines and lines[0].startswith("#"):
        lines = lines[1:]
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise MalformedPartition("no label rows")
    n = len(lines)
    rows = []
    for i, line in enumerate(lines):
        tokens = line.split()
        if len(tokens) != n:
            raise MalformedPartition(f"line {i + 1}: expected {n} labels, got {len(tokens)}")
        try:
            rows.append(tuple(int(t) for t in tokens))
        except ValueError as exc:
            raise MalformedPartition(f"line {i + 1}: {exc}") from exc
    return Partition(n, tuple(rows))


def read_partition(path) -> Partition:
    with open(path, encoding="utf-8") as fh:
        return parse_partition(fh.read())


def write_partition(path, p: Partition, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_partition(p, comment))


def stripes(n: int) -> Partition:
    """n horizontal 1 x n districts (the least compact plan shape)."""
    return Partition.from_rows([[r] * n for r in range(n)])
