"""Grid topologies for the forest partition.

Two partitions are supported: a rectangular grid where every cell has up
to 8 neighbours (Moore neighbourhood), and a pointy-top hexagonal grid
addressed by axial coordinates where every cell has up to 6 neighbours.
Cells are indexed by ``(row, col)`` pairs; the canonical flat order is
row-major. Direction slots are numbered counterclockwise starting from
the +x axis, with +y pointing north (toward increasing row index).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

CellIndex = tuple[int, int]

SQRT3_2 = math.sqrt(3.0) / 2.0
INV_SQRT2 = 1.0 / math.sqrt(2.0)


class GridKind(Enum):
    RECTANGULAR = "rectangular"
    HEXAGONAL = "hexagonal"


@dataclass(frozen=True)
class Direction:
    """One element of the neighbour-direction set: a unit vector and its slot."""

    slot: int
    vector: tuple[float, float]


# Rectangular slots, counterclockwise from +x: E NE N NW W SW S SE.
_RECT_OFFSETS = (
    (0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1),
)
_RECT_VECTORS = (
    (1.0, 0.0),
    (INV_SQRT2, INV_SQRT2),
    (0.0, 1.0),
    (-INV_SQRT2, INV_SQRT2),
    (-1.0, 0.0),
    (-INV_SQRT2, -INV_SQRT2),
    (0.0, -1.0),
    (INV_SQRT2, -INV_SQRT2),
)

# Hexagonal slots at 0,60,...,300 degrees; offsets are axial (drow, dcol).
_HEX_OFFSETS = (
    (0, 1), (1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1),
)
_HEX_VECTORS = (
    (1.0, 0.0),
    (0.5, SQRT3_2),
    (-0.5, SQRT3_2),
    (-1.0, 0.0),
    (-0.5, -SQRT3_2),
    (0.5, -SQRT3_2),
)


def direction_set(kind: GridKind) -> list[Direction]:
    """Unit vectors toward all potential neighbours, in canonical slot order."""
    vectors = _RECT_VECTORS if kind is GridKind.RECTANGULAR else _HEX_VECTORS
    return [Direction(k, v) for k, v in enumerate(vectors)]


class Topology:
    """Immutable geometry of an n-by-n forest partition.

    Exposes the neighbour offsets and unit vectors per direction slot,
    planar cell centres, and ring-1 views for the agent camera. Shared
    freely across episodes; nothing here mutates after construction.
    """

    def __init__(self, kind: GridKind, n: int):
        if n < 1:
            raise ValueError(f"grid size must be >= 1, got {n}")
        self.kind = kind
        self.n = n
        self.n_cells = n * n
        if kind is GridKind.RECTANGULAR:
            offsets, vectors = _RECT_OFFSETS, _RECT_VECTORS
        else:
            offsets, vectors = _HEX_OFFSETS, _HEX_VECTORS
        self.offsets = np.array(offsets, dtype=np.int64)
        self.vectors = np.array(vectors, dtype=np.float64)
        self.n_slots = len(offsets)
        self.directions = tuple(Direction(k, v) for k, v in enumerate(vectors))
        # Planar centres, shape (n, n, 2); x = col (+ row/2 for hex), y = row pitch.
        rows, cols = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        if kind is GridKind.RECTANGULAR:
            cx = cols.astype(np.float64)
            cy = rows.astype(np.float64)
        else:
            cx = cols + rows / 2.0
            cy = rows * SQRT3_2
        self.centers = np.stack([cx, cy], axis=-1)

    def __repr__(self) -> str:
        return f"Topology({self.kind.value}, n={self.n})"

    def in_grid(self, cell: CellIndex) -> bool:
        r, c = cell
        return 0 <= r < self.n and 0 <= c < self.n

    def check_cell(self, cell: CellIndex) -> None:
        if not self.in_grid(cell):
            raise IndexError(f"cell {cell} outside {self.n}x{self.n} grid")

    def flat_index(self, cell: CellIndex) -> int:
        return cell[0] * self.n + cell[1]

    def shift(self, cell: CellIndex, slot: int) -> CellIndex | None:
        """Cell one step from `cell` along direction `slot`, or None off-grid."""
        dr, dc = self.offsets[slot]
        r, c = cell[0] + int(dr), cell[1] + int(dc)
        if 0 <= r < self.n and 0 <= c < self.n:
            return (r, c)
        return None

    def neighbors(self, cell: CellIndex) -> list[tuple[CellIndex, Direction]]:
        """In-grid neighbours of `cell`, each with the direction pointing to it."""
        self.check_cell(cell)
        out = []
        for k in range(self.n_slots):
            j = self.shift(cell, k)
            if j is not None:
                out.append((j, self.directions[k]))
        return out

    def ring1_view(self, cell: CellIndex) -> list[CellIndex | None]:
        """Camera footprint: centre cell first, then one entry per slot.

        Off-grid positions are None. Length is always 1 + n_slots
        (9 rectangular, 7 hexagonal) so downstream padding is positional.
        """
        self.check_cell(cell)
        out: list[CellIndex | None] = [cell]
        for k in range(self.n_slots):
            out.append(self.shift(cell, k))
        return out

    def cell_center(self, cell: CellIndex) -> tuple[float, float]:
        self.check_cell(cell)
        x, y = self.centers[cell[0], cell[1]]
        return (float(x), float(y))

    def boundary_cells(self) -> list[CellIndex]:
        """Boundary cells in perimeter-walk order, starting at (0, 0).

        Walks row 0 eastward, then the east edge northward, then row n-1
        westward, then the west edge southward. Used for deterministic
        agent placement.
        """
        n = self.n
        if n == 1:
            return [(0, 0)]
        cells: list[CellIndex] = []
        cells.extend((0, c) for c in range(n))
        cells.extend((r, n - 1) for r in range(1, n))
        cells.extend((n - 1, c) for c in range(n - 2, -1, -1))
        cells.extend((r, 0) for r in range(n - 2, 0, -1))
        return cells


def build_grid(kind: GridKind, n: int) -> Topology:
    """Construct the n-by-n topology for the given partition kind."""
    return Topology(kind, n)
