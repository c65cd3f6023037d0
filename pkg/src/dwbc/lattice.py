"""Boundary descriptions, arrow configurations and the brute-force oracle.

Public indices follow the physics convention: rows are numbered 1..n_rows
from the top, columns 1..n_cols from the *right*.  Internally arrays are
stored left to right; ``_col_index`` is the single place where the two
conventions meet.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import (
    CapExceeded,
    DimensionMismatch,
    DuplicateInversion,
    IndexOutOfRange,
    NotConserving,
)
from .weights import ModelParams, VertexKind, weight_a, weight_b, weight_c

#: Largest number of vertices the oracle will enumerate unless told otherwise.
ENUMERATION_CAP = 49

IN, OUT = "in", "out"
SIDES = ("left", "right", "top", "bottom")
CLASS_CODE = {"a": 0, "b": 1, "c": 2}
CLASS_LETTER = "abc"


def _col_index(n_cols: int, j: int) -> int:
    """Internal (left-to-right, 0-based) index of public column ``j``."""
    return n_cols - j


def _flip(o: str) -> str:
    return OUT if o == IN else IN


@dataclass(frozen=True)
class BoundarySpec:
    """Orientation (``"in"``/``"out"``) of every external arrow.

    ``left``/``right`` are indexed by row (top first); ``top``/``bottom`` by
    public column (rightmost first).
    """

    n_rows: int
    n_cols: int
    left: tuple[str, ...]
    right: tuple[str, ...]
    top: tuple[str, ...]
    bottom: tuple[str, ...]

    def __post_init__(self):
        if self.n_rows < 1 or self.n_cols < 1:
            raise ValueError("lattice dimensions must be positive")
        for side, n in (("left", self.n_rows), ("right", self.n_rows), ("top", self.n_cols), ("bottom", self.n_cols)):
            vals = getattr(self, side)
            if len(vals) != n or any(v not in (IN, OUT) for v in vals):
                raise ValueError(f"{side} boundary must hold {n} values from ('in', 'out')")

    @property
    def n_vertices(self) -> int:
        return self.n_rows * self.n_cols

    def inversions(self) -> list[tuple[str, int]]:
        """The (side, index) pairs that differ from domain-wall orientation."""
        ref = make_boundary(self.n_rows, self.n_cols)
        return [
            (side, k + 1)
            for side in SIDES
            for k, (o, o_ref) in enumerate(zip(getattr(self, side), getattr(ref, side)))
            if o != o_ref
        ]


def make_boundary(n_rows: int, n_cols: int, inversions: Iterable[tuple[str, int]] = ()) -> BoundarySpec:
    """Domain-wall boundary (left/right in, top/bottom out) with the listed arrows flipped."""
    sides = {"left": [IN] * n_rows, "right": [IN] * n_rows, "top": [OUT] * n_cols, "bottom": [OUT] * n_cols}
    seen = set()
    for side, idx in inversions:
        if side not in sides:
            raise ValueError(f"unknown side {side!r}")
        if not 1 <= idx <= len(sides[side]):
            raise IndexOutOfRange(f"{side} index {idx} outside 1..{len(sides[side])}")
        if (side, idx) in seen:
            raise DuplicateInversion(f"{side} {idx} listed twice")
        seen.add((side, idx))
        sides[side][idx - 1] = _flip(sides[side][idx - 1])
    return BoundarySpec(n_rows, n_cols, *(tuple(sides[s]) for s in SIDES))


def dwbc(n: int) -> BoundarySpec:
    return make_boundary(n, n)


@dataclass(frozen=True, eq=False)
class ArrowGrid:
    """One arrow configuration, stored left to right.

    ``h[i, k]`` is the horizontal bond of row ``i`` to the left of internal
    column ``k`` (``k == n_cols`` is the right boundary); ``v[i, k]`` is the
    vertical bond above row ``i`` (``i == n_rows`` is the bottom boundary).
    Entries are +1 (right/up) or -1 (left/down).
    """

    h: np.ndarray = field(repr=False)
    v: np.ndarray = field(repr=False)

    @property
    def n_rows(self) -> int:
        return self.h.shape[0]

    @property
    def n_cols(self) -> int:
        return self.v.shape[1]

    def __eq__(self, other):
        if not isinstance(other, ArrowGrid):
            return NotImplemented
        return np.array_equal(self.h, other.h) and np.array_equal(self.v, other.v)

    def __hash__(self):
        return hash((self.h.tobytes(), self.v.tobytes()))

    def arrows_at(self, row: int, col: int) -> tuple[int, int, int, int]:
        """(left, right, bottom, top) arrows around public vertex (row, col)."""
        i, k = row - 1, _col_index(self.n_cols, col)
        return int(self.h[i, k]), int(self.h[i, k + 1]), int(self.v[i + 1, k]), int(self.v[i, k])


_KINDS = {
    (1, 1, 1, 1): VertexKind.A1,
    (-1, -1, -1, -1): VertexKind.A2,
    (1, 1, -1, -1): VertexKind.B1,
    (-1, -1, 1, 1): VertexKind.B2,
    (1, -1, -1, 1): VertexKind.C1,
    (-1, 1, 1, -1): VertexKind.C2,
}


def kind_of(left: int, right: int, bottom: int, top: int) -> VertexKind:
    try:
        return _KINDS[(left, right, bottom, top)]
    except KeyError:
        raise NotConserving(f"arrows (left={left}, right={right}, bottom={bottom}, top={top}) violate the ice rule")


def classify_vertex(grid: ArrowGrid, row: int, col: int) -> VertexKind:
    if not (1 <= row <= grid.n_rows and 1 <= col <= grid.n_cols):
        raise IndexOutOfRange(f"vertex ({row}, {col}) outside the {grid.n_rows}x{grid.n_cols} lattice")
    return kind_of(*grid.arrows_at(row, col))


def _edge_arrays(boundary: BoundarySpec) -> tuple[list[int], list[int], list[int], list[int]]:
    """Boundary orientations converted to +1/-1 arrow directions, internal column order."""
    left = [1 if o == IN else -1 for o in boundary.left]
    right = [-1 if o == IN else 1 for o in boundary.right]
    top = [-1 if o == IN else 1 for o in reversed(boundary.top)]
    bottom = [1 if o == IN else -1 for o in reversed(boundary.bottom)]
    return left, right, top, bottom


def check_cap(boundary: BoundarySpec, cap: int | None) -> None:
    cap = ENUMERATION_CAP if cap is None else cap
    if boundary.n_vertices > cap:
        raise CapExceeded(f"{boundary.n_rows}x{boundary.n_cols} lattice exceeds the enumeration cap of {cap} vertices")


def _dfs(boundary: BoundarySpec) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Depth-first search over vertical bonds, row-major; horizontal bonds are forced.

    Yields the live (mutable) ``h``/``v`` arrays; callers copy what they keep.
    """
    R, C = boundary.n_rows, boundary.n_cols
    left, right, top, bottom = _edge_arrays(boundary)
    h = np.zeros((R, C + 1), dtype=np.int8)
    v = np.zeros((R + 1, C), dtype=np.int8)
    h[:, 0] = left
    h[:, C] = right
    v[0, :] = top
    v[R, :] = bottom

    def visit(pos: int) -> Iterator[None]:
        if pos == R * C:
            yield None
            return
        i, k = divmod(pos, C)
        hl, vt = int(h[i, k]), int(v[i, k])
        choices = (int(bottom[k]),) if i == R - 1 else (1, -1)  # up before down
        for vb in choices:
            hr = hl + vb - vt
            if hr not in (1, -1):
                continue
            if k == C - 1 and hr != right[i]:
                continue
            if i < R - 1:
                v[i + 1, k] = vb
            if k < C - 1:
                h[i, k + 1] = hr
            yield from visit(pos + 1)

    for _ in visit(0):
        yield h, v


def enumerate_configurations(boundary: BoundarySpec, cap: int | None = None) -> Iterator[ArrowGrid]:
    """Every flow-conserving arrow configuration compatible with ``boundary``, in DFS order."""
    check_cap(boundary, cap)
    for h, v in _dfs(boundary):
        hh, vv = h.copy(), v.copy()
        hh.setflags(write=False)
        vv.setflags(write=False)
        yield ArrowGrid(hh, vv)


def count_configurations(boundary: BoundarySpec, cap: int | None = None) -> int:
    check_cap(boundary, cap)
    return len(_class_table(boundary))


@lru_cache(maxsize=256)
def _class_table(boundary: BoundarySpec) -> np.ndarray:
    """Vertex classes (0=a, 1=b, 2=c) of all configurations, shape (n_conf, rows, public cols)."""
    R, C = boundary.n_rows, boundary.n_cols
    out = []
    for h, v in _dfs(boundary):
        # c where the horizontal arrow turns; a where horizontal and vertical agree
        turn = h[:, :-1] != h[:, 1:]
        agree = h[:, :-1] == v[1:, :]
        codes = np.where(turn, 2, np.where(agree, 0, 1)).astype(np.int8)
        out.append(codes[:, ::-1])
    table = np.array(out, dtype=np.int8).reshape(len(out), R, C)
    table.setflags(write=False)
    return table


def weight_table(params: ModelParams) -> np.ndarray:
    """``W[class, row, col]`` for every vertex of the ``params`` lattice, public indices."""
    lam = params.lam
    W = np.empty((3, params.n_rows, params.n_cols), dtype=complex)
    for i, xi in enumerate(params.x):
        for j, yj in enumerate(params.y):
            W[0, i, j] = weight_a(xi, yj, lam)
            W[1, i, j] = weight_b(xi, yj, lam)
            W[2, i, j] = weight_c(xi, yj, lam)
    return W


def config_weight(grid: ArrowGrid, params: ModelParams) -> complex:
    """Product of the vertex weights of a single configuration."""
    if (grid.n_rows, grid.n_cols) != (params.n_rows, params.n_cols):
        raise DimensionMismatch(
            f"grid is {grid.n_rows}x{grid.n_cols}, params describe {params.n_rows}x{params.n_cols}"
        )
    W = weight_table(params)
    w = 1 + 0j
    for i in range(1, grid.n_rows + 1):
        for j in range(1, grid.n_cols + 1):
            w *= W[CLASS_CODE[classify_vertex(grid, i, j).weight_class], i - 1, j - 1]
    return complex(w)


@dataclass(frozen=True)
class VertexPredicate:
    """Conjunction of ``(row, col, class)`` requirements, public indices."""

    constraints: tuple[tuple[int, int, str], ...] = ()

    def __init__(self, constraints: Iterable[tuple[int, int, str]] = ()):
        cons = tuple((int(r), int(c), str(k)) for r, c, k in constraints)
        for r, c, k in cons:
            if k not in CLASS_CODE:
                raise ValueError(f"vertex class must be one of 'a', 'b', 'c', not {k!r}")
        object.__setattr__(self, "constraints", cons)

    def mask(self, table: np.ndarray) -> np.ndarray:
        n, R, C = table.shape
        keep = np.ones(n, dtype=bool)
        for r, c, k in self.constraints:
            if not (1 <= r <= R and 1 <= c <= C):
                raise IndexOutOfRange(f"predicate vertex ({r}, {c}) outside the {R}x{C} lattice")
            keep &= table[:, r - 1, c - 1] == CLASS_CODE[k]
        return keep


def configuration_weights(boundary: BoundarySpec, params: ModelParams, cap: int | None = None) -> np.ndarray:
    """Weights of all configurations of ``boundary`` in enumeration order."""
    if (boundary.n_rows, boundary.n_cols) != (params.n_rows, params.n_cols):
        raise DimensionMismatch(
            f"boundary is {boundary.n_rows}x{boundary.n_cols}, params describe {params.n_rows}x{params.n_cols}"
        )
    check_cap(boundary, cap)
    table = _class_table(boundary)
    if len(table) == 0:
        return np.zeros(0, dtype=complex)
    W = weight_table(params)
    rows = np.arange(boundary.n_rows)[:, None]
    cols = np.arange(boundary.n_cols)[None, :]
    return W[table, rows, cols].prod(axis=(1, 2))


def brute_partition(
    boundary: BoundarySpec,
    params: ModelParams,
    filter: VertexPredicate | Sequence[tuple[int, int, str]] | None = None,
    cap: int | None = None,
) -> complex:
    """Sum of configuration weights, optionally restricted by a vertex predicate."""
    weights = configuration_weights(boundary, params, cap)
    if filter is not None:
        if not isinstance(filter, VertexPredicate):
            filter = VertexPredicate(filter)
        weights = weights[filter.mask(_class_table(boundary))]
    return complex(weights.sum())


def row_permuted(params: ModelParams, order: Sequence[int]) -> ModelParams:
    """Params whose row ``k`` carries ``x[order[k] - 1]`` (1-based labels)."""
    return params.replace(x=[params.x[o - 1] for o in order])
