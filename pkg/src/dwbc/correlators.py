"""Closed-form boundary correlators of the domain-wall six-vertex model.

Every closed form is a finite sum obtained by "rolling" inverted boundary
arrows to the top row with the Yang-Baxter equation, peeling the frozen
row, and finishing with Izergin's determinant.  Each public function also
has an ``backend="oracle"`` mode that brute-forces the defining boundary
configuration, which is how the index conventions below were pinned down.

Index readings (all checked against the oracle, see ``tests/``):

* right column: ``prod_{i<r} b(x_i, y_1) * c(x_r, y_1) * prod_{i>r} a(x_i, y_1)``.
* rolling an inverted *right* arrow from row ``r`` leaves ``x_alpha`` on top
  with weight ``c(x_r, x_alpha)/a(x_r, x_alpha) * prod_{i<=r, i!=alpha}
  a(x_i, x_alpha)/b(x_i, x_alpha)``.  The single step is
  ``F_i^i = f(x_{i-1}, x_i) F_{i-1}^i + g(x_i, x_{i-1}) F_{i-1}^{i-1}``, and
  iterating it puts the rapidity that ends up on top second in every f and g.
* rolling an inverted *left* arrow uses the mirror image,
  ``c(x_alpha, x_r)/a(x_alpha, x_r) * prod a(x_alpha, x_i)/b(x_alpha, x_i)``,
  and the peeled top row is all ``b`` vertices.
* rolling an inverted *top* arrow from column ``c`` to the leftmost column
  ``N`` uses ``c(y_c, y_beta)/a(y_c, y_beta) * prod_{c<=k<=N, k!=beta}
  a(y_k, y_beta)/b(y_k, y_beta)``; the leftmost column then freezes to ``b``
  vertices and the top row to ``a`` vertices, leaving ``Z_{N-1}``.
* two inverted arrows directly opposite at row ``i``:
  ``X_i(x) = X_{i-1}(s x) + g(x_i, x_{i-1}) T(x) + g(x_{i-1}, x_i) T(s x)``
  where ``s`` swaps rows ``i-1, i`` and ``T`` is the opposite-boundary
  function with the left arrow at row ``i`` and the right arrow at row
  ``i-1``.  ``X_1 = 0``.

The alternating sums cancel heavily (ratios ``a/b`` of nearby rapidities),
so by default they are evaluated in mpmath at :data:`WORKING_DPS` digits.
"""

from __future__ import annotations

import contextlib
import math
from collections.abc import Sequence

import mpmath

from .errors import DimensionMismatch, IndexOutOfRange, InvalidOrder, ZeroPartition
from .izergin import izergin_value
from .lattice import BoundarySpec, brute_partition, dwbc, make_boundary
from .weights import (
    ModelParams,
    g_over_f,
    ratio_fg,
    weight_a,
    weight_b,
    weight_c,
)

#: Decimal digits used for the closed forms unless a call overrides it.
WORKING_DPS = 40

#: |Z_N| at or below this is treated as a vanishing normalisation.
ZERO_PARTITION_FLOOR = 1e-300

RIGHT, LEFT = "right", "left"


# -- arithmetic -------------------------------------------------------------


def _arith(dps: int | None):
    return mpmath.workdps(dps) if dps else contextlib.nullcontext()


def _lift(params: ModelParams, dps: int | None):
    if not dps:
        return params.lam, list(params.x), list(params.y)
    mp = mpmath.mpc
    return mp(params.lam), [mp(v) for v in params.x], [mp(v) for v in params.y]


def _swap(xs: Sequence, i: int) -> list:
    """Copy of ``xs`` with (1-based) rows ``i - 1`` and ``i`` exchanged."""
    out = list(xs)
    out[i - 2], out[i - 1] = out[i - 1], out[i - 2]
    return out


def _without(vals: Sequence, k: int) -> list:
    return [v for j, v in enumerate(vals, 1) if j != k]


def _check_range(name: str, v: int, n: int) -> None:
    if not 1 <= v <= n:
        raise IndexOutOfRange(f"{name}={v} outside 1..{n}")


def _check_shape(params: ModelParams, col_deficit: int, what: str) -> None:
    if params.n_cols != params.n_rows - col_deficit:
        raise DimensionMismatch(
            f"{what} lives on an N x (N-{col_deficit}) lattice, params describe {params.n_rows}x{params.n_cols}"
        )


# -- roll coefficients ------------------------------------------------------


def _f(u, v, lam):
    return ratio_fg(u, v, lam)[0]


def _g(u, v, lam):
    return ratio_fg(u, v, lam)[1]


def right_roll_coefficient(alpha: int, r: int, xs: Sequence, lam):
    """Weight with which ``x_alpha`` reaches the top when a right arrow rolls up from row ``r``."""
    xa, xr = xs[alpha - 1], xs[r - 1]
    coef = g_over_f(xr, xa, lam)
    for i in range(1, r + 1):
        if i != alpha:
            coef *= _f(xs[i - 1], xa, lam)
    return coef


def left_roll_coefficient(alpha: int, r: int, xs: Sequence, lam):
    """Mirror of :func:`right_roll_coefficient` for an inverted left arrow."""
    xa, xr = xs[alpha - 1], xs[r - 1]
    coef = g_over_f(xa, xr, lam)
    for i in range(1, r + 1):
        if i != alpha:
            coef *= _f(xa, xs[i - 1], lam)
    return coef


def column_roll_coefficient(beta: int, c: int, ys: Sequence, lam):
    """Weight with which ``y_beta`` reaches the leftmost column when a top arrow rolls left from column ``c``."""
    yb, yc = ys[beta - 1], ys[c - 1]
    coef = g_over_f(yc, yb, lam)
    for k in range(c, len(ys) + 1):
        if k != beta:
            coef *= _f(ys[k - 1], yb, lam)
    return coef


# -- generic rolled sum -----------------------------------------------------


def _rolled_sum(inversions: Sequence[tuple[int, str]], xs: list, ys: list, lam):
    """Partition function of an ``len(xs) x len(ys)`` lattice with inverted side arrows.

    ``inversions`` lists ``(row, side)`` pairs at distinct rows; all other
    boundary arrows are domain-wall.  The topmost arrow is rolled to row 1,
    the frozen row peeled, and the rest handled recursively.
    """
    if not inversions:
        return izergin_value(lam, xs, ys)
    (r, side), rest = inversions[0], inversions[1:]
    roll = right_roll_coefficient if side == RIGHT else left_roll_coefficient
    peel = weight_a if side == RIGHT else weight_b
    shifted = [(row - 1, s) for row, s in rest]
    total = 0
    for alpha in range(1, r + 1):
        xa = xs[alpha - 1]
        term = roll(alpha, r, xs, lam) * math.prod(peel(xa, yj, lam) for yj in ys)
        total += term * _rolled_sum(shifted, _without(xs, alpha), ys, lam)
    return total


def _right_column(r: int, xs: Sequence, y1, lam):
    n = len(xs)
    w = weight_c(xs[r - 1], y1, lam)
    for i in range(1, r):
        w *= weight_b(xs[i - 1], y1, lam)
    for i in range(r + 1, n + 1):
        w *= weight_a(xs[i - 1], y1, lam)
    return w


def _done(value) -> complex:
    return complex(value)


# -- defining boundaries ----------------------------------------------------


def right_column_boundary(n: int, r: int) -> BoundarySpec:
    """The ``N x 1`` right part: only row ``r`` has its left arrow pointing in."""
    return make_boundary(n, 1, [("left", i) for i in range(1, n + 1) if i != r])


def onepoint_boundary(n_rows: int, r: int, n_cols: int | None = None) -> BoundarySpec:
    """Left part: ``N x (N-1)`` lattice with the right arrow at row ``r`` inverted."""
    return make_boundary(n_rows, n_rows - 1 if n_cols is None else n_cols, [("right", r)])


def case1_boundary(n: int, r1: int, r2: int) -> BoundarySpec:
    return make_boundary(n, n - 2, [("right", r1), ("right", r2)])


def case2_boundary(n: int, r: int, c: int) -> BoundarySpec:
    return make_boundary(n, n, [("right", r), ("top", c)])


def case3_boundary(n: int, r_right: int, r_left: int) -> BoundarySpec:
    return make_boundary(n, n - 2, [("right", r_right), ("left", r_left)])


def case4_boundary(n: int, i: int) -> BoundarySpec:
    return make_boundary(n, n - 2, [("right", i), ("left", i)])


# -- 1-point functions ------------------------------------------------------


def right_column_weight(r: int, params: ModelParams) -> complex:
    """Weight of the right column (rapidity ``y_1``) when its single ``c`` vertex sits at row ``r``."""
    _check_range("r", r, params.n_rows)
    if params.n_cols < 1:
        raise DimensionMismatch("right_column_weight needs the column rapidity y_1")
    return _done(_right_column(r, params.x, params.y[0], params.lam))


def left_onepoint(r: int, params: ModelParams, backend: str = "formula", dps: int | None = WORKING_DPS) -> complex:
    """Left 1-point function on the ``N x (N-1)`` left part described by ``params``.

    ``params.y`` are the left part's own columns, i.e. ``y_2..y_N`` of the
    full lattice.
    """
    _check_shape(params, 1, "left_onepoint")
    _check_range("r", r, params.n_rows)
    if backend == "oracle":
        return brute_partition(onepoint_boundary(params.n_rows, r), params)
    with _arith(dps):
        lam, xs, ys = _lift(params, dps)
        return _done(_rolled_sum([(r, RIGHT)], xs, ys, lam))


def bpz_onepoint(r: int, params: ModelParams, backend: str = "formula", dps: int | None = WORKING_DPS) -> complex:
    """Normalised boundary 1-point function ``H_N^r``.

    The probability that the unique ``c`` vertex of the rightmost column sits
    at row ``r``; sums to 1 over ``r``.
    """
    n = params.n_rows
    _check_shape(params, 0, "bpz_onepoint")
    _check_range("r", r, n)
    if backend == "oracle":
        z = brute_partition(dwbc(n), params)
        if abs(z) <= ZERO_PARTITION_FLOOR:
            raise ZeroPartition("Z_N vanishes")
        return brute_partition(dwbc(n), params, filter=[(r, 1, "c")]) / z
    with _arith(dps):
        lam, xs, ys = _lift(params, dps)
        z = izergin_value(lam, xs, ys)
        if abs(z) <= ZERO_PARTITION_FLOOR:
            raise ZeroPartition("Z_N vanishes")
        left = _rolled_sum([(r, RIGHT)], xs, ys[1:], lam)
        return _done(_right_column(r, xs, ys[0], lam) * left / z)


# -- 2-point functions ------------------------------------------------------


def twopoint_case1(r1: int, r2: int, params: ModelParams, backend: str = "formula", dps: int | None = WORKING_DPS) -> complex:
    """Two inverted right arrows at rows ``r1 < r2`` of an ``N x (N-2)`` lattice."""
    _check_shape(params, 2, "twopoint_case1")
    n = params.n_rows
    _check_range("r1", r1, n)
    _check_range("r2", r2, n)
    if r1 >= r2:
        raise InvalidOrder(f"case 1 needs r1 < r2, got r1={r1}, r2={r2}")
    if backend == "oracle":
        return brute_partition(case1_boundary(n, r1, r2), params)
    with _arith(dps):
        lam, xs, ys = _lift(params, dps)
        return _done(_rolled_sum([(r1, RIGHT), (r2, RIGHT)], xs, ys, lam))


def twopoint_case2(r: int, c: int, params: ModelParams, backend: str = "formula", dps: int | None = WORKING_DPS) -> complex:
    """Inverted right arrow at row ``r`` and inverted top arrow at column ``c`` of an ``N x N`` lattice."""
    _check_shape(params, 0, "twopoint_case2")
    n = params.n_rows
    _check_range("r", r, n)
    _check_range("c", c, n)
    if backend == "oracle":
        return brute_partition(case2_boundary(n, r, c), params)
    with _arith(dps):
        lam, xs, ys = _lift(params, dps)
        total = 0
        for beta in range(c, n + 1):
            yb = ys[beta - 1]
            col = column_roll_coefficient(beta, c, ys, lam) * math.prod(weight_b(xi, yb, lam) for xi in xs)
            rest_y = _without(ys, beta)
            for alpha in range(1, r + 1):
                xa = xs[alpha - 1]
                top = math.prod(weight_a(xa, yj, lam) for yj in rest_y)
                z = izergin_value(lam, _without(xs, alpha), rest_y)
                total += right_roll_coefficient(alpha, r, xs, lam) * col * top * z
        return _done(total)


def twopoint_case3(
    r_right: int, r_left: int, params: ModelParams, backend: str = "formula", dps: int | None = WORKING_DPS
) -> complex:
    """Inverted right arrow at ``r_right`` and inverted left arrow at ``r_left != r_right``, ``N x (N-2)`` lattice."""
    _check_shape(params, 2, "twopoint_case3")
    n = params.n_rows
    _check_range("r_right", r_right, n)
    _check_range("r_left", r_left, n)
    if r_right == r_left:
        raise InvalidOrder("arrows directly opposite each other: use twopoint_case4")
    if backend == "oracle":
        return brute_partition(case3_boundary(n, r_right, r_left), params)
    with _arith(dps):
        lam, xs, ys = _lift(params, dps)
        return _done(_rolled_sum(sorted([(r_right, RIGHT), (r_left, LEFT)]), xs, ys, lam))


def twopoint_case4(
    i: int,
    params: ModelParams,
    backend: str = "formula",
    terminal: str = "formula",
    dps: int | None = WORKING_DPS,
) -> complex:
    """Inverted right and left arrows both at row ``i`` of an ``N x (N-2)`` lattice.

    ``backend="oracle"`` brute-forces the lattice directly.  Otherwise the
    row recursion runs down to ``i = 1`` (where the function vanishes) and
    each opposite-boundary term is evaluated by the closed form or, with
    ``terminal="oracle"``, by brute force.
    """
    _check_shape(params, 2, "twopoint_case4")
    n = params.n_rows
    _check_range("i", i, n)
    if backend == "oracle":
        return brute_partition(case4_boundary(n, i), params)

    if terminal == "oracle":

        def opposite(row, xs, lam, ys):
            return brute_partition(case3_boundary(n, row - 1, row), params.replace(x=xs))

        lam, xs, ys = params.lam, list(params.x), list(params.y)
        return _done(_case4(i, xs, ys, lam, opposite))

    def opposite(row, xs, lam, ys):
        return _rolled_sum([(row - 1, RIGHT), (row, LEFT)], xs, ys, lam)

    with _arith(dps):
        lam, xs, ys = _lift(params, dps)
        return _done(_case4(i, xs, ys, lam, opposite))


def _case4(i: int, xs: list, ys: list, lam, opposite):
    # linear recursion: one case-4 term per level, so no memoisation needed
    total = 0
    while i > 1:
        sw = _swap(xs, i)
        xi, xm = xs[i - 1], xs[i - 2]
        total += _g(xi, xm, lam) * opposite(i, xs, lam, ys) + _g(xm, xi, lam) * opposite(i, sw, lam, ys)
        xs, i = sw, i - 1
    return total


# -- identity checks (oracle on every side) ---------------------------------


def _residual(lhs: complex, rhs_terms: Sequence[complex]) -> float:
    rhs = sum(rhs_terms)
    scale = max([abs(lhs)] + [abs(t) for t in rhs_terms])
    return abs(lhs - rhs) / scale if scale > 0 else 0.0


def _rows_with_top(xs: Sequence, first: int, rows: Sequence[int]) -> list:
    """Reorder ``xs`` so that among ``rows`` the topmost carries ``x_first``."""
    out = list(xs)
    labels = [first] + [k for k in rows if k != first]
    for pos, lab in zip(rows, labels):
        out[pos - 1] = xs[lab - 1]
    return out


def roll_step_check(i: int, params: ModelParams) -> float:
    """Residual of ``F_i^i = f(x_{i-1}, x_i) F_{i-1}^i + g(x_i, x_{i-1}) F_{i-1}^{i-1}``.

    ``params`` describes the ``N x (N-1)`` left part; every ``F`` is brute-forced.
    """
    _check_shape(params, 1, "roll_step_check")
    n = params.n_rows
    if not 2 <= i <= n:
        raise IndexOutOfRange(f"i={i} outside 2..{n}")
    lam, xs = params.lam, list(params.x)

    def F(row, x):
        return brute_partition(onepoint_boundary(n, row), params.replace(x=x))

    xi, xm = xs[i - 1], xs[i - 2]
    lhs = F(i, xs)
    return _residual(lhs, [_f(xm, xi, lam) * F(i - 1, _swap(xs, i)), _g(xi, xm, lam) * F(i - 1, xs)])


def roll_twice_check(i: int, params: ModelParams) -> float:
    """Residual of the three-term expansion obtained by rolling twice from row ``i``.

    ``F_i^i = f_{i-1,i} f_{i-2,i} F_{i-2}^i + f_{i-2,i-1} g_{i,i-1} F_{i-2}^{i-1}
    + f_{i-1,i-2} g_{i,i-2} F_{i-2}^{i-2}`` with ``f_{p,q} = a(x_p,x_q)/b(x_p,x_q)``
    and ``F_{i-2}^m`` the lattice whose row ``i-2`` carries ``x_m``.
    """
    _check_shape(params, 1, "roll_twice_check")
    n = params.n_rows
    if not 3 <= i <= n:
        raise IndexOutOfRange(f"i={i} outside 3..{n}")
    lam, xs = params.lam, list(params.x)
    u = {k: xs[k - 1] for k in (i - 2, i - 1, i)}
    block = [i - 2, i - 1, i]

    def F(top_label):
        return brute_partition(onepoint_boundary(n, i - 2), params.replace(x=_rows_with_top(xs, top_label, block)))

    terms = [
        _f(u[i - 1], u[i], lam) * _f(u[i - 2], u[i], lam) * F(i),
        _f(u[i - 2], u[i - 1], lam) * _g(u[i], u[i - 1], lam) * F(i - 1),
        _f(u[i - 1], u[i - 2], lam) * _g(u[i], u[i - 2], lam) * F(i - 2),
    ]
    return _residual(brute_partition(onepoint_boundary(n, i), params), terms)


def coefficient_identity_residual(u_im2: complex, u_im1: complex, u_i: complex, lam: complex) -> float:
    """Residual of ``g_{i-2,i} f_{i,i-1} + g_{i-1,i} g_{i-2,i-1} = g_{i-2,i} f_{i-2,i-1}``.

    This is the Yang-Baxter relation that collapses the ``2^(r-1)`` roll terms
    to ``r``; arguments are the three row rapidities.
    """
    u = {0: u_im2, 1: u_im1, 2: u_i}
    lhs = _g(u[0], u[2], lam) * _f(u[2], u[1], lam) + _g(u[1], u[2], lam) * _g(u[0], u[1], lam)
    rhs = _g(u[0], u[2], lam) * _f(u[0], u[1], lam)
    return _residual(lhs, [rhs])


def case4_identity_terms(i: int, params: ModelParams) -> dict[str, complex]:
    """The four brute-forced pieces of the opposite-arrow recursion at row ``i``.

    Keys: ``lhs`` (both arrows at row ``i``), ``up`` (both at ``i-1``, rows
    swapped), ``cross`` (left at ``i``, right at ``i-1``), ``cross_swapped``
    (same with rows swapped), plus the coefficients ``g_cross`` and
    ``g_cross_swapped``.
    """
    _check_shape(params, 2, "case4_identity_terms")
    n = params.n_rows
    if not 2 <= i <= n:
        raise IndexOutOfRange(f"i={i} outside 2..{n}")
    lam, xs = params.lam, list(params.x)
    sw = _swap(xs, i)
    xi, xm = xs[i - 1], xs[i - 2]
    return {
        "lhs": brute_partition(case4_boundary(n, i), params),
        "up": brute_partition(case4_boundary(n, i - 1), params.replace(x=sw)),
        "cross": brute_partition(case3_boundary(n, i - 1, i), params),
        "cross_swapped": brute_partition(case3_boundary(n, i - 1, i), params.replace(x=sw)),
        "g_cross": _g(xi, xm, lam),
        "g_cross_swapped": _g(xm, xi, lam),
    }


def case4_identity_residual(i: int, params: ModelParams) -> float:
    t = case4_identity_terms(i, params)
    return _residual(t["lhs"], [t["up"], t["g_cross"] * t["cross"], t["g_cross_swapped"] * t["cross_swapped"]])
