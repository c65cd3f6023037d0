"""Izergin's determinant formula for the domain-wall partition function."""

from __future__ import annotations

import cmath
import math
from collections.abc import Collection, Sequence

import mpmath
import numpy as np

from .errors import NonSquare, RemovalMismatch
from .weights import ModelParams, require_nonzero, weight_a, weight_b, weight_c

# Above this size the prefactor products are accumulated as (log-magnitude, phase).
_DIRECT_PRODUCT_MAX_N = 12


def lu_decompose(M: Sequence[Sequence]) -> tuple[list[int], list[list], list[list], int]:
    """Doolittle LU with partial pivoting on a square matrix of any scalar type.

    Returns ``(perm, L, U, sign)`` with ``M[perm[i]] == (L @ U)[i]`` and
    ``sign`` the parity of ``perm``.  Works for ``complex`` and mpmath
    numbers alike.
    """
    n = len(M)
    A = [list(row) for row in M]
    perm = list(range(n))
    sign = 1
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(A[i][k]))
        if p != k:
            A[k], A[p] = A[p], A[k]
            perm[k], perm[p] = perm[p], perm[k]
            sign = -sign
        pivot = A[k][k]
        if pivot == 0:
            continue
        for i in range(k + 1, n):
            m = A[i][k] / pivot
            A[i][k] = m
            for j in range(k + 1, n):
                A[i][j] -= m * A[k][j]
    zero = 0 * A[0][0] if n else 0
    L = [[A[i][j] if j < i else (zero + 1 if j == i else zero) for j in range(n)] for i in range(n)]
    U = [[A[i][j] if j >= i else zero for j in range(n)] for i in range(n)]
    return perm, L, U, sign


def lu_det(M: Sequence[Sequence]) -> tuple[complex, float]:
    """Determinant by partial-pivoting LU plus the residual ``|PA - LU| / |A|`` (Frobenius)."""
    perm, L, U, sign = lu_decompose(M)
    det = sign * math.prod(U[i][i] for i in range(len(U)))
    A = np.array([[complex(v) for v in row] for row in M])
    Lm = np.array([[complex(v) for v in row] for row in L])
    Um = np.array([[complex(v) for v in row] for row in U])
    norm = np.linalg.norm(A)
    resid = float(np.linalg.norm(A[perm] - Lm @ Um) / norm) if norm > 0 else 0.0
    return det, resid


def izergin_matrix(params: ModelParams) -> np.ndarray:
    """``M[i, j] = c(x_i, y_j) / (a(x_i, y_j) b(x_i, y_j))`` as a complex array."""
    return np.array(_matrix(params.lam, params.x, params.y), dtype=complex)


def _matrix(lam, xs, ys) -> list[list]:
    M = []
    for i, xi in enumerate(xs):
        row = []
        for j, yj in enumerate(ys):
            a, b, c = weight_a(xi, yj, lam), weight_b(xi, yj, lam), weight_c(xi, yj, lam)
            require_nonzero(a, what=f"a(x_{i + 1}, y_{j + 1})")
            require_nonzero(b, scale=abs(a), what=f"b(x_{i + 1}, y_{j + 1})")
            row.append(c / (a * b))
        M.append(row)
    return M


def _check_distinct(lam, vals, name) -> None:
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            require_nonzero(weight_b(vals[i], vals[j], lam), what=f"b({name}_{i + 1}, {name}_{j + 1})")


def izergin_value(lam, xs: Sequence, ys: Sequence):
    """Izergin's formula on raw rapidity lists, in whatever arithmetic the inputs use.

    Returns 1 for the empty lattice.
    """
    n = len(xs)
    if len(ys) != n:
        raise NonSquare(f"Izergin's formula needs as many rows as columns, got {n}x{len(ys)}")
    if n == 0:
        return 1
    _check_distinct(lam, xs, "x")
    _check_distinct(lam, ys, "y")
    M = _matrix(lam, xs, ys)
    _, _, U, sign = lu_decompose(M)
    det = sign * math.prod(U[i][i] for i in range(n))

    num = [weight_a(xi, yj, lam) * weight_b(xi, yj, lam) for xi in xs for yj in ys]
    # i < j with b(x_i, x_j) and b(y_j, y_i): the y pair enters reversed
    den = [weight_b(xs[i], xs[j], lam) * weight_b(ys[j], ys[i], lam) for i in range(n) for j in range(i + 1, n)]
    extended = isinstance(det, (mpmath.mpc, mpmath.mpf))
    if extended or n <= _DIRECT_PRODUCT_MAX_N:
        return math.prod(num) / math.prod(den) * det
    if det == 0:
        return 0j
    log_mag, phase = 0.0, 1 + 0j
    for z in num + [det]:
        log_mag += math.log(abs(z))
        phase *= z / abs(z)
    for z in den:
        log_mag -= math.log(abs(z))
        phase /= z / abs(z)
    return cmath.exp(log_mag) * phase


def izergin_partition(params: ModelParams, dps: int | None = None) -> complex:
    """Domain-wall partition function ``Z_N`` from Izergin's determinant.

    With ``dps`` set, the evaluation runs in mpmath at that many decimal
    digits; the result is always returned as a Python ``complex``.
    """
    if params.n_cols != params.n_rows:
        raise NonSquare(f"Izergin's formula needs as many rows as columns, got {params.n_rows}x{params.n_cols}")
    if dps is None:
        return complex(izergin_value(params.lam, params.x, params.y))
    with mpmath.workdps(dps):
        mp = mpmath.mpc
        return complex(izergin_value(mp(params.lam), [mp(v) for v in params.x], [mp(v) for v in params.y]))


def _keep(vals: Sequence, removed: set[int]) -> list:
    return [v for k, v in enumerate(vals, 1) if k not in removed]


def _check_removal(params: ModelParams, removed_x: Collection[int], removed_y: Collection[int]) -> tuple[set, set]:
    rx, ry = set(removed_x), set(removed_y)
    if len(rx) != len(ry):
        raise RemovalMismatch(f"removing {len(rx)} row and {len(ry)} column rapidities leaves a non-square lattice")
    for name, idx, n in (("x", rx, params.n_rows), ("y", ry, params.n_cols)):
        bad = sorted(k for k in idx if not 1 <= k <= n)
        if bad:
            raise IndexError(f"{name} indices {bad} outside 1..{n}")
    return rx, ry


def reduced_partition(
    params: ModelParams,
    removed_x: Collection[int] = (),
    removed_y: Collection[int] = (),
    dps: int | None = None,
) -> complex:
    """Izergin partition function with the listed (1-based) rapidities deleted.

    Relative order of the surviving rapidities is kept.  Deleting every
    rapidity leaves the empty lattice, whose partition function is 1.
    """
    rx, ry = _check_removal(params, removed_x, removed_y)
    return izergin_partition(params.replace(x=_keep(params.x, rx), y=_keep(params.y, ry)), dps=dps)
