"""Vertex weights, R-matrix and Yang-Baxter checks for the trigonometric six-vertex model.

Arrow conventions used throughout the package:

* horizontal lines are oriented left to right and carry the row rapidities ``x``;
* vertical lines are oriented bottom to top and carry the column rapidities ``y``;
* an arrow is stored as ``+1`` when it points along its line (right or up)
  and ``-1`` when it points against it (left or down).

With these conventions the six flow-conserving vertices are

======  =============================  ==========================
kind    horizontal (left, right)       vertical (bottom, top)
======  =============================  ==========================
A1      (+1, +1)                       (+1, +1)
A2      (-1, -1)                       (-1, -1)
B1      (+1, +1)                       (-1, -1)
B2      (-1, -1)                       (+1, +1)
C1      (+1, -1)                       (-1, +1)
C2      (-1, +1)                       (+1, -1)
======  =============================  ==========================

and the weights are ``a = [y - x + 1]``, ``b = [y - x]``, ``c = [1]`` with
``[u] = sinh(lambda * u)``.
"""

from __future__ import annotations

import cmath
import enum
from collections.abc import Sequence
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import DegenerateRapidities

#: Relative floor below which a weight in a denominator counts as zero.
DEGENERACY_THRESHOLD = 1e-10
#: Default relative tolerance of :func:`is_close`.
DEFAULT_TOL = 1e-9


def bracket(u, lam):
    """Return ``sinh(lam * u)``.

    Plain numbers give a Python ``complex``; mpmath numbers stay in mpmath at
    the working precision, which is how the closed forms run in extended
    precision.
    """
    z = lam * u
    if isinstance(z, (mpmath.mpc, mpmath.mpf)):
        return mpmath.sinh(z)
    return complex(cmath.sinh(z))


def is_close(u: complex, v: complex, tol: float = DEFAULT_TOL) -> bool:
    """Magnitude-aware equality: ``|u - v| <= tol * max(1, |u|, |v|)``."""
    return abs(u - v) <= tol * max(1.0, abs(u), abs(v))


def rel_dev(u: complex, v: complex) -> float:
    """The deviation measure behind :func:`is_close`."""
    return abs(u - v) / max(1.0, abs(u), abs(v))


def strict_rel_dev(u: complex, v: complex) -> float:
    """``|u - v| / max(|u|, |v|)``, 0 when both vanish.

    Unlike :func:`rel_dev` there is no floor of 1, so small values are
    compared with full relative resolution.
    """
    scale = max(abs(u), abs(v))
    return abs(u - v) / scale if scale > 0 else 0.0


def require_nonzero(value: complex, scale: float = 1.0, what: str = "weight") -> complex:
    """Raise :class:`DegenerateRapidities` when ``|value|`` is below the threshold."""
    if abs(value) <= DEGENERACY_THRESHOLD * max(1.0, scale):
        raise DegenerateRapidities(f"{what} vanishes ({value!r}); rapidities are degenerate")
    return value


class VertexKind(enum.Enum):
    A1 = "A1"
    A2 = "A2"
    B1 = "B1"
    B2 = "B2"
    C1 = "C1"
    C2 = "C2"

    @property
    def weight_class(self) -> str:
        return self.value[0].lower()


@dataclass(frozen=True)
class ModelParams:
    """Crossing parameter plus row and column rapidities.

    ``x[0]`` belongs to the top row.  ``y[0]`` belongs to the *rightmost*
    column, so public column ``j`` (1-based, counted from the right) carries
    ``y[j - 1]``.
    """

    lam: complex
    x: tuple[complex, ...]
    y: tuple[complex, ...]

    def __init__(self, lam: complex, x: Sequence[complex], y: Sequence[complex]):
        lam = complex(lam)
        xs = tuple(complex(v) for v in x)
        ys = tuple(complex(v) for v in y)
        for v in (lam, *xs, *ys):
            if not (np.isfinite(v.real) and np.isfinite(v.imag)):
                raise ValueError(f"non-finite parameter {v!r}")
        require_nonzero(cmath.sinh(lam), what="c weight sinh(lambda)")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "x", xs)
        object.__setattr__(self, "y", ys)

    @property
    def n_rows(self) -> int:
        return len(self.x)

    @property
    def n_cols(self) -> int:
        return len(self.y)

    def replace(self, x: Sequence[complex] | None = None, y: Sequence[complex] | None = None) -> ModelParams:
        return ModelParams(self.lam, self.x if x is None else x, self.y if y is None else y)

    def check_generic(self) -> None:
        """Raise if two row rapidities or two column rapidities coincide."""
        for name, vals in (("x", self.x), ("y", self.y)):
            for i in range(len(vals)):
                for j in range(i + 1, len(vals)):
                    require_nonzero(
                        bracket(vals[j] - vals[i], self.lam),
                        what=f"b({name}_{i + 1}, {name}_{j + 1})",
                    )


# -- weights ---------------------------------------------------------------


def weight_a(x: complex, y: complex, lam: complex) -> complex:
    return bracket(-x + y + 1, lam)


def weight_b(x: complex, y: complex, lam: complex) -> complex:
    return bracket(-x + y, lam)


def weight_c(x: complex, y: complex, lam: complex) -> complex:
    # kept as a function of (x, y) so call sites read like the other two
    return bracket(1, lam)


_CLASS_WEIGHT = {"a": weight_a, "b": weight_b, "c": weight_c}


def vertex_weight(kind: VertexKind | str, x: complex, y: complex, params: ModelParams | complex) -> complex:
    """Weight of a vertex of the given kind crossed by rapidities ``x`` (row) and ``y`` (column).

    ``kind`` may be a :class:`VertexKind` or a class letter ``"a"``, ``"b"``, ``"c"``.
    ``params`` may be a :class:`ModelParams` or the bare crossing parameter.
    """
    lam = params.lam if isinstance(params, ModelParams) else complex(params)
    cls = kind.weight_class if isinstance(kind, VertexKind) else kind
    return _CLASS_WEIGHT[cls](x, y, lam)


def r_matrix(x: complex, y: complex, params: ModelParams | complex) -> np.ndarray:
    """4x4 R-matrix in the basis (up-up, up-down, down-up, down-down)."""
    lam = params.lam if isinstance(params, ModelParams) else complex(params)
    a, b, c = weight_a(x, y, lam), weight_b(x, y, lam), weight_c(x, y, lam)
    return np.array(
        [[a, 0, 0, 0], [0, b, c, 0], [0, c, b, 0], [0, 0, 0, a]],
        dtype=complex,
    )


_I2 = np.eye(2, dtype=complex)
# swaps the 2nd and 3rd tensor factors of C^2 x C^2 x C^2
_P23 = np.kron(_I2, np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex))


def ybe_sides(x: complex, y: complex, z: complex, params: ModelParams | complex) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of ``R12(x,y) R13(x,z) R23(y,z) = R23(y,z) R13(x,z) R12(x,y)``."""
    r12 = np.kron(r_matrix(x, y, params), _I2)
    r13 = _P23 @ np.kron(r_matrix(x, z, params), _I2) @ _P23
    r23 = np.kron(_I2, r_matrix(y, z, params))
    return r12 @ r13 @ r23, r23 @ r13 @ r12


def ybe_residual(x: complex, y: complex, z: complex, params: ModelParams | complex) -> float:
    """Relative max-abs difference of the two sides of the matrix Yang-Baxter equation."""
    lhs, rhs = ybe_sides(x, y, z, params)
    diff = float(np.max(np.abs(lhs - rhs)))
    scale = float(max(np.max(np.abs(lhs)), np.max(np.abs(rhs))))
    if scale <= np.finfo(float).tiny:
        return diff
    return diff / scale


def ybe_scalar_residual(x: complex, y: complex, z: complex, params: ModelParams | complex) -> float:
    """Relative residual of ``b(y,z)a(x,z)c(x,y) + c(y,z)c(x,z)b(x,y) = c(x,y)b(x,z)a(y,z)``.

    Evaluated straight from the weight functions, independently of :func:`r_matrix`.
    """
    lam = params.lam if isinstance(params, ModelParams) else complex(params)
    a, b, c = weight_a, weight_b, weight_c
    t1 = b(y, z, lam) * a(x, z, lam) * c(x, y, lam)
    t2 = c(y, z, lam) * c(x, z, lam) * b(x, y, lam)
    t3 = c(x, y, lam) * b(x, z, lam) * a(y, z, lam)
    scale = max(abs(t1), abs(t2), abs(t3))
    if scale <= np.finfo(float).tiny:
        return abs(t1 + t2 - t3)
    return abs(t1 + t2 - t3) / scale


def ratio_fg(u: complex, v: complex, lam: complex) -> tuple[complex, complex]:
    """``(a(u,v)/b(u,v), c(u,v)/b(u,v))`` for two parallel-line rapidities."""
    a, b, c = weight_a(u, v, lam), weight_b(u, v, lam), weight_c(u, v, lam)
    require_nonzero(b, scale=max(abs(a), abs(c)), what="b in roll ratio")
    return a / b, c / b


def roll_ratios(i: int, j: int, params: ModelParams, axis: str = "rows") -> tuple[complex, complex]:
    """``(f_ij, g_ij)`` for rows (``x``) or, with ``axis="columns"``, for columns (``y``).

    Indices are 1-based; column indices count from the right.
    """
    if axis == "rows":
        vals = params.x
    elif axis == "columns":
        vals = params.y
    else:
        raise ValueError(f"axis must be 'rows' or 'columns', not {axis!r}")
    if not (1 <= i <= len(vals) and 1 <= j <= len(vals)):
        raise IndexError(f"roll_ratios indices ({i}, {j}) outside 1..{len(vals)}")
    return ratio_fg(vals[i - 1], vals[j - 1], params.lam)


def g_over_f(u: complex, v: complex, lam: complex) -> complex:
    """``g/f = c(u,v)/a(u,v)``; finite at ``u == v`` where it equals 1."""
    a = weight_a(u, v, lam)
    require_nonzero(a, what="a in g/f")
    return weight_c(u, v, lam) / a
