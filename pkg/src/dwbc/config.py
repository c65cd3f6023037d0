"""Run configuration: JSON ingestion, validation and seeded random parameters."""

from __future__ import annotations

import hashlib
import json
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .lattice import ENUMERATION_CAP
from .weights import ModelParams

RAPIDITY_RANGE = (0.05, 0.95)
LAMBDA_RANGE = (0.3, 1.5)
SEPARATION_FLOOR = 0.02
_MAX_REJECTIONS = 100_000

_FIELDS = ("lambda", "x", "y", "seed", "tolerance", "enumeration_cap")


class ConfigError(Exception):
    pass


class ParseError(ConfigError):
    """Malformed document or field; the message names the line or field."""


class ValidationError(ConfigError):
    """Well-formed input that violates a RunConfig invariant."""


@dataclass(frozen=True)
class RunConfig:
    lam: complex
    x: tuple[complex, ...]
    y: tuple[complex, ...]
    seed: int = 0
    tolerance: float | None = None
    enumeration_cap: int = ENUMERATION_CAP

    @property
    def n(self) -> int:
        return len(self.x)

    def params(self) -> ModelParams:
        return ModelParams(self.lam, self.x, self.y)

    def to_json(self) -> dict[str, Any]:
        return {
            "lambda": complex_pair(self.lam),
            "x": [complex_pair(v) for v in self.x],
            "y": [complex_pair(v) for v in self.y],
            "seed": self.seed,
            "tolerance": self.tolerance,
            "enumeration_cap": self.enumeration_cap,
        }

    def digest(self, *extra: Any) -> str:
        """Short SHA-256 of the canonical JSON form plus any extra context."""
        blob = json.dumps([self.to_json(), *extra], sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def complex_pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _pair(value: Any, field: str) -> complex:
    ok = (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    )
    if not ok:
        raise ParseError(f"field {field}: expected a two-element [re, im] array, got {value!r}")
    return complex(value[0], value[1])


def _pairs(value: Any, field: str) -> tuple[complex, ...]:
    if not isinstance(value, list):
        raise ParseError(f"field {field}: expected a list of [re, im] arrays")
    return tuple(_pair(v, f"{field}[{k}]") for k, v in enumerate(value))


def parse_lambda_flag(text: str) -> complex:
    """``"RE,IM"`` (or a bare ``"RE"``) from the command line."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ParseError(f"--lambda: expected RE,IM, got {text!r}")


def load_document(text: str, source: str = "<config>") -> dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: top level must be a JSON object")
    unknown = sorted(set(doc) - set(_FIELDS))
    if unknown:
        raise ParseError(f"{source}: unknown field(s) {', '.join(unknown)}")
    return doc


def _min_gap(vals: Sequence[float]) -> float:
    v = np.sort(np.asarray(vals, dtype=float))
    return float(np.min(np.diff(v))) if len(v) > 1 else np.inf


def random_rapidities(rng: np.random.Generator, count: int) -> list[float]:
    """``count`` values uniform on the rapidity range, redrawn until all gaps reach the floor."""
    lo, hi = RAPIDITY_RANGE
    for _ in range(_MAX_REJECTIONS):
        vals = rng.uniform(lo, hi, count)
        if _min_gap(vals) >= SEPARATION_FLOOR:
            return [float(v) for v in vals]
    raise ValidationError(f"could not place {count} rapidities {SEPARATION_FLOOR} apart")


def random_params(
    rng: np.random.Generator, n_rows: int, n_cols: int | None = None, lam: complex | None = None
) -> ModelParams:
    """Seeded generic parameters following the package's random law.

    Row and column rapidities are drawn as one pool so that every ``b(x_i, y_j)``
    is also kept away from zero.  ``lam`` is always drawn, then replaced if pinned,
    so pinning it does not shift the rapidities.
    """
    n_cols = n_rows if n_cols is None else n_cols
    drawn = float(rng.uniform(*LAMBDA_RANGE))
    pool = random_rapidities(rng, n_rows + n_cols)
    return ModelParams(drawn if lam is None else lam, pool[:n_rows], pool[n_rows:])


def parse_config(
    path: str | Path | None = None,
    *,
    text: str | None = None,
    n: int | None = None,
    seed: int | None = None,
    lam: complex | None = None,
    tolerance: float | None = None,
    enumeration_cap: int | None = None,
    require_square: bool = False,
    n_default: int | None = None,
) -> RunConfig:
    """Build a validated :class:`RunConfig`.

    Values come from the JSON document (``path`` or ``text``) and the keyword
    flags, flags taking precedence.  Missing rapidities are generated from the
    seed for an ``n x n`` lattice (``n_default`` when ``n`` is not given).
    """
    doc: dict[str, Any] = {}
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"{path}: {exc.strerror}") from None
    if text is not None:
        doc = load_document(text, str(path) if path is not None else "<config>")

    if seed is None:
        seed = doc.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise ParseError(f"field seed: expected an unsigned integer, got {seed!r}")
    if tolerance is None and doc.get("tolerance") is not None:
        tolerance = doc["tolerance"]
        if not isinstance(tolerance, (int, float)) or isinstance(tolerance, bool):
            raise ParseError(f"field tolerance: expected a number, got {tolerance!r}")
    if tolerance is not None and not tolerance > 0:
        raise ValidationError(f"tolerance must be positive, got {tolerance}")
    if enumeration_cap is None:
        enumeration_cap = doc.get("enumeration_cap", ENUMERATION_CAP)
        if not isinstance(enumeration_cap, int) or isinstance(enumeration_cap, bool):
            raise ParseError(f"field enumeration_cap: expected an integer, got {enumeration_cap!r}")
    if enumeration_cap < 1:
        raise ValidationError(f"enumeration_cap must be positive, got {enumeration_cap}")

    if lam is None and "lambda" in doc:
        lam = _pair(doc["lambda"], "lambda")
    xs = _pairs(doc["x"], "x") if "x" in doc else None
    ys = _pairs(doc["y"], "y") if "y" in doc else None
    if (xs is None) != (ys is None):
        raise ValidationError("give both x and y explicitly, or neither")

    if xs is None:
        n = n_default if n is None else n
        if n is None:
            raise ValidationError("no rapidities given: pass --n (random draw) or a config with x and y")
        if n < 1:
            raise ValidationError(f"--n must be positive, got {n}")
        drawn = random_params(np.random.default_rng(seed), n, lam=lam)
        lam, xs, ys = drawn.lam, drawn.x, drawn.y
    else:
        if not xs or not ys:
            raise ValidationError("x and y must be nonempty")
        if n is not None and n != len(xs):
            raise ValidationError(f"--n {n} disagrees with the {len(xs)} row rapidities given")
        if lam is None:
            lam = complex(np.random.default_rng(seed).uniform(*LAMBDA_RANGE))
    if require_square and len(xs) != len(ys):
        raise ValidationError(f"need as many column as row rapidities, got {len(xs)} x and {len(ys)} y")
    return RunConfig(complex(lam), tuple(xs), tuple(ys), seed, tolerance, enumeration_cap)
