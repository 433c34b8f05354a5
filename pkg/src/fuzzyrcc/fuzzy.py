"""Grades, t-norms, residual implicators and fuzzy-region membership."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable

import numpy as np

from .geometry import (
    Geometry,
    GeometryError,
    Point,
    contains_points,
    distances_to,
    is_empty,
    signed_distances,
)

# Float drift tolerated (and clamped away) at the ends of [0, 1].
GRADE_TOL = 1e-12

Grade = float


def as_grade(value: float) -> Grade:
    """Validate a truth degree, snapping rounding drift back into [0, 1]."""
    v = float(value)
    if math.isnan(v):
        raise ValueError("grade is NaN")
    if v < 0.0:
        if v < -GRADE_TOL:
            raise ValueError(f"grade {v!r} below 0")
        return 0.0
    if v > 1.0:
        if v > 1.0 + GRADE_TOL:
            raise ValueError(f"grade {v!r} above 1")
        return 1.0
    return v


class TNorm(enum.Enum):
    LUKASIEWICZ = "lukasiewicz"
    MINIMUM = "minimum"
    PRODUCT = "product"

    @classmethod
    def parse(cls, name: str | TNorm) -> TNorm:
        if isinstance(name, TNorm):
            return name
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(
                f"unknown t-norm {name!r}; expected one of {[k.value for k in cls]}"
            ) from None


def t_apply(kind: TNorm, a, b):
    """Elementwise t-norm on floats or arrays, no validation.

    The Lukasiewicz form subtracts the complement of the larger argument
    from the smaller one: that keeps it bitwise commutative and makes
    T(a, 1) == a exact.
    """
    if kind is TNorm.MINIMUM:
        return np.minimum(a, b)
    if kind is TNorm.PRODUCT:
        return np.multiply(a, b)
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    return np.maximum(0.0, lo - (1.0 - hi))


def residuum_apply(kind: TNorm, a, b):
    """Elementwise residual implicator, no validation."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    le = a <= b
    if kind is TNorm.LUKASIEWICZ:
        other = np.minimum(1.0, (1.0 - a) + b)
    elif kind is TNorm.MINIMUM:
        other = b
    else:
        with np.errstate(divide="ignore", invalid="ignore"):
            other = np.where(a > 0, b / np.where(a > 0, a, 1.0), 1.0)
    return np.where(le, 1.0, other)


def tnorm(kind: TNorm, a: Grade, b: Grade) -> Grade:
    return float(t_apply(TNorm.parse(kind), as_grade(a), as_grade(b)))


def residuum(kind: TNorm, a: Grade, b: Grade) -> Grade:
    """I_T(a, b) = sup{c : T(a, c) <= b}."""
    return float(residuum_apply(TNorm.parse(kind), as_grade(a), as_grade(b)))


def tnorm_all(kind: TNorm, grades: Iterable[Grade]) -> Grade:
    """Left fold of T over ``grades`` (1 for an empty sequence)."""
    kind = TNorm.parse(kind)
    return float(reduce(lambda x, y: t_apply(kind, x, y), (as_grade(g) for g in grades), 1.0))


def tnorm_sym(kind: TNorm, grades: Iterable[Grade]) -> Grade:
    """Fold of T over the sorted grades, so the result ignores argument order bitwise."""
    return tnorm_all(kind, sorted(as_grade(g) for g in grades))


@dataclass(frozen=True)
class FuzzyRegion:
    """Crisp core plus a support radius over which membership falls linearly to 0."""

    core: Geometry
    support_radius: float = 0.0

    def __post_init__(self):
        sr = float(self.support_radius)
        if not math.isfinite(sr) or sr < 0:
            raise GeometryError(f"support radius must be finite and >= 0, got {sr}")
        object.__setattr__(self, "support_radius", sr)

    @property
    def is_empty(self) -> bool:
        return is_empty(self.core)

    def with_support_radius(self, sr: float) -> FuzzyRegion:
        return FuzzyRegion(self.core, sr)


def membership_from_signed(sr: float, s):
    """Membership as a function of signed distance to the core (positive inside)."""
    s = np.asarray(s, dtype=float)
    if sr == 0:
        return np.where(s >= 0, 1.0, 0.0)
    return np.where(s >= 0, 1.0, np.clip(1.0 + s / sr, 0.0, 1.0))


def memberships(r: FuzzyRegion, pts) -> np.ndarray:
    """Vectorised ``membership`` over an (n, 2) array of points."""
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    if r.is_empty:
        return np.zeros(len(pts))
    if r.support_radius == 0:
        return np.where(contains_points(r.core, pts), 1.0, 0.0)
    d = distances_to(r.core, pts)
    return np.clip(1.0 - d / r.support_radius, 0.0, 1.0)


def membership(r: FuzzyRegion, p: Point) -> Grade:
    """1 in the core, 1 - distance/support_radius in the halo, 0 beyond."""
    return float(memberships(r, [p.as_tuple()])[0])


def signed_memberships(r: FuzzyRegion, pts) -> tuple[np.ndarray, np.ndarray]:
    """(signed distance, membership) for each point; the pair relations need."""
    s = signed_distances(r.core, pts)
    return s, membership_from_signed(r.support_radius, s)
