"""Crisp and fuzzy skylines over regions scored against target sites.

Every dimension is "smaller is better".  In distance mode a candidate's
value per target is the crisp core-to-core distance; in connection mode
it is 1 - connection grade, so the most connected region scores 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

from .connection import ConnectionConfig, NearnessParams, connect_grid, nearness_apply
from .fuzzy import FuzzyRegion, Grade, TNorm, as_grade, t_apply
from .geometry import distance_geometry_geometry


class Mode(enum.Enum):
    DISTANCE = "distance"
    CONNECTION = "connection"


@dataclass(frozen=True)
class CandidateTuple:
    region_id: Hashable
    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if any(not math.isfinite(v) or v < 0 for v in vals):
            raise ValueError(f"candidate {self.region_id}: values must be finite and >= 0, got {vals}")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class SkylineQuery:
    targets: tuple[FuzzyRegion, ...]
    mode: Mode = Mode.DISTANCE
    params: NearnessParams = field(default_factory=NearnessParams)
    min_c: Grade = 0.01
    tnorm: TNorm = TNorm.LUKASIEWICZ
    cfg: ConnectionConfig = field(default_factory=ConnectionConfig)

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        if not self.targets:
            raise ValueError("a skyline query needs at least one target")
        object.__setattr__(self, "min_c", as_grade(self.min_c))
        object.__setattr__(self, "tnorm", TNorm.parse(self.tnorm))
        object.__setattr__(self, "mode", Mode(self.mode))


@dataclass(frozen=True)
class SkylineEntry:
    region_id: Hashable
    grade: Grade
    values: tuple[float, ...]


@dataclass(frozen=True)
class SkylineResult:
    entries: tuple[SkylineEntry, ...]

    @property
    def ids(self) -> list:
        return [e.region_id for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


def build_candidates(regions, q: SkylineQuery) -> list[CandidateTuple]:
    """Score each region (anything with ``id`` and ``fuzzy``) against every target."""
    if not regions:
        raise ValueError("no candidate regions")
    out = []
    for rec in regions:
        if q.mode is Mode.DISTANCE:
            vals = [distance_geometry_geometry(rec.fuzzy.core, t.core) for t in q.targets]
        else:
            vals = [1.0 - connect_grid(rec.fuzzy, t, q.cfg) for t in q.targets]
        out.append(CandidateTuple(rec.id, tuple(vals)))
    return out


def dominates(u: CandidateTuple, v: CandidateTuple) -> bool:
    return all(a <= b for a, b in zip(u.values, v.values)) and any(
        a < b for a, b in zip(u.values, v.values)
    )


def crisp_skyline(cands: Sequence[CandidateTuple]) -> set:
    """Block-nested-loop skyline: the ids of all non-dominated tuples."""
    window: list[CandidateTuple] = []
    for c in cands:
        if any(dominates(w, c) for w in window):
            continue
        window = [w for w in window if not dominates(c, w)]
        window.append(c)
    return {w.region_id for w in window}


def _at_least(params: NearnessParams, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Degree u is at least as good as v per dimension (smaller is better)."""
    return np.where(u <= v, 1.0, nearness_apply(params, np.maximum(u - v, 0.0)))


def _dominance(kind: TNorm, params: NearnessParams, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Vectorised fuzzy dominance of u over v; the last axis holds dimensions."""
    at_least = _at_least(params, u, v)
    strictly = 1.0 - _at_least(params, v, u)
    fold = at_least[..., 0]
    for i in range(1, at_least.shape[-1]):
        fold = t_apply(kind, fold, at_least[..., i])
    return t_apply(kind, fold, strictly.max(axis=-1))


def fuzzy_dominance(u: CandidateTuple, v: CandidateTuple, params: NearnessParams, tnorm: TNorm) -> Grade:
    """Degree to which ``u`` strictly dominates ``v``."""
    if len(u.values) != len(v.values):
        raise ValueError("candidates differ in dimensionality")
    uv = np.array(u.values)
    vv = np.array(v.values)
    return as_grade(float(_dominance(TNorm.parse(tnorm), params, uv, vv)))


def skyline_grades(cands: Sequence[CandidateTuple], params: NearnessParams, tnorm: TNorm) -> np.ndarray:
    """grade(u) = 1 - max over v != u of dominance(v, u)."""
    tnorm = TNorm.parse(tnorm)
    vals = np.array([c.values for c in cands], dtype=float)
    if vals.ndim != 2 or len({len(c.values) for c in cands}) != 1:
        raise ValueError("candidates differ in dimensionality")
    n = len(vals)
    # dom[i, j] = dominance of candidate i over candidate j
    dom = _dominance(tnorm, params, vals[:, None, :], vals[None, :, :])
    np.fill_diagonal(dom, 0.0)
    return 1.0 - dom.max(axis=0) if n > 1 else np.ones(n)


def fuzzy_skyline(cands: Sequence[CandidateTuple], q: SkylineQuery) -> SkylineResult:
    if not cands:
        return SkylineResult(())
    grades = skyline_grades(cands, q.params, q.tnorm)
    entries = [
        SkylineEntry(c.region_id, as_grade(g), c.values)
        for c, g in zip(cands, grades)
        if g >= q.min_c
    ]
    entries.sort(key=lambda e: (-e.grade, e.region_id))
    return SkylineResult(tuple(entries))
