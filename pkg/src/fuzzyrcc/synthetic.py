"""Seeded synthetic region sets standing in for real administrative data."""

from __future__ import annotations

import math

import numpy as np

from .datasets import Dataset, RegionRecord
from .fuzzy import FuzzyRegion
from .geometry import MultiPolygon, Polygon, rectangle

SPACING = 3.0
# planar frame well outside lon/lat ranges
ORIGIN = (1000.0, 1000.0)


def _convex_blob(rng: np.random.Generator, cx: float, cy: float, radius: float) -> Polygon:
    n = int(rng.integers(5, 9))
    angles = np.sort(rng.uniform(0, 2 * math.pi, n))
    # keep vertices spread out so the blob stays fat
    angles = np.linspace(0, 2 * math.pi, n, endpoint=False) + 0.3 * (angles - angles.mean()) / n
    angles += rng.uniform(0, 2 * math.pi)
    radii = radius * rng.uniform(0.8, 1.0, n)
    pts = [(cx + r * math.cos(t), cy + r * math.sin(t)) for r, t in zip(radii, angles)]
    return Polygon.from_coords(pts)


def synthetic_regions(n: int = 31, seed: int = 0) -> Dataset:
    """``n`` disjoint convex regions on a jittered grid with two disease-like attributes.

    Region ids start at 101.  The attributes ``skin`` and ``breast`` fall off
    with distance from the grid origin plus noise, so they rank-correlate
    with proximity to a plume placed there.
    """
    rng = np.random.default_rng(seed)
    cols = math.ceil(math.sqrt(n))
    records = []
    for k in range(n):
        i, j = k % cols, k // cols
        dx = i * SPACING + rng.uniform(-0.4, 0.4)
        dy = j * SPACING + rng.uniform(-0.4, 0.4)
        core = _convex_blob(rng, ORIGIN[0] + dx, ORIGIN[1] + dy, rng.uniform(0.7, 1.0))
        dist = math.hypot(dx, dy)
        skin = max(0.0, 1.0 - dist / 20 + rng.normal(0, 0.03))
        breast = max(0.0, 0.8 - dist / 25 + rng.normal(0, 0.03))
        records.append(
            RegionRecord(101 + k, f"area-{101 + k}", FuzzyRegion(core), {"skin": skin, "breast": breast})
        )
    return Dataset(tuple(records), "synthetic planar units")


def _shifted(coords):
    return [(ORIGIN[0] + x, ORIGIN[1] + y) for x, y in coords]


def synthetic_targets() -> tuple[FuzzyRegion, FuzzyRegion]:
    """Two small sites in gaps of the synthetic grid (refinery, steel plant)."""
    x0, y0 = ORIGIN
    return (
        FuzzyRegion(rectangle(x0 + 1.3, y0 + 7.3, x0 + 1.7, y0 + 7.7)),
        FuzzyRegion(rectangle(x0 + 10.3, y0 + 4.3, x0 + 10.7, y0 + 4.7)),
    )


def synthetic_plume() -> FuzzyRegion:
    """A two-lobed pollutant layer near the grid origin."""
    lobes = (
        Polygon.from_coords(_shifted([(-1.0, -1.0), (4.0, -0.5), (5.0, 2.0), (1.0, 4.0), (-1.5, 2.0)])),
        Polygon.from_coords(_shifted([(6.0, 5.5), (8.0, 6.0), (7.5, 8.0), (5.5, 7.5)])),
    )
    return FuzzyRegion(MultiPolygon(lobes), 0.5)
