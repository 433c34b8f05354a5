"""Fixture builders shared by the test modules."""

from __future__ import annotations

import math

import numpy as np

from fuzzyrcc.connection import NearnessParams
from fuzzyrcc.fuzzy import FuzzyRegion
from fuzzyrcc.geometry import Polygon


def convex_polygon(rng: np.random.Generator, cx: float, cy: float, radius: float) -> Polygon:
    """Random convex polygon: 5 to 8 vertices on a circle at jittered angles."""
    n = int(rng.integers(5, 9))
    base = np.linspace(0, 2 * math.pi, n, endpoint=False)
    angles = base + rng.uniform(-0.3, 0.3, n) * (2 * math.pi / n) + rng.uniform(0, 2 * math.pi)
    return Polygon.from_coords([(cx + radius * math.cos(t), cy + radius * math.sin(t)) for t in angles])


def convex_pair(rng: np.random.Generator, gap_hi: float, sr_hi: float = 0.0, size: float = 1.0):
    """Two convex regions of radius ``size/2`` to ``size`` whose centres are both radii plus a random gap apart."""
    ra, rb = rng.uniform(0.5 * size, size, 2)
    theta = rng.uniform(0, 2 * math.pi)
    d = ra + rb + rng.uniform(-0.3 * size, gap_hi)
    a = convex_polygon(rng, 0.0, 0.0, ra)
    b = convex_polygon(rng, d * math.cos(theta), d * math.sin(theta), rb)
    sa, sb = rng.uniform(0, sr_hi, 2) if sr_hi > 0 else (0.0, 0.0)
    return FuzzyRegion(a, float(sa)), FuzzyRegion(b, float(sb))


def random_params(rng: np.random.Generator, beta_lo: float, beta_hi: float, alpha_hi: float = 0.3) -> NearnessParams:
    return NearnessParams(float(rng.uniform(0, alpha_hi)), float(rng.uniform(beta_lo, beta_hi)))
