"""Nearness and the fuzzy connection grade between two fuzzy regions.

``connect_grid`` is the production evaluator: both regions are cut into
dd x dd cells over their core bounding boxes and the cell corners stand in
for the suprema.  ``connect_oracle`` is the slow reference, sampling cell
centres over the halo-inflated boxes at a much finer resolution.

``dilation`` and ``erosion`` give, for arbitrary sample points, the exact
value of sup_q T(R(p, q), B(q)) and of its complement dual, using the
fact that membership only depends on the signed distance to the core.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .fuzzy import FuzzyRegion, Grade, TNorm, as_grade, memberships, membership_from_signed, t_apply
from .geometry import BoundingBox, bounding_box, box_lattice, grid_points, signed_distances

_BLOCK_ELEMENTS = 4_000_000
_ORACLE_BLOCK = 128


@dataclass(frozen=True)
class NearnessParams:
    alpha: float = 0.0
    beta: float = 0.01

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {v}")
            object.__setattr__(self, name, v)

    @property
    def reach(self) -> float:
        """Distance beyond which nothing is near."""
        return self.alpha + self.beta


@dataclass(frozen=True)
class ConnectionConfig:
    params: NearnessParams = field(default_factory=NearnessParams)
    tnorm: TNorm = TNorm.LUKASIEWICZ
    dd: int = 8

    def __post_init__(self):
        object.__setattr__(self, "tnorm", TNorm.parse(self.tnorm))
        if int(self.dd) != self.dd or self.dd < 1:
            raise ValueError(f"dd must be a positive integer, got {self.dd!r}")
        object.__setattr__(self, "dd", int(self.dd))

    def with_params(self, alpha: float | None = None, beta: float | None = None) -> ConnectionConfig:
        p = NearnessParams(
            self.params.alpha if alpha is None else alpha,
            self.params.beta if beta is None else beta,
        )
        return ConnectionConfig(p, self.tnorm, self.dd)


def nearness_apply(params: NearnessParams, d):
    """Elementwise nearness degree for distances ``d``."""
    d = np.asarray(d, dtype=float)
    a, reach = params.alpha, params.reach
    if params.beta > 0:
        # 1 - (d - a)/b rather than (a + b - d)/b: monotone in a and b under rounding
        with np.errstate(over="ignore"):
            mid = np.clip(1.0 - (d - a) / params.beta, 0.0, 1.0)
    else:
        mid = np.zeros_like(d)
    return np.where(d <= a, 1.0, np.where(d > reach, 0.0, mid))


def nearness(params: NearnessParams, d: float) -> Grade:
    if d < 0:
        raise ValueError(f"distance must be >= 0, got {d}")
    return float(nearness_apply(params, d))


def _pair_max(kind: TNorm, params: NearnessParams, p, a, q, b) -> float:
    """max over all (i, j) of T(T(a_i, b_j), R(p_i, q_j)), blockwise."""
    best = 0.0
    step = max(1, _BLOCK_ELEMENTS // max(len(q), 1))
    for start in range(0, len(p), step):
        pb = p[start:start + step]
        d = np.hypot(pb[:, 0:1] - q[None, :, 0], pb[:, 1:2] - q[None, :, 1])
        ab = t_apply(kind, a[start:start + step, None], b[None, :])
        vals = t_apply(kind, ab, nearness_apply(params, d))
        best = max(best, float(vals.max()))
    return best


def _support(r: FuzzyRegion, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    m = memberships(r, pts)
    keep = m > 0
    return pts[keep], m[keep]


def connect_grid(a: FuzzyRegion, b: FuzzyRegion, cfg: ConnectionConfig) -> Grade:
    """Connection grade from the dd x dd corner grids of both cores.

    Evaluates max over corner pairs (p, q) of T(A(p), R(p, q), B(q)).  For
    the continuous t-norms used here this is the nested
    max_p T(A(p), max_q T(R(p, q), B(q))); the flat form groups the two
    memberships first, which keeps the result bitwise symmetric in a and b.
    Corners with zero membership cannot contribute and are dropped.
    """
    if a.is_empty or b.is_empty:
        return 0.0
    p, ma = _support(a, grid_points(a.core, cfg.dd))
    q, mb = _support(b, grid_points(b.core, cfg.dd))
    if len(p) == 0 or len(q) == 0:
        return 0.0
    return as_grade(_pair_max(cfg.tnorm, cfg.params, p, ma, q, mb))


def halo_box(r: FuzzyRegion) -> BoundingBox:
    return bounding_box(r.core).inflate(r.support_radius)


def connect_oracle(
    a: FuzzyRegion,
    b: FuzzyRegion,
    params: NearnessParams,
    tnorm: TNorm,
    dd_fine: int,
) -> Grade:
    """Reference connection grade on dd_fine x dd_fine cell centres per region.

    The sample boxes are inflated by each support radius so the halo is
    covered.  The search is branch and bound: samples of ``a`` are visited
    in blocks, in decreasing order of an upper bound on what they can contribute,
    and the scan stops once no remaining sample can beat the best value.
    """
    tnorm = TNorm.parse(tnorm)
    if a.is_empty or b.is_empty:
        return 0.0
    p, ma = _support(a, box_lattice(halo_box(a), dd_fine, centers=True))
    q, mb = _support(b, box_lattice(halo_box(b), dd_fine, centers=True))
    if len(p) == 0 or len(q) == 0:
        return 0.0

    order_q = np.argsort(-mb, kind="stable")
    q, mb = q[order_q], mb[order_q]
    lo = q.min(axis=0)
    hi = q.max(axis=0)
    gap = np.hypot(
        np.maximum(0.0, np.maximum(lo[0] - p[:, 0], p[:, 0] - hi[0])),
        np.maximum(0.0, np.maximum(lo[1] - p[:, 1], p[:, 1] - hi[1])),
    )
    # T(A, T(B, R)) <= T(A, R) and R is largest at the smallest possible distance
    bound = t_apply(tnorm, ma, nearness_apply(params, gap))
    order_p = np.argsort(-bound, kind="stable")

    best = 0.0
    neg_mb = -mb
    for start in range(0, len(order_p), _ORACLE_BLOCK):
        idx = order_p[start:start + _ORACLE_BLOCK]
        if bound[idx[0]] <= best:
            break
        # samples of b with membership <= best cannot raise the maximum
        k = int(np.searchsorted(neg_mb, -best, side="left"))
        if k == 0:
            break
        pb = p[idx]
        # T <= min, so a pair can only beat ``best`` where R > best
        reach = params.alpha + params.beta * (1.0 - best)
        lo_b = pb.min(axis=0) - reach
        hi_b = pb.max(axis=0) + reach
        qk = q[:k]
        near = np.all((qk >= lo_b) & (qk <= hi_b), axis=1)
        if not near.any():
            continue
        qn = qk[near]
        d = np.hypot(pb[:, 0:1] - qn[None, :, 0], pb[:, 1:2] - qn[None, :, 1])
        ab = t_apply(tnorm, ma[idx][:, None], mb[:k][near][None, :])
        vals = t_apply(tnorm, ab, nearness_apply(params, d))
        best = max(best, float(vals.max()))
    return as_grade(best)


# ---------------------------------------------------------------------------
# exact sup over the distance profile


def _sup_along_radius(kind: TNorm, params: NearnessParams, g, knots: np.ndarray) -> np.ndarray:
    """Row-wise sup over r >= 0 of T(R(r), g(r)).

    ``g(r)`` is evaluated on arrays shaped like ``knots`` (one row per sample
    point) and must be piecewise linear with every kink listed in that row.
    R is piecewise linear with kinks at alpha and alpha + beta and vanishes
    beyond the latter, so the sup is attained at a knot, approached at an
    end of a linear piece, or reached inside a piece (the crossing point
    for min, the vertex of the parabola for product).
    """
    reach = params.reach
    knots = np.sort(np.clip(knots, 0.0, reach), axis=1)
    best = t_apply(kind, nearness_apply(params, knots), g(knots)).max(axis=1)

    x0 = knots[:, :-1]
    x1 = knots[:, 1:]
    width = x1 - x0
    m1 = x0 + width / 3.0
    m2 = x0 + 2.0 * width / 3.0
    f1, f2 = nearness_apply(params, m1), nearness_apply(params, m2)
    g1, g2 = g(m1), g(m2)
    # one-sided limits at the piece ends by linear extrapolation
    fa = np.clip(2 * f1 - f2, 0, 1)
    fb = np.clip(2 * f2 - f1, 0, 1)
    ga = np.clip(2 * g1 - g2, 0, 1)
    gb = np.clip(2 * g2 - g1, 0, 1)
    valid = width > 0
    cand = [t_apply(kind, fa, ga), t_apply(kind, fb, gb)]
    if kind is TNorm.MINIMUM:
        da = fa - ga
        db = fb - gb
        cross = valid & (da * db < 0)
        with np.errstate(divide="ignore", invalid="ignore"):
            lam = np.where(cross, da / (da - db), 0.0)
        cand.append(np.where(cross, fa + lam * (fb - fa), 0.0))
    elif kind is TNorm.PRODUCT:
        df = fb - fa
        dg = gb - ga
        denom = 2 * df * dg
        with np.errstate(divide="ignore", invalid="ignore"):
            lam = np.where(denom != 0, -(fa * dg + ga * df) / denom, -1.0)
        inner = valid & (lam > 0) & (lam < 1)
        lam = np.where(inner, lam, 0.0)
        cand.append(np.where(inner, (fa + lam * df) * (ga + lam * dg), 0.0))
    for c in cand:
        best = np.maximum(best, np.where(valid, c, 0.0).max(axis=1, initial=0.0))
    return np.clip(best, 0.0, 1.0)


def dilation_from_signed(r: FuzzyRegion, params: NearnessParams, tnorm: TNorm, s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    sr = r.support_radius
    col = s[:, None]

    def g(rad):
        return membership_from_signed(sr, col + rad)

    zeros = np.zeros_like(col)
    knots = np.hstack([zeros, zeros + params.alpha, zeros + params.reach, -col - sr, -col])
    return _sup_along_radius(tnorm, params, g, knots)


def erosion_from_signed(r: FuzzyRegion, params: NearnessParams, tnorm: TNorm, s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    sr = r.support_radius
    col = s[:, None]

    def g(rad):
        return 1.0 - membership_from_signed(sr, col - rad)

    zeros = np.zeros_like(col)
    knots = np.hstack([zeros, zeros + params.alpha, zeros + params.reach, col, col + sr])
    return 1.0 - _sup_along_radius(tnorm, params, g, knots)


def dilation(r: FuzzyRegion, params: NearnessParams, tnorm: TNorm, pts) -> np.ndarray:
    """Degree to which each point is near some point of ``r``: sup_q T(R(p, q), r(q)).

    Exact: the best q lies on the segment from p to its nearest core point,
    so the sup reduces to one dimension.
    """
    tnorm = TNorm.parse(tnorm)
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    if r.is_empty:
        return np.zeros(len(pts))
    return dilation_from_signed(r, params, tnorm, signed_distances(r.core, pts))


def erosion(r: FuzzyRegion, params: NearnessParams, tnorm: TNorm, pts) -> np.ndarray:
    """Degree to which each point is near nothing outside ``r``.

    Defined as 1 - sup_q T(R(p, q), 1 - r(q)), the complement of the
    dilation of the complement.  The sup walks outward along the normal
    through the nearest boundary point, which is exact for crisp regions
    and for convex cores and a lower bound on depth otherwise.
    """
    tnorm = TNorm.parse(tnorm)
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    if r.is_empty:
        return np.zeros(len(pts))
    return erosion_from_signed(r, params, tnorm, signed_distances(r.core, pts))
