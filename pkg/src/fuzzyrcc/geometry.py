"""Planar geometry primitives.

Closed-region semantics throughout: a point on a polygon boundary is
contained.  Everything operates on plain Euclidean coordinates; callers
holding geographic data must project it first.

The scalar API (``contains_point``, ``distance_point_geometry`` ...) is
backed by vectorised helpers (``contains_points``, ``distances_to``,
``signed_distances``) that the fuzzy layers use on whole sample lattices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

# Points within this distance of an edge count as on the boundary.
BOUNDARY_TOL = 1e-12

# Rows of points processed per block in point/edge distance matrices.
_BLOCK_ELEMENTS = 4_000_000


class GeometryError(ValueError):
    """Raised for geometry that violates its invariants."""


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError(f"non-finite coordinate in ({self.x}, {self.y})")

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class BoundingBox:
    min_x: float
    min_y: float
    max_x: float
    max_y: float

    def __post_init__(self):
        if self.min_x > self.max_x or self.min_y > self.max_y:
            raise GeometryError(f"inverted bounding box {self}")

    @property
    def width(self) -> float:
        return self.max_x - self.min_x

    @property
    def height(self) -> float:
        return self.max_y - self.min_y

    @property
    def area(self) -> float:
        return self.width * self.height

    def inflate(self, r: float) -> BoundingBox:
        return BoundingBox(self.min_x - r, self.min_y - r, self.max_x + r, self.max_y + r)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.min_x, self.min_y, self.max_x, self.max_y)


@dataclass(frozen=True)
class Cell:
    """One grid part; ``representative`` is its (min_x, min_y) corner."""

    bbox: BoundingBox
    representative: Point


def _as_point(p) -> Point:
    return p if isinstance(p, Point) else Point(float(p[0]), float(p[1]))


@dataclass(frozen=True)
class Ring:
    """Simple closed ring.  Closure is implicit: the first vertex is not repeated."""

    vertices: tuple[Point, ...]

    def __post_init__(self):
        verts = tuple(_as_point(v) for v in self.vertices)
        if len(verts) > 1 and verts[0] == verts[-1]:
            verts = verts[:-1]
        object.__setattr__(self, "vertices", verts)
        if len(set(verts)) < 3:
            raise GeometryError("ring needs at least 3 distinct vertices")
        if _ring_self_intersects(self.coords):
            raise GeometryError("ring is self-intersecting")

    @cached_property
    def coords(self) -> np.ndarray:
        return np.array([v.as_tuple() for v in self.vertices], dtype=float)

    @cached_property
    def edges(self) -> np.ndarray:
        """(n, 4) array of x0, y0, x1, y1 per edge, closing edge included."""
        c = self.coords
        return np.hstack([c, np.roll(c, -1, axis=0)])

    @property
    def signed_area(self) -> float:
        x, y = self.coords[:, 0], self.coords[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


@dataclass(frozen=True)
class Polygon:
    exterior: Ring
    holes: tuple[Ring, ...] = field(default=())

    def __post_init__(self):
        ext = self.exterior if isinstance(self.exterior, Ring) else Ring(tuple(self.exterior))
        holes = tuple(h if isinstance(h, Ring) else Ring(tuple(h)) for h in self.holes)
        object.__setattr__(self, "exterior", ext)
        object.__setattr__(self, "holes", holes)
        for i, hole in enumerate(holes):
            inside = _contains(ext.edges, hole.coords)
            on_edge = _min_edge_distance(hole.coords, ext.edges) <= BOUNDARY_TOL
            if not np.all(inside & ~on_edge) or _rings_cross(ext.edges, hole.edges):
                raise GeometryError(f"hole {i} is not strictly inside the exterior")
            for j in range(i):
                other = holes[j]
                if (
                    _rings_cross(hole.edges, other.edges)
                    or np.any(_contains(other.edges, hole.coords))
                    or np.any(_contains(hole.edges, other.coords))
                ):
                    raise GeometryError(f"holes {j} and {i} overlap")

    @classmethod
    def from_coords(cls, exterior: Sequence, holes: Iterable[Sequence] = ()) -> Polygon:
        return cls(Ring(tuple(exterior)), tuple(Ring(tuple(h)) for h in holes))

    @cached_property
    def edges(self) -> np.ndarray:
        return np.vstack([self.exterior.edges, *(h.edges for h in self.holes)])

    @cached_property
    def vertices(self) -> np.ndarray:
        return np.vstack([self.exterior.coords, *(h.coords for h in self.holes)])

    @property
    def area(self) -> float:
        return abs(self.exterior.signed_area) - sum(abs(h.signed_area) for h in self.holes)


@dataclass(frozen=True)
class MultiPolygon:
    """A polygon collection.  The empty collection is the empty geometry."""

    polygons: tuple[Polygon, ...]

    def __post_init__(self):
        object.__setattr__(self, "polygons", tuple(self.polygons))

    @cached_property
    def edges(self) -> np.ndarray:
        if not self.polygons:
            return np.empty((0, 4))
        return np.vstack([p.edges for p in self.polygons])

    @cached_property
    def vertices(self) -> np.ndarray:
        if not self.polygons:
            return np.empty((0, 2))
        return np.vstack([p.vertices for p in self.polygons])

    @property
    def area(self) -> float:
        return sum(p.area for p in self.polygons)


Geometry = Union[Point, Polygon, MultiPolygon]

EMPTY = MultiPolygon(())


def is_empty(g: Geometry) -> bool:
    return isinstance(g, MultiPolygon) and not g.polygons


def _polygons(g: Geometry) -> tuple[Polygon, ...]:
    if isinstance(g, Polygon):
        return (g,)
    if isinstance(g, MultiPolygon):
        return g.polygons
    return ()


# ---------------------------------------------------------------------------
# vectorised kernels


def _blocks(n: int, m: int):
    step = max(1, _BLOCK_ELEMENTS // max(m, 1))
    for start in range(0, n, step):
        yield slice(start, min(n, start + step))


def _point_segment_distances(pts: np.ndarray, edges: np.ndarray) -> np.ndarray:
    """Distance matrix (n points, m segments)."""
    px = pts[:, 0:1]
    py = pts[:, 1:2]
    x0, y0, x1, y1 = edges[:, 0], edges[:, 1], edges[:, 2], edges[:, 3]
    dx = x1 - x0
    dy = y1 - y0
    len2 = dx * dx + dy * dy
    with np.errstate(invalid="ignore", divide="ignore"):
        t = ((px - x0) * dx + (py - y0) * dy) / len2
    t = np.where(len2 > 0, np.clip(t, 0.0, 1.0), 0.0)
    return np.hypot(px - (x0 + t * dx), py - (y0 + t * dy))


def _min_edge_distance(pts: np.ndarray, edges: np.ndarray) -> np.ndarray:
    out = np.empty(len(pts))
    for sl in _blocks(len(pts), len(edges)):
        out[sl] = _point_segment_distances(pts[sl], edges).min(axis=1)
    return out


def _crossing_parity(pts: np.ndarray, edges: np.ndarray) -> np.ndarray:
    """Even-odd ray casting towards +x; True where the crossing count is odd."""
    px = pts[:, 0:1]
    py = pts[:, 1:2]
    x0, y0, x1, y1 = edges[:, 0], edges[:, 1], edges[:, 2], edges[:, 3]
    straddles = (y0 > py) != (y1 > py)
    with np.errstate(invalid="ignore", divide="ignore"):
        x_cross = x0 + (py - y0) * (x1 - x0) / (y1 - y0)
    hits = straddles & (px < x_cross)
    return (hits.sum(axis=1) % 2) == 1


def _contains(edges: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Closed containment of points in the region bounded by ``edges``."""
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    out = np.zeros(len(pts), dtype=bool)
    if len(edges) == 0:
        return out
    for sl in _blocks(len(pts), len(edges)):
        block = pts[sl]
        inside = _crossing_parity(block, edges)
        on_edge = _point_segment_distances(block, edges).min(axis=1) <= BOUNDARY_TOL
        out[sl] = inside | on_edge
    return out


def _orient(ax, ay, bx, by, cx, cy):
    return np.sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


def _segments_intersect(e1: np.ndarray, e2: np.ndarray) -> np.ndarray:
    """Pairwise closed-segment intersection, shape (len(e1), len(e2))."""
    a = e1[:, None, :]
    b = e2[None, :, :]
    ax0, ay0, ax1, ay1 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bx0, by0, bx1, by1 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    o1 = _orient(ax0, ay0, ax1, ay1, bx0, by0)
    o2 = _orient(ax0, ay0, ax1, ay1, bx1, by1)
    o3 = _orient(bx0, by0, bx1, by1, ax0, ay0)
    o4 = _orient(bx0, by0, bx1, by1, ax1, ay1)
    proper = (o1 * o2 < 0) & (o3 * o4 < 0)

    def on_seg(px, py, qx0, qy0, qx1, qy1, o):
        return (
            (o == 0)
            & (np.minimum(qx0, qx1) <= px) & (px <= np.maximum(qx0, qx1))
            & (np.minimum(qy0, qy1) <= py) & (py <= np.maximum(qy0, qy1))
        )

    touching = (
        on_seg(bx0, by0, ax0, ay0, ax1, ay1, o1)
        | on_seg(bx1, by1, ax0, ay0, ax1, ay1, o2)
        | on_seg(ax0, ay0, bx0, by0, bx1, by1, o3)
        | on_seg(ax1, ay1, bx0, by0, bx1, by1, o4)
    )
    return proper | touching


def _rings_cross(e1: np.ndarray, e2: np.ndarray) -> bool:
    for sl in _blocks(len(e1), len(e2)):
        if _segments_intersect(e1[sl], e2).any():
            return True
    return False


def _ring_self_intersects(coords: np.ndarray) -> bool:
    n = len(coords)
    edges = np.hstack([coords, np.roll(coords, -1, axis=0)])
    idx = np.arange(n)
    for sl in _blocks(n, n):
        hit = _segments_intersect(edges[sl], edges)
        i = idx[sl][:, None]
        j = idx[None, :]
        # adjacent edges share a vertex by construction
        adjacent = (i == j) | ((i + 1) % n == j) | ((j + 1) % n == i)
        if (hit & ~adjacent).any():
            return True
    return False


def contains_points(g: Geometry, pts) -> np.ndarray:
    """Vectorised ``contains_point`` over an (n, 2) array."""
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    if isinstance(g, Point):
        return np.hypot(pts[:, 0] - g.x, pts[:, 1] - g.y) <= BOUNDARY_TOL
    out = np.zeros(len(pts), dtype=bool)
    for poly in _polygons(g):
        out |= _contains(poly.edges, pts)
    return out


def distances_to(g: Geometry, pts) -> np.ndarray:
    """Distance from each point of an (n, 2) array to ``g``; 0 inside."""
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    if isinstance(g, Point):
        return np.hypot(pts[:, 0] - g.x, pts[:, 1] - g.y)
    if is_empty(g):
        return np.full(len(pts), np.inf)
    d = _min_edge_distance(pts, g.edges)
    return np.where(contains_points(g, pts), 0.0, d)


def signed_distances(g: Geometry, pts) -> np.ndarray:
    """Depth below the boundary for interior points, minus the distance outside.

    Boundary points get 0.  A point geometry has no interior, so every sample
    gets minus its distance to the point.
    """
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    if isinstance(g, Point):
        d = np.hypot(pts[:, 0] - g.x, pts[:, 1] - g.y)
        return np.where(d <= BOUNDARY_TOL, 0.0, -d)
    if is_empty(g):
        return np.full(len(pts), -np.inf)
    d = _min_edge_distance(pts, g.edges)
    return np.where(contains_points(g, pts), d, -d)


# ---------------------------------------------------------------------------
# scalar API


def contains_point(g: Geometry, p: Point) -> bool:
    return bool(contains_points(g, [p.as_tuple()])[0])


def distance_point_point(p: Point, q: Point) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)


def distance_point_geometry(p: Point, g: Geometry) -> float:
    return float(distances_to(g, [p.as_tuple()])[0])


def distance_geometry_geometry(g1: Geometry, g2: Geometry) -> float:
    """Minimum distance between two geometries; 0 when they touch or overlap."""
    if is_empty(g1) or is_empty(g2):
        return math.inf
    if isinstance(g1, Point):
        return distance_point_geometry(g1, g2)
    if isinstance(g2, Point):
        return distance_point_geometry(g2, g1)
    best = math.inf
    for p1 in _polygons(g1):
        for p2 in _polygons(g2):
            if (
                contains_points(p2, p1.exterior.coords[:1])[0]
                or contains_points(p1, p2.exterior.coords[:1])[0]
                or _rings_cross(p1.edges, p2.edges)
            ):
                return 0.0
            best = min(
                best,
                float(_min_edge_distance(p1.vertices, p2.edges).min()),
                float(_min_edge_distance(p2.vertices, p1.edges).min()),
            )
    return best


def bounding_box(g: Geometry) -> BoundingBox:
    if isinstance(g, Point):
        return BoundingBox(g.x, g.y, g.x, g.y)
    if is_empty(g):
        raise GeometryError("empty geometry has no bounding box")
    v = g.vertices
    lo = v.min(axis=0)
    hi = v.max(axis=0)
    return BoundingBox(float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1]))


def _check_dd(dd: int) -> None:
    if int(dd) != dd or dd < 1:
        raise ValueError(f"dd must be a positive integer, got {dd!r}")


def box_lattice(box: BoundingBox, dd: int, centers: bool = False) -> np.ndarray:
    """Row-major (dd*dd, 2) array of cell corners (or centres) over ``box``."""
    _check_dd(dd)
    offset = 0.5 if centers else 0.0
    k = np.arange(dd, dtype=float) + offset
    xs = box.min_x + box.width * k / dd
    ys = box.min_y + box.height * k / dd
    gx, gy = np.meshgrid(xs, ys)
    return np.column_stack([gx.ravel(), gy.ravel()])


def grid_points(g: Geometry, dd: int) -> np.ndarray:
    """Representatives of ``grid_subdivide(g, dd)`` as an array."""
    return box_lattice(bounding_box(g), dd)


def grid_subdivide(g: Geometry, dd: int) -> list[Cell]:
    """Split the bounding box of ``g`` into dd x dd cells, row by row from min y."""
    _check_dd(dd)
    box = bounding_box(g)
    xs = [box.min_x + box.width * i / dd for i in range(dd + 1)]
    ys = [box.min_y + box.height * j / dd for j in range(dd + 1)]
    xs[-1], ys[-1] = box.max_x, box.max_y
    cells = []
    for j in range(dd):
        for i in range(dd):
            cb = BoundingBox(xs[i], ys[j], xs[i + 1], ys[j + 1])
            cells.append(Cell(cb, Point(xs[i], ys[j])))
    return cells


def rectangle(x0: float, y0: float, x1: float, y1: float) -> Polygon:
    """Axis-aligned rectangle, counter-clockwise."""
    return Polygon.from_coords([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])
