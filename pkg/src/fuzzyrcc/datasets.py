"""Loading region sets, assigning support radii and writing reports.

Two input formats are read:

* GeoJSON FeatureCollections of Polygon / MultiPolygon features whose
  properties carry an integer ``id``, an optional ``name`` and any number
  of numeric attributes;
* UTF-8 text with one ``id<TAB>WKT`` record per line (blank lines and
  lines starting with ``#`` are skipped).

Reports are CSV (comma separated, ``.`` decimals, LF line endings) or
GeoJSON.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import shapely.geometry
import shapely.wkt
from scipy.stats import spearmanr

from .connection import ConnectionConfig, connect_grid
from .fuzzy import FuzzyRegion, Grade
from .geometry import GeometryError, MultiPolygon, Polygon, is_empty
from .relations import overlap

log = logging.getLogger(__name__)


class DatasetError(ValueError):
    """Unreadable or malformed dataset input."""


class QueryError(ValueError):
    """A well-formed request that cannot be answered, e.g. an unknown region id."""


@dataclass(frozen=True)
class RegionRecord:
    id: int
    name: str
    fuzzy: FuzzyRegion
    attributes: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class Dataset:
    records: tuple[RegionRecord, ...]
    units_note: str = "planar units, as read"

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        seen = set()
        for r in self.records:
            if r.id in seen:
                raise DatasetError(f"duplicate region id {r.id}")
            seen.add(r.id)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def ids(self) -> list[int]:
        return [r.id for r in self.records]

    def get(self, region_id: int) -> RegionRecord:
        for r in self.records:
            if r.id == region_id:
                return r
        raise QueryError(f"no region {region_id}")


# ---------------------------------------------------------------------------
# geometry conversion


def _ring(coords) -> list[tuple[float, float]]:
    return [(float(c[0]), float(c[1])) for c in coords]


def _polygon_from_coords(rings) -> Polygon:
    if not rings:
        raise GeometryError("polygon without rings")
    return Polygon.from_coords(_ring(rings[0]), [_ring(h) for h in rings[1:]])


def geometry_from_geojson(geom: dict):
    """Polygon or MultiPolygon from a GeoJSON geometry mapping."""
    kind = geom.get("type") if isinstance(geom, dict) else None
    coords = geom.get("coordinates") if isinstance(geom, dict) else None
    if kind == "Polygon":
        if not coords:
            return MultiPolygon(())
        return _polygon_from_coords(coords)
    if kind == "MultiPolygon":
        return MultiPolygon(tuple(_polygon_from_coords(p) for p in coords or ()))
    raise GeometryError(f"non-areal geometry type {kind!r}")


def geometry_to_geojson(g) -> dict:
    def rings(poly: Polygon):
        out = []
        for ring in (poly.exterior, *poly.holes):
            pts = [[v.x, v.y] for v in ring.vertices]
            out.append(pts + [pts[0]])
        return out

    if isinstance(g, Polygon):
        return {"type": "Polygon", "coordinates": rings(g)}
    if isinstance(g, MultiPolygon):
        return {"type": "MultiPolygon", "coordinates": [rings(p) for p in g.polygons]}
    return {"type": "Point", "coordinates": [g.x, g.y]}


def geometry_from_wkt(text: str):
    shp = shapely.wkt.loads(text)
    return geometry_from_geojson(shapely.geometry.mapping(shp))


# ---------------------------------------------------------------------------
# loading


def _numeric(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def _parse_id(raw, where: str) -> int:
    if isinstance(raw, bool) or raw is None:
        raise DatasetError(f"{where}: missing integer id")
    if isinstance(raw, float) and raw.is_integer():
        return int(raw)
    if isinstance(raw, int):
        return raw
    if isinstance(raw, str) and raw.strip().lstrip("-").isdigit():
        return int(raw.strip())
    raise DatasetError(f"{where}: id {raw!r} is not an integer")


def _finish(records: list[RegionRecord], rejected: list, source: str) -> Dataset:
    if rejected:
        raise DatasetError(f"{source}: non-areal geometry in features with ids {rejected}")
    if not records:
        raise DatasetError(f"{source}: empty dataset")
    ds = Dataset(tuple(records))
    _warn_if_geographic(ds, source)
    return ds


def _warn_if_geographic(ds: Dataset, source: str) -> None:
    coords = [r.fuzzy.core.vertices for r in ds.records if not is_empty(r.fuzzy.core)]
    if not coords:
        return
    v = np.vstack(coords)
    if np.all(np.abs(v[:, 0]) <= 180) and np.all(np.abs(v[:, 1]) <= 90):
        log.warning("%s: coordinates look geographic; distances are computed as planar", source)


def parse_geojson(text: str, source: str = "<geojson>") -> Dataset:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetError(f"{source}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise DatasetError(f"{source}: not a GeoJSON FeatureCollection")
    records, rejected = [], []
    for i, feat in enumerate(doc.get("features") or []):
        where = f"{source}: feature {i}"
        if not isinstance(feat, dict):
            raise DatasetError(f"{where}: not a Feature object")
        props = feat.get("properties") or {}
        rid = _parse_id(props.get("id", feat.get("id")), where)
        try:
            core = geometry_from_geojson(feat.get("geometry"))
        except GeometryError as exc:
            if "non-areal" in str(exc):
                rejected.append(rid)
                continue
            raise DatasetError(f"{where} (id {rid}): {exc}") from None
        except (TypeError, IndexError, ValueError) as exc:
            raise DatasetError(f"{where} (id {rid}): malformed coordinates ({exc})") from None
        attrs = {k: float(v) for k, v in props.items() if k != "id" and _numeric(v)}
        name = props.get("name")
        records.append(RegionRecord(rid, str(name) if name is not None else str(rid), FuzzyRegion(core), attrs))
    return _finish(records, rejected, source)


def parse_wkt_lines(text: str, source: str = "<wkt>") -> Dataset:
    records, rejected = [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        where = f"{source}: line {lineno}"
        if "\t" not in line:
            raise DatasetError(f"{where}: expected id<TAB>WKT")
        raw_id, wkt = line.split("\t", 1)
        rid = _parse_id(raw_id, where)
        try:
            core = geometry_from_wkt(wkt)
        except GeometryError as exc:
            if "non-areal" in str(exc):
                rejected.append(rid)
                continue
            raise DatasetError(f"{where}: {exc}") from None
        except Exception as exc:  # shapely raises its own error types
            raise DatasetError(f"{where}: cannot parse WKT ({exc})") from None
        records.append(RegionRecord(rid, str(rid), FuzzyRegion(core)))
    return _finish(records, rejected, source)


def load_regions(path: str | Path) -> Dataset:
    """Read a GeoJSON FeatureCollection or an id<TAB>WKT file; support radii start at 0."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return parse_geojson(text, str(path))
    return parse_wkt_lines(text, str(path))


def to_feature_collection(ds: Dataset, extra: dict[int, dict] | None = None) -> dict:
    feats = []
    for r in ds.records:
        props = {"id": r.id, "name": r.name, **r.attributes}
        if extra and r.id in extra:
            props.update(extra[r.id])
        feats.append({"type": "Feature", "properties": props, "geometry": geometry_to_geojson(r.fuzzy.core)})
    return {"type": "FeatureCollection", "features": feats}


def dumps_geojson(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=False) + "\n"


def save_regions(ds: Dataset, path: str | Path) -> None:
    Path(path).write_text(dumps_geojson(to_feature_collection(ds)), encoding="utf-8")


# ---------------------------------------------------------------------------
# support radii


@dataclass(frozen=True)
class Uniform:
    radius: float


@dataclass(frozen=True)
class SeededRandom:
    """Radii drawn uniformly from [lo, hi) by numpy's PCG64 generator seeded with ``seed``."""

    lo: float
    hi: float
    seed: int = 0


def assign_support_radii(ds: Dataset, mode: Uniform | SeededRandom) -> Dataset:
    if isinstance(mode, Uniform):
        if not mode.radius >= 0:
            raise DatasetError(f"negative support radius {mode.radius}")
        radii = [float(mode.radius)] * len(ds)
    elif isinstance(mode, SeededRandom):
        if not 0 <= mode.lo <= mode.hi:
            raise DatasetError(f"support radius range must satisfy 0 <= lo <= hi, got [{mode.lo}, {mode.hi}]")
        rng = np.random.Generator(np.random.PCG64(mode.seed % 2**64))
        radii = [float(x) for x in rng.uniform(mode.lo, mode.hi, len(ds))]
    else:
        raise TypeError(f"unsupported radius mode {mode!r}")
    recs = tuple(replace(r, fuzzy=r.fuzzy.with_support_radius(sr)) for r, sr in zip(ds.records, radii))
    return Dataset(recs, ds.units_note)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class OverlapRow:
    id: int
    name: str
    overlap: Grade
    attributes: dict[str, float | None]


@dataclass(frozen=True)
class OverlapReport:
    keys: tuple[str, ...]
    rows: tuple[OverlapRow, ...]
    correlations: dict[str, float]

    def to_csv(self, precision: int = 4) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "name", "overlap", *self.keys])
        for row in self.rows:
            cells = ["" if row.attributes[k] is None else _fmt(row.attributes[k], precision) for k in self.keys]
            w.writerow([row.id, row.name, _fmt(row.overlap, precision), *cells])
        return buf.getvalue()

    def summary_csv(self, precision: int = 4) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["attribute", "spearman"])
        for k in self.keys:
            c = self.correlations[k]
            w.writerow([k, "" if math.isnan(c) else _fmt(c, precision)])
        return buf.getvalue()


def _fmt(x: float, precision: int) -> str:
    s = f"{x:.{precision}f}"
    return "0." + "0" * precision if s.startswith("-") and float(s) == 0 else s


def spearman(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Spearman rank correlation; NaN with fewer than two points or a constant column."""
    if len(xs) < 2 or len(set(xs)) < 2 or len(set(ys)) < 2:
        return math.nan
    return float(spearmanr(xs, ys).statistic)


def overlap_report(
    ds: Dataset,
    layer: FuzzyRegion,
    cfg: ConnectionConfig,
    attribute_keys: Sequence[str],
) -> OverlapReport:
    """Overlap of each region with ``layer``, ranked, with attribute rank correlations."""
    if len(ds) == 0:
        raise QueryError("empty dataset")
    keys = tuple(attribute_keys)
    rows = [
        OverlapRow(r.id, r.name, overlap(r.fuzzy, layer, cfg), {k: r.attributes.get(k) for k in keys})
        for r in ds.records
    ]
    rows.sort(key=lambda row: (-row.overlap, row.id))
    corr = {}
    for k in keys:
        pairs = [(row.overlap, row.attributes[k]) for row in rows if row.attributes[k] is not None]
        corr[k] = spearman([p[0] for p in pairs], [p[1] for p in pairs])
    return OverlapReport(keys, tuple(rows), corr)


@dataclass(frozen=True)
class Classified:
    id: int
    grade: Grade
    cls: int


def threshold_classification(
    ds: Dataset,
    seed_region_id: int,
    cfg: ConnectionConfig,
    thresholds: Sequence[Grade],
) -> list[Classified]:
    """Label each region with the first (highest) threshold its connection to the seed meets, or -1."""
    ts = [float(t) for t in thresholds]
    if not ts:
        raise QueryError("at least one threshold is required")
    if any(not 0 < t <= 1 for t in ts) or any(a <= b for a, b in zip(ts, ts[1:])):
        raise QueryError(f"thresholds must be strictly descending in (0, 1], got {ts}")
    seed = ds.get(seed_region_id)
    out = []
    for r in ds.records:
        g = connect_grid(seed.fuzzy, r.fuzzy, cfg)
        cls = next((k for k, t in enumerate(ts) if g >= t), -1)
        out.append(Classified(r.id, g, cls))
    return out


def classified_feature_collection(ds: Dataset, classes: Iterable[Classified]) -> dict:
    extra = {c.id: {"connection": c.grade, "class": c.cls} for c in classes}
    return to_feature_collection(ds, extra)
