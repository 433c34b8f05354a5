"""Command-line front end: relate, matrix, skyline, thresholds, overlap-report.

Exit codes: 0 success, 1 unreadable or malformed input, 2 a request that
cannot be answered (unknown id or relation, bad thresholds, usage errors).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from .connection import ConnectionConfig, NearnessParams
from .datasets import (
    Dataset,
    DatasetError,
    QueryError,
    SeededRandom,
    Uniform,
    assign_support_radii,
    classified_feature_collection,
    dumps_geojson,
    load_regions,
    overlap_report,
    threshold_classification,
)
from .fuzzy import FuzzyRegion, TNorm
from .geometry import MultiPolygon, Polygon
from .relations import RELATION_NAMES, canonical_name, relation_matrix, relation_vector
from .skyline import CandidateTuple, Mode, SkylineQuery, build_candidates, crisp_skyline, fuzzy_skyline


@dataclass(frozen=True)
class RunConfig:
    alpha: float = 0.0
    beta: float = 0.01
    dd: int = 8
    tnorm: TNorm = TNorm.LUKASIEWICZ
    min_c: float = 0.01
    seed: int = 0
    precision: int = 4
    out: Path | None = None

    @property
    def connection(self) -> ConnectionConfig:
        return ConnectionConfig(NearnessParams(self.alpha, self.beta), self.tnorm, self.dd)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--alpha", type=float, default=0.0, help="full-nearness distance (default 0)")
    p.add_argument("--beta", type=float, default=0.01, help="nearness fade-out width (default 0.01)")
    p.add_argument("--dd", type=int, default=8, help="grid divisions per axis (default 8)")
    p.add_argument("--tnorm", choices=[t.value for t in TNorm], default=TNorm.LUKASIEWICZ.value)
    p.add_argument("--min-c", type=float, default=0.01, help="skyline grade cut (default 0.01)")
    sr = p.add_mutually_exclusive_group()
    sr.add_argument("--sr-uniform", type=float, metavar="R", help="give every region support radius R")
    sr.add_argument("--sr-random", type=float, nargs=2, metavar=("LO", "HI"),
                    help="draw support radii uniformly from [LO, HI) using --seed")
    p.add_argument("--seed", type=int, default=0, help="seed for --sr-random (default 0)")
    p.add_argument("--precision", type=int, default=4, help="decimal places in output (default 4)")
    p.add_argument("--out", type=Path, help="write output here instead of stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="fuzzyrcc", description="Fuzzy RCC relations and fuzzy skylines.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("relate", parents=[common], help="all 14 relation grades for one pair")
    p.add_argument("dataset", type=Path)
    p.add_argument("id_a", type=int)
    p.add_argument("id_b", type=int)

    p = sub.add_parser("matrix", parents=[common], help="N x N grades of one relation as CSV")
    p.add_argument("dataset", type=Path)
    p.add_argument("relation", help=f"one of {', '.join(RELATION_NAMES)}")

    p = sub.add_parser("skyline", parents=[common], help="crisp or fuzzy skyline against target sites")
    p.add_argument("dataset", type=Path)
    tg = p.add_mutually_exclusive_group(required=True)
    tg.add_argument("--targets", type=int, nargs="+", metavar="ID", help="target region ids in the dataset")
    tg.add_argument("--target-file", type=Path, help="regions file holding the targets")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.DISTANCE.value)
    p.add_argument("--crisp", action="store_true", help="print the crisp skyline instead")

    p = sub.add_parser("thresholds", parents=[common], help="classify regions by connection to a seed region")
    p.add_argument("dataset", type=Path)
    p.add_argument("seed_id", type=int)
    p.add_argument("--thresholds", type=float, nargs="+", required=True, metavar="T",
                   help="strictly descending grades in (0, 1]")

    p = sub.add_parser("overlap-report", parents=[common], help="rank regions by overlap with a layer")
    p.add_argument("dataset", type=Path)
    p.add_argument("layer", type=Path, help="regions file whose polygons form one layer")
    p.add_argument("--keys", nargs="*", default=[], help="attribute columns to report")
    p.add_argument("--layer-sr", type=float, default=0.0, help="support radius of the layer (default 0)")
    return parser


def _run_config(ns) -> RunConfig:
    return RunConfig(ns.alpha, ns.beta, ns.dd, TNorm.parse(ns.tnorm), ns.min_c, ns.seed, ns.precision, ns.out)


def _load(path: Path, ns) -> Dataset:
    ds = load_regions(path)
    if ns.sr_uniform is not None:
        ds = assign_support_radii(ds, Uniform(ns.sr_uniform))
    elif ns.sr_random is not None:
        ds = assign_support_radii(ds, SeededRandom(ns.sr_random[0], ns.sr_random[1], ns.seed))
    return ds


def _fmt(x: float, precision: int) -> str:
    s = f"{x:.{precision}f}"
    # never print -0.0000
    return s[1:] if s.startswith("-") and float(s) == 0 else s


def _emit(text: str, rc: RunConfig) -> None:
    if rc.out is None:
        sys.stdout.write(text)
    else:
        rc.out.write_text(text, encoding="utf-8", newline="\n")


def cmd_relate(ns, rc: RunConfig) -> None:
    ds = _load(ns.dataset, ns)
    a, b = ds.get(ns.id_a), ds.get(ns.id_b)
    vec = relation_vector(a.fuzzy, b.fuzzy, rc.connection)
    _emit("".join(f"{k} {_fmt(v, rc.precision)}\n" for k, v in vec.as_dict().items()), rc)


def cmd_matrix(ns, rc: RunConfig) -> None:
    try:
        name = canonical_name(ns.relation)
    except KeyError as exc:
        raise QueryError(exc.args[0]) from None
    ds = _load(ns.dataset, ns)
    m = relation_matrix([r.fuzzy for r in ds], name, rc.connection)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([name, *ds.ids])
    for rid, row in zip(ds.ids, m):
        w.writerow([rid, *(_fmt(v, rc.precision) for v in row)])
    _emit(buf.getvalue(), rc)


def cmd_skyline(ns, rc: RunConfig) -> None:
    ds = _load(ns.dataset, ns)
    if ns.targets:
        targets = [ds.get(t).fuzzy for t in ns.targets]
        candidates = [r for r in ds if r.id not in set(ns.targets)]
    else:
        tds = _load(ns.target_file, ns)
        targets = [r.fuzzy for r in tds]
        candidates = list(ds)
    if not candidates:
        raise QueryError("no candidate regions left after removing the targets")
    q = SkylineQuery(tuple(targets), Mode(ns.mode), NearnessParams(rc.alpha, rc.beta), rc.min_c,
                     rc.tnorm, rc.connection)
    cands = build_candidates(candidates, q)
    by_id: dict[int, CandidateTuple] = {c.region_id: c for c in cands}
    if ns.crisp:
        rows = [(rid, 1.0, by_id[rid].values) for rid in sorted(crisp_skyline(cands))]
    else:
        rows = [(e.region_id, e.grade, e.values) for e in fuzzy_skyline(cands, q).entries]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "grade", *(f"v{i + 1}" for i in range(len(targets)))])
    for rid, grade, vals in rows:
        w.writerow([rid, _fmt(grade, rc.precision), *(_fmt(v, rc.precision) for v in vals)])
    _emit(buf.getvalue(), rc)


def cmd_thresholds(ns, rc: RunConfig) -> None:
    ds = _load(ns.dataset, ns)
    classes = threshold_classification(ds, ns.seed_id, rc.connection, ns.thresholds)
    # grades stay at full precision so the class labels can be re-checked from the file
    _emit(dumps_geojson(classified_feature_collection(ds, classes)), rc)


def _layer(path: Path, sr: float) -> FuzzyRegion:
    polys: list[Polygon] = []
    for r in load_regions(path):
        core = r.fuzzy.core
        polys.extend(core.polygons if isinstance(core, MultiPolygon) else [core])
    return FuzzyRegion(MultiPolygon(tuple(polys)), sr)


def cmd_overlap_report(ns, rc: RunConfig) -> None:
    ds = _load(ns.dataset, ns)
    layer = _layer(ns.layer, ns.layer_sr)
    report = overlap_report(ds, layer, rc.connection, ns.keys)
    _emit(report.to_csv(rc.precision), rc)
    if rc.out is not None:
        sys.stdout.write(report.summary_csv(rc.precision))
    else:
        sys.stdout.write("\n" + report.summary_csv(rc.precision))


COMMANDS = {
    "relate": cmd_relate,
    "matrix": cmd_matrix,
    "skyline": cmd_skyline,
    "thresholds": cmd_thresholds,
    "overlap-report": cmd_overlap_report,
}


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    ns = build_parser().parse_args(argv)
    try:
        rc = _run_config(ns)
        COMMANDS[ns.command](ns, rc)
    except (DatasetError, OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (QueryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
