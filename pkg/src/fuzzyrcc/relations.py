"""Graded RCC-8 relations built on the fuzzy connection grade.

Every relation is sampled on the same dd x dd corner lattice per region
that ``connect_grid`` uses.  Connection itself comes from
``connect_grid``; part-of, non-tangential part-of and overlap compare
one region's samples against the exact dilation or erosion of the other.

    C    connect_grid(a, b)
    DC   1 - C
    P    min over a's samples of I(a(p), dilation_b(p))
    NTP  min over a's samples of I(a(p), erosion_b(p))
    O    max over both lattices of T(erosion_a(p), erosion_b(p))
    EQ   T(P, P_inv)            PP    T(P, 1 - P_inv)
    PO   T(O, 1 - P, 1 - P_inv) EC    T(C, 1 - O)
    NTPP T(PP, NTP)             TPP   T(PP, 1 - NTPP)

With alpha = beta = 0 erosion equals membership, so O reduces to
max_p T(a(p), b(p)).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .connection import ConnectionConfig, _pair_max, dilation_from_signed, erosion_from_signed
from .fuzzy import FuzzyRegion, Grade, as_grade, membership_from_signed, residuum_apply, t_apply, tnorm_sym
from .geometry import grid_points, signed_distances

RELATION_NAMES = (
    "C", "DC", "O", "P", "P_inv", "EQ", "PP", "PP_inv",
    "PO", "EC", "TPP", "TPP_inv", "NTPP", "NTPP_inv",
)

# the eight jointly exhaustive base relations
RCC8 = ("DC", "EC", "PO", "EQ", "TPP", "TPP_inv", "NTPP", "NTPP_inv")

SYMMETRIC = ("C", "DC", "O", "EQ", "PO", "EC")


@dataclass(frozen=True)
class RelationVector:
    C: Grade
    DC: Grade
    O: Grade
    P: Grade
    P_inv: Grade
    EQ: Grade
    PP: Grade
    PP_inv: Grade
    PO: Grade
    EC: Grade
    TPP: Grade
    TPP_inv: Grade
    NTPP: Grade
    NTPP_inv: Grade

    def __post_init__(self):
        for name in RELATION_NAMES:
            object.__setattr__(self, name, as_grade(getattr(self, name)))

    def as_dict(self) -> dict[str, Grade]:
        return asdict(self)

    def __getitem__(self, name: str) -> Grade:
        return getattr(self, canonical_name(name))


def canonical_name(name: str) -> str:
    lookup = {n.lower(): n for n in RELATION_NAMES}
    lookup.update({"tppi": "TPP_inv", "ntppi": "NTPP_inv", "ppi": "PP_inv", "pi": "P_inv"})
    try:
        return lookup[name.lower()]
    except KeyError:
        raise KeyError(f"unknown relation {name!r}; expected one of {', '.join(RELATION_NAMES)}") from None


class _Samples:
    """One region's lattice with signed distances and memberships, computed once."""

    def __init__(self, region: FuzzyRegion, dd: int):
        self.region = region
        if region.is_empty:
            self.pts = np.empty((0, 2))
        else:
            self.pts = grid_points(region.core, dd)
        self.signed = signed_distances(region.core, self.pts) if len(self.pts) else np.empty(0)
        self.member = membership_from_signed(region.support_radius, self.signed)
        keep = self.member > 0
        self.support_pts = self.pts[keep]
        self.support_member = self.member[keep]


def _connect(a: _Samples, b: _Samples, cfg: ConnectionConfig) -> float:
    """Same points, order and reduction as ``connect_grid``, so the result is bit-identical."""
    if a.region.is_empty or b.region.is_empty or len(a.support_pts) == 0 or len(b.support_pts) == 0:
        return 0.0
    return _pair_max(cfg.tnorm, cfg.params, a.support_pts, a.support_member, b.support_pts, b.support_member)


def _part(kind, a: _Samples, inner: np.ndarray) -> float:
    """min over a's samples of I(a(p), inner(p)); samples with a(p) = 0 give 1."""
    if len(a.pts) == 0:
        return 0.0
    return float(residuum_apply(kind, a.member, inner).min())


def _part_of(a: _Samples, b: _Samples, cfg: ConnectionConfig) -> float:
    if a.region.is_empty or b.region.is_empty:
        return 0.0
    s = signed_distances(b.region.core, a.pts)
    return _part(cfg.tnorm, a, dilation_from_signed(b.region, cfg.params, cfg.tnorm, s))


def _deep_part_of(a: _Samples, b: _Samples, cfg: ConnectionConfig) -> float:
    if a.region.is_empty or b.region.is_empty:
        return 0.0
    s = signed_distances(b.region.core, a.pts)
    return _part(cfg.tnorm, a, erosion_from_signed(b.region, cfg.params, cfg.tnorm, s))


def _overlap(a: _Samples, b: _Samples, cfg: ConnectionConfig) -> float:
    if a.region.is_empty or b.region.is_empty:
        return 0.0
    best = 0.0
    for pts in (a.pts, b.pts):
        ea = erosion_from_signed(a.region, cfg.params, cfg.tnorm, signed_distances(a.region.core, pts))
        eb = erosion_from_signed(b.region, cfg.params, cfg.tnorm, signed_distances(b.region.core, pts))
        best = max(best, float(t_apply(cfg.tnorm, ea, eb).max()))
    return best


def overlap(a: FuzzyRegion, b: FuzzyRegion, cfg: ConnectionConfig) -> Grade:
    """Degree to which some sampled point lies well inside both regions."""
    return as_grade(_overlap(_Samples(a, cfg.dd), _Samples(b, cfg.dd), cfg))


def part_of(a: FuzzyRegion, b: FuzzyRegion, cfg: ConnectionConfig) -> Grade:
    """Degree to which every sampled point of ``a`` is near ``b``."""
    return as_grade(_part_of(_Samples(a, cfg.dd), _Samples(b, cfg.dd), cfg))


def deep_part_of(a: FuzzyRegion, b: FuzzyRegion, cfg: ConnectionConfig) -> Grade:
    """Degree to which every sampled point of ``a`` is near nothing outside ``b``."""
    return as_grade(_deep_part_of(_Samples(a, cfg.dd), _Samples(b, cfg.dd), cfg))


def relation_vector(a: FuzzyRegion, b: FuzzyRegion, cfg: ConnectionConfig) -> RelationVector:
    return _vector(_Samples(a, cfg.dd), _Samples(b, cfg.dd), cfg)


def _vector(sa: _Samples, sb: _Samples, cfg: ConnectionConfig) -> RelationVector:
    kind = cfg.tnorm
    c = as_grade(_connect(sa, sb, cfg))
    o = _overlap(sa, sb, cfg)
    p = _part_of(sa, sb, cfg)
    p_inv = _part_of(sb, sa, cfg)
    ntp = _deep_part_of(sa, sb, cfg)
    ntp_inv = _deep_part_of(sb, sa, cfg)

    def t(*grades):
        return tnorm_sym(kind, grades)

    pp = t(p, 1 - p_inv)
    pp_inv = t(p_inv, 1 - p)
    ntpp = t(pp, ntp)
    ntpp_inv = t(pp_inv, ntp_inv)
    return RelationVector(
        C=c,
        DC=1.0 - c,
        O=o,
        P=p,
        P_inv=p_inv,
        EQ=t(p, p_inv),
        PP=pp,
        PP_inv=pp_inv,
        PO=t(o, 1 - p, 1 - p_inv),
        EC=t(c, 1 - o),
        TPP=t(pp, 1 - ntpp),
        TPP_inv=t(pp_inv, 1 - ntpp_inv),
        NTPP=ntpp,
        NTPP_inv=ntpp_inv,
    )


def relation_matrix(regions, relation: str, cfg: ConnectionConfig) -> np.ndarray:
    """N x N grades of one relation over a sequence of fuzzy regions."""
    name = canonical_name(relation)
    samples = [_Samples(r, cfg.dd) for r in regions]
    n = len(samples)
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if name in ("C", "DC"):
                c = as_grade(_connect(samples[i], samples[j], cfg))
                out[i, j] = c if name == "C" else 1.0 - c
            else:
                out[i, j] = _vector(samples[i], samples[j], cfg)[name]
    return out
