import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import convex_pair, convex_polygon
from fuzzyrcc.connection import (
    ConnectionConfig,
    NearnessParams,
    connect_grid,
    connect_oracle,
    dilation,
    erosion,
    nearness,
    nearness_apply,
)
from fuzzyrcc.fuzzy import FuzzyRegion, TNorm, memberships, t_apply
from fuzzyrcc.geometry import MultiPolygon, Polygon, distance_geometry_geometry, rectangle

UNIT = FuzzyRegion(rectangle(0, 0, 1, 1))
LUK = TNorm.LUKASIEWICZ


class TestParams:
    def test_defaults(self):
        cfg = ConnectionConfig()
        assert (cfg.params.alpha, cfg.params.beta, cfg.dd, cfg.tnorm) == (0.0, 0.01, 8, LUK)

    @pytest.mark.parametrize("alpha, beta", [(-0.1, 1), (0, -1), (math.nan, 1), (0, math.inf)])
    def test_rejects_bad_params(self, alpha, beta):
        with pytest.raises(ValueError):
            NearnessParams(alpha, beta)

    @pytest.mark.parametrize("dd", [0, -3, 2.5])
    def test_rejects_bad_dd(self, dd):
        with pytest.raises(ValueError):
            ConnectionConfig(dd=dd)

    def test_negative_distance(self):
        with pytest.raises(ValueError):
            nearness(NearnessParams(), -1.0)


class TestNearness:
    def test_examples(self):
        assert nearness(NearnessParams(0, 0.01), 0) == 1
        assert nearness(NearnessParams(0.2, 0.5), 0.45) == 0.5
        assert nearness(NearnessParams(0, 0), 0.001) == 0

    def test_linear_ramp(self):
        p = NearnessParams(1.0, 2.0)
        assert nearness(p, 1.5) == pytest.approx(0.75)
        assert nearness(p, 2.5) == pytest.approx(0.25)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0, 3), st.floats(0, 3), st.floats(0, 3), st.floats(0, 1), st.floats(0, 1))
    def test_monotone_in_parameters(self, d, alpha, beta, da, db):
        base = nearness(NearnessParams(alpha, beta), d)
        assert nearness(NearnessParams(alpha + da, beta), d) >= base
        assert nearness(NearnessParams(alpha, beta + db), d) >= base


class TestConnectGrid:
    def test_self_connection(self):
        assert connect_grid(UNIT, UNIT, ConnectionConfig(NearnessParams(0, 0.01), LUK, 8)) == 1.0

    def test_far_squares(self):
        far = FuzzyRegion(rectangle(5, 0, 6, 1))
        assert connect_grid(UNIT, far, ConnectionConfig(NearnessParams(0, 1), LUK, 8)) == 0.0

    def test_halo_pair_matches_oracle(self):
        a = FuzzyRegion(rectangle(0, 0, 1, 1), 0.25)
        b = FuzzyRegion(rectangle(1.5, 0, 2.5, 1), 0.25)
        params = NearnessParams(0, 0.5)
        o = connect_oracle(a, b, params, LUK, 128)
        g = connect_grid(a, b, ConnectionConfig(params, LUK, 8))
        # pinned by the oracle: the gap equals alpha + beta and halos cannot help when SR <= beta
        assert o == 0.0
        assert abs(g - o) <= 0.1

    def test_touching_squares_lukasiewicz(self):
        # the max-side edge of a is never sampled, so the grid sees a one-cell gap
        b = FuzzyRegion(rectangle(1, 0, 2, 1))
        cfg = ConnectionConfig(NearnessParams(0, 1.0), LUK, 8)
        assert connect_grid(UNIT, b, cfg) == pytest.approx(1 - 0.125, abs=1e-12)

    def test_empty_region(self):
        empty = FuzzyRegion(MultiPolygon(()), 1.0)
        assert connect_grid(empty, UNIT, ConnectionConfig()) == 0.0
        assert connect_grid(empty, empty, ConnectionConfig()) == 0.0
        assert connect_oracle(empty, UNIT, NearnessParams(), LUK, 16) == 0.0

    def test_crisp_reduction_shared_corner(self):
        cfg = ConnectionConfig(NearnessParams(0, 0), LUK, 8)
        shifted = FuzzyRegion(rectangle(0.5, 0, 1.5, 1))
        assert connect_grid(UNIT, shifted, cfg) == 1.0
        apart = FuzzyRegion(rectangle(1.01, 0, 2, 1))
        assert connect_grid(UNIT, apart, cfg) == 0.0

    def test_flat_form_matches_nested_form(self):
        rng = np.random.default_rng(31)
        from fuzzyrcc.geometry import grid_points

        for _ in range(30):
            a, b = convex_pair(rng, 1.0, sr_hi=0.8)
            kind = list(TNorm)[int(rng.integers(3))]
            params = NearnessParams(*rng.uniform(0, 1, 2))
            cfg = ConnectionConfig(params, kind, 6)
            p, q = grid_points(a.core, 6), grid_points(b.core, 6)
            ma, mb = memberships(a, p), memberships(b, q)
            d = np.hypot(p[:, None, 0] - q[None, :, 0], p[:, None, 1] - q[None, :, 1])
            inner = t_apply(kind, nearness_apply(params, d), mb[None, :]).max(axis=1)
            nested = t_apply(kind, ma, inner).max()
            assert connect_grid(a, b, cfg) == pytest.approx(nested, abs=1e-12)


class TestOracle:
    def test_identical(self):
        r = FuzzyRegion(convex_polygon(np.random.default_rng(1), 0, 0, 1), 0.3)
        assert connect_oracle(r, r, NearnessParams(0, 0.01), LUK, 64) == 1.0

    def test_beyond_all_halos(self):
        a = FuzzyRegion(rectangle(0, 0, 1, 1), 0.5)
        b = FuzzyRegion(rectangle(3.01, 0, 4, 1), 0.5)
        params = NearnessParams(0.5, 0.5)
        for kind in TNorm:
            assert connect_oracle(a, b, params, kind, 64) == 0.0

    def test_symmetric(self):
        rng = np.random.default_rng(32)
        for _ in range(5):
            a, b = convex_pair(rng, 1.0, sr_hi=1.0)
            params = NearnessParams(0.1, 0.8)
            for kind in TNorm:
                assert connect_oracle(a, b, params, kind, 48) == pytest.approx(
                    connect_oracle(b, a, params, kind, 48), abs=0.03
                )

    def test_matches_exhaustive_search(self):
        """Branch and bound must return the same maximum as scanning every pair."""
        from fuzzyrcc.connection import _support, halo_box
        from fuzzyrcc.geometry import box_lattice

        rng = np.random.default_rng(33)
        for _ in range(8):
            a, b = convex_pair(rng, 1.5, sr_hi=1.0)
            params = NearnessParams(*rng.uniform(0, 0.8, 2))
            for kind in TNorm:
                p, ma = _support(a, box_lattice(halo_box(a), 40, centers=True))
                q, mb = _support(b, box_lattice(halo_box(b), 40, centers=True))
                d = np.hypot(p[:, None, 0] - q[None, :, 0], p[:, None, 1] - q[None, :, 1])
                full = t_apply(kind, t_apply(kind, ma[:, None], mb[None, :]), nearness_apply(params, d)).max()
                assert connect_oracle(a, b, params, kind, 40) == full

    def test_samples_the_halo(self):
        # the supremum (0.6, both halos entered by 0.4) lies outside both core grids
        a = FuzzyRegion(rectangle(0, 0, 1, 1), 1.0)
        b = FuzzyRegion(rectangle(2, 0, 3, 1), 1.0)
        params = NearnessParams(0, 0.5)
        assert connect_grid(a, b, ConnectionConfig(params, TNorm.MINIMUM, 8)) == 0.0
        assert connect_oracle(a, b, params, TNorm.MINIMUM, 128) > 0.3

    def test_resolution_convergence(self):
        rng = np.random.default_rng(34)
        for _ in range(2):
            a, b = convex_pair(rng, 1.0, sr_hi=0.3, size=0.5)
            params = NearnessParams(0.1, 1.0)
            o128 = connect_oracle(a, b, params, LUK, 128)
            o256 = connect_oracle(a, b, params, LUK, 256)
            assert abs(o128 - o256) < 0.02

    def test_crisp_agreement_on_separated_pairs(self):
        rng = np.random.default_rng(35)
        params = NearnessParams(0, 0)
        checked = 0
        for _ in range(40):
            a, b = convex_pair(rng, 1.0)
            d = distance_geometry_geometry(a.core, b.core)
            from fuzzyrcc.connection import halo_box

            diag = max(math.hypot(halo_box(r).width, halo_box(r).height) / 256 for r in (a, b))
            if d > diag:
                checked += 1
                assert connect_oracle(a, b, params, LUK, 256) == 0.0
        assert checked >= 10


def _disk_samples(p, radius, n_r=120, n_t=240):
    r = np.linspace(0, radius, n_r)
    t = np.linspace(0, 2 * math.pi, n_t, endpoint=False)
    rr, tt = np.meshgrid(r, t)
    return np.column_stack([p[0] + (rr * np.cos(tt)).ravel(), p[1] + (rr * np.sin(tt)).ravel()])


class TestDilationErosion:
    """Exact profiles checked against brute-force sampling of the disk of radius alpha + beta."""

    @pytest.mark.parametrize("kind", list(TNorm))
    def test_against_disk_sampling(self, kind):
        rng = np.random.default_rng(36)
        shapes = [
            FuzzyRegion(rectangle(0, 0, 1, 1), 0.4),
            FuzzyRegion(convex_polygon(rng, 0.5, 0.5, 0.8), 0.0),
            FuzzyRegion(Polygon.from_coords([(0, 0), (2, 0), (2, 2), (1, 0.6), (0, 2)]), 0.3),
        ]
        params = NearnessParams(0.15, 0.5)
        for r in shapes:
            pts = rng.uniform(-0.8, 2.0, (25, 2))
            dil = dilation(r, params, kind, pts)
            ero = erosion(r, params, kind, pts)
            for p, dv, ev in zip(pts, dil, ero):
                qs = _disk_samples(p, params.reach)
                near = nearness_apply(params, np.hypot(qs[:, 0] - p[0], qs[:, 1] - p[1]))
                m = memberships(r, qs)
                brute_dil = t_apply(kind, near, m).max()
                brute_ero = 1 - t_apply(kind, near, 1 - m).max()
                # sampling can only under-estimate a supremum
                assert dv >= brute_dil - 1e-9
                assert dv <= brute_dil + 0.03
                if r.core is not shapes[2].core:
                    assert ev <= brute_ero + 1e-9
                    assert ev >= brute_ero - 0.03
                else:
                    # non-convex core: the profile is a lower bound on depth
                    assert ev <= brute_ero + 1e-9

    def test_dilation_is_membership_when_params_vanish(self):
        r = FuzzyRegion(rectangle(0, 0, 1, 1), 0.5)
        pts = np.random.default_rng(37).uniform(-1, 2, (200, 2))
        for kind in TNorm:
            assert dilation(r, NearnessParams(0, 0), kind, pts) == pytest.approx(memberships(r, pts), abs=1e-12)
            assert erosion(r, NearnessParams(0, 0), kind, pts) == pytest.approx(memberships(r, pts), abs=1e-12)

    def test_erosion_below_membership_below_dilation(self):
        r = FuzzyRegion(convex_polygon(np.random.default_rng(38), 0, 0, 1), 0.4)
        pts = np.random.default_rng(39).uniform(-1.5, 1.5, (500, 2))
        m = memberships(r, pts)
        for kind in TNorm:
            params = NearnessParams(0.1, 0.3)
            assert np.all(erosion(r, params, kind, pts) <= m + 1e-12)
            assert np.all(dilation(r, params, kind, pts) >= m - 1e-12)
