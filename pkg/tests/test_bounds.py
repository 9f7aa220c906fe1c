import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from platforge.bounds import (
    BoundReport,
    CatchingSurfaceData,
    bgl_lower_bound,
    bounds_table_csv,
    bridge_distance,
    euler_char_planar,
    jm_condition,
    load_fkp_constants,
    min_twists_for,
    twist_number_volume_floor,
    volume_chain_report,
)


class TestEulerChar:
    def test_disk(self):
        assert euler_char_planar(0) == 1

    def test_two_punctures(self):
        assert euler_char_planar(2) == -1

    def test_one_puncture_fails_catching(self):
        data = CatchingSurfaceData(punctures=1)
        assert data.euler_char == 0
        assert not data.catches

    def test_catching_flag(self):
        assert CatchingSurfaceData(punctures=2).catches


class TestBglBound:
    def test_substitutions(self):
        assert bgl_lower_bound(36, 1, -1) == 0
        assert bgl_lower_bound(180, 2, -1) == 1
        assert bgl_lower_bound(0, 0, -1) == Fraction(1, 2)

    def test_chi_must_be_negative(self):
        with pytest.raises(ValueError):
            bgl_lower_bound(10, 1, 0)

    @given(st.integers(0, 10**6), st.integers(0, 10), st.integers(-5, -1))
    @settings(max_examples=200, deadline=None)
    def test_closed_form(self, n, g, chi):
        # independent evaluation of the defining formula
        expected = Fraction(1, 2) * (Fraction(n, -36 * chi) - 2 * g + 1)
        assert bgl_lower_bound(n, g, chi) == expected

    @given(st.integers(0, 10**6), st.integers(0, 10))
    @settings(max_examples=100, deadline=None)
    def test_step_property(self, n, g):
        assert bgl_lower_bound(n + 72, g, -1) == bgl_lower_bound(n, g, -1) + 1

    @given(st.integers(0, 10**5), st.integers(0, 6), st.integers(-4, -1))
    @settings(max_examples=100, deadline=None)
    def test_step_property_general_chi(self, n, g, chi):
        step = 2 * 36 * (-chi)
        assert bgl_lower_bound(n + step, g, chi) == bgl_lower_bound(n, g, chi) + 1

    def test_monotone(self):
        vals = [bgl_lower_bound(n, 3, -2) for n in range(0, 500, 7)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


class TestMinTwists:
    def test_target_one(self):
        assert min_twists_for(1, 1, -1) == 108

    def test_target_zero(self):
        assert min_twists_for(0, 5, -1) == 0

    @given(st.integers(1, 40), st.integers(0, 6), st.integers(-3, -1))
    @settings(max_examples=100, deadline=None)
    def test_roundtrip(self, target, g, chi):
        n = min_twists_for(target, g, chi)
        assert bgl_lower_bound(n, g, chi) >= target
        if n > 0:
            assert bgl_lower_bound(n - 1, g, chi) < target


class TestBridgeDistance:
    def test_substitutions(self):
        assert bridge_distance(3, 13) == 7
        assert jm_condition(3, 13)
        assert bridge_distance(4, 33) == 9
        assert jm_condition(4, 33)

    def test_small_distance(self):
        assert bridge_distance(3, 2) == 1
        assert not jm_condition(3, 2)

    def test_m_two_rejected(self):
        with pytest.raises(ValueError):
            bridge_distance(2, 10)

    @given(st.integers(3, 50), st.integers(1, 2000))
    @settings(max_examples=200, deadline=None)
    def test_ceiling_oracle(self, m, r):
        assert bridge_distance(m, r) == math.ceil(r / (2 * (m - 2)))


class TestVolumeFloor:
    def test_arithmetic(self):
        assert twist_number_volume_floor(2, 1.0, 1.0) == 1.0

    def test_linearity(self):
        base = twist_number_volume_floor(10, 2.0, 1.0)
        assert twist_number_volume_floor(19, 2.0, 1.0) == base + 2.0 * 9

    def test_monotone_in_tw(self):
        assert twist_number_volume_floor(17, 0.5, 2.0) > twist_number_volume_floor(15, 0.5, 2.0)

    def test_requires_constants(self):
        with pytest.raises(ValueError):
            twist_number_volume_floor(5, None, None)

    def test_config_with_values(self, tmp_path):
        cfg = tmp_path / "fkp.ini"
        cfg.write_text("[volume_floor]\nc1 = 0.70735\nc2 = 1.0\n", encoding="utf-8")
        assert load_fkp_constants(cfg) == (0.70735, 1.0)

    def test_config_commented_out_refused(self, tmp_path):
        cfg = tmp_path / "fkp.ini"
        cfg.write_text("[volume_floor]\n# c1 = ...\n# c2 = ...\n", encoding="utf-8")
        with pytest.raises(ValueError):
            load_fkp_constants(cfg)


class TestBoundReport:
    def test_exactness_enforced(self):
        BoundReport(n=36, g=1, chi=-1, lower_bound=Fraction(0))
        with pytest.raises(ValueError):
            BoundReport(n=36, g=1, chi=-1, lower_bound=Fraction(1, 3))


class TestBoundsTable:
    def test_csv_shape(self):
        table = bounds_table_csv(1, -1, [36, 72, 108])
        lines = table.strip().splitlines()
        assert lines[0] == "n,g,chi,lower_bound"
        assert lines[1] == "36,1,-1,0"
        assert lines[2] == "72,1,-1,1/2"
        assert lines[3] == "108,1,-1,1"


def entry(name, vol, hyp=True, tol=1e-6):
    return {"name": name, "volume": vol, "hyperbolic": hyp, "engine": "t", "tolerance": tol}


class TestVolumeChain:
    def test_empty_is_vacuous_with_warning(self):
        rep = volume_chain_report([])
        assert rep["vacuous"] and rep["ok"]
        assert "warning" in rep

    def test_violation_flagged(self):
        rep = volume_chain_report([entry("l_prime(g=1)", 10.0), entry("script_l(g=1)", 9.0)])
        assert not rep["ok"]
        assert rep["checks"][0]["holds"] is False

    def test_chain_holds(self):
        rep = volume_chain_report(
            [
                entry("k_n(n=5)", 8.0),
                entry("l_prime(g=1)", 9.5),
                entry("script_l(g=1)", 12.0),
            ]
        )
        assert rep["ok"]
        assert len(rep["checks"]) == 3
        assert rep["uniform_upper_bound"] == 12.0

    def test_tolerance_respected(self):
        rep = volume_chain_report(
            [entry("k_n(n=5)", 9.0000004), entry("l_prime(g=1)", 9.0)]
        )
        assert rep["ok"]

    def test_malformed_entry(self):
        with pytest.raises(ValueError):
            volume_chain_report([{"name": "x", "volume": 1.0}])

    def test_missing_tolerance(self):
        bad = entry("l_prime(g=1)", 1.0)
        bad["tolerance"] = 0
        with pytest.raises(ValueError):
            volume_chain_report([bad])


class TestVolumeChainExtras:
    def test_unknown_names_ignored(self):
        rep = volume_chain_report(
            [entry("mystery_link", 3.0), entry("script_l(g=1)", 12.0)]
        )
        assert rep["ignored_entries"] == ["mystery_link"]
        assert rep["vacuous"]  # nothing comparable remains
