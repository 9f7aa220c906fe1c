import pytest

from platforge.braid import plat_component_count
from platforge.canonical import diagram_isomorphic
from platforge.diagram import fill_circles
from platforge.families import (
    FamilyParams,
    FillingInstruction,
    braid_word_for,
    fill_schedule,
    fill_to_l_prime,
    fixed_bridge_family,
    from_manifest,
    k_g_prime,
    k_n,
    l_g_augmented,
    l_prime,
    manifest_for,
    random_params,
    script_l,
    theorem_row_count,
)


def region_count(m, r):
    # odd rows carry m-1 regions, even rows m
    odd = (r + 1) // 2
    even = r // 2
    return odd * (m - 1) + even * m


class TestParams:
    def test_row_counts(self):
        assert random_params(1, seed=0).r == 13
        assert random_params(2, seed=0).r == 33
        assert theorem_row_count(5) == 61

    def test_g_zero_rejected(self):
        with pytest.raises(ValueError):
            random_params(0, seed=1)

    def test_deterministic_in_seed(self):
        assert random_params(1, seed=5).a == random_params(1, seed=5).a
        assert random_params(1, seed=5).a != random_params(1, seed=6).a

    def test_constraints_hold(self):
        p = random_params(2, seed=3, magnitude_bound=11)
        for i, row in enumerate(p.a, 1):
            for v in row:
                assert abs(v) >= 6
                assert (v % 2 == 1) if i == 1 else (v % 2 == 0)

    def test_parity_validation(self):
        with pytest.raises(ValueError):
            FamilyParams(g=1, r=1, a=((6, 6),))  # first row must be odd
        with pytest.raises(ValueError):
            FamilyParams(g=1, r=3, a=((7, 7), (7, 6, 6), (6, 6)))  # row 2 odd entry

    def test_magnitude_validation(self):
        with pytest.raises(ValueError):
            FamilyParams(g=1, r=1, a=((5, 7),))

    def test_region_count_formula(self):
        p = random_params(1, seed=0)
        assert p.twist_region_count() == region_count(3, 13) == 32


class TestKgPrime:
    def test_single_component(self):
        p = random_params(1, seed=7)
        d = k_g_prime(p)
        assert d.component_count() == 1

    def test_crossings_equal_matrix_sum(self):
        # all |a| = 6 except the (odd) first row at 7
        rows = []
        for i in range(1, 14):
            width = 2 if i % 2 == 1 else 3
            rows.append(tuple([7 if i == 1 else 6] * width))
        p = FamilyParams(g=1, r=13, a=tuple(rows))
        d = k_g_prime(p)
        assert d.crossing_count() == sum(abs(v) for row in rows for v in row)
        assert d.crossing_count() == p.crossing_total()

    def test_region_annotations(self):
        p = random_params(1, seed=7)
        d = k_g_prime(p)
        assert len(d.regions) == 32
        assert d.regions["r1c2"].half_twists == p.value(1, 2)

    def test_reported_metadata(self):
        p = random_params(2, seed=1)
        d = k_g_prime(p)
        assert d.meta["reported_bridge_number"]["value"] == 4
        assert d.meta["reported_tunnel_number"]["value"] == 3
        assert "provenance" in d.meta["reported_bridge_number"]

    def test_component_count_matches_braid_orbit_count(self):
        for g, seed in ((1, 1), (2, 2)):
            p = random_params(g, seed=seed)
            w, _ = braid_word_for(p)
            assert k_g_prime(p).component_count() == plat_component_count(w) == 1


class TestLPrime:
    def test_three_components(self):
        assert l_prime(random_params(1, seed=7)).component_count() == 3

    def test_linking_magnitudes(self):
        for g in (1, 2, 3):
            d = l_prime(random_params(g, seed=g))
            assert abs(d.linking_number("K", "L1")) == 1
            assert abs(d.linking_number("K", "L2")) == 1

    def test_clasp_has_fourteen_positive_crossings(self):
        d = l_prime(random_params(1, seed=7))
        a, b = d.regions["clasp-a"], d.regions["clasp-b"]
        assert a.half_twists == b.half_twists == 7
        assert len(a.crossings) + len(b.crossings) == 14
        signs = [d.sign(c) for c in a.crossings + b.crossings]
        assert signs == [1] * 14

    def test_four_strand_regions(self):
        p = random_params(1, seed=7)
        d = l_prime(p)
        reg = d.regions["r1c2"]
        assert reg.strand_count == 4
        assert reg.half_twists == p.value(1, 2)
        assert len(reg.crossings) == abs(p.value(1, 2)) * 6

    def test_annulus_annotation(self):
        d = l_prime(random_params(1, seed=7))
        assert d.meta["annulus"]["boundary"] == ("L1", "L2")
        assert d.meta["annulus"]["piercings"] == 2


class TestAugmented:
    def test_l_g_component_count(self):
        d = l_g_augmented(1)
        assert d.component_count() == 1 + 32

    def test_l_g_circles_cross_twice_each(self):
        d = l_g_augmented(1)
        tag = d.circles["C[2,1]"]
        assert len(tag.upper_crossings) + len(tag.lower_crossings) == 4

    def test_script_l_component_count(self):
        assert script_l(1).component_count() == 3 + 2 + 32

    def test_script_l_first_row_six_crossings(self):
        d = script_l(1)
        reg = d.regions["r1c2"]
        assert reg.half_twists == 1
        assert len(reg.crossings) == 6

    def test_script_l_region_circles_eight_crossings(self):
        d = script_l(1)
        tag = d.circles["C[1,2]"]
        assert len(tag.upper_crossings) + len(tag.lower_crossings) == 8

    def test_script_l_linking(self):
        d = script_l(1)
        assert abs(d.linking_number("K", "L1")) == 1
        assert abs(d.linking_number("K", "L2")) == 1

    def test_g_zero_rejected(self):
        with pytest.raises(ValueError):
            l_g_augmented(0)
        with pytest.raises(ValueError):
            script_l(0)

    @pytest.mark.parametrize("g", [1, 2, 3])
    def test_component_formulas(self, g):
        m, r = g + 2, 4 * (g + 2) * g + 1
        regions = ((r + 1) // 2) * (m - 1) + (r // 2) * m
        assert l_g_augmented(g).component_count() == 1 + regions
        assert script_l(g).component_count() == 5 + regions
        assert l_prime(random_params(g, seed=g)).component_count() == 3


class TestFillSchedule:
    def test_slopes(self):
        rows = []
        for i in range(1, 14):
            width = 2 if i % 2 == 1 else 3
            rows.append(tuple([7 if i == 1 else 6] * width))
        p = FamilyParams(g=1, r=13, a=tuple(rows))
        sched = fill_schedule(p)
        by_circle = {s.circle: s.denominator for s in sched}
        assert by_circle["C1"] == by_circle["C2"] == 3
        assert by_circle["C[1,2]"] == 3  # (7-1)/2
        assert by_circle["C[2,1]"] == 3  # 6/2

    def test_negative_entries(self):
        rows = []
        for i in range(1, 14):
            width = 2 if i % 2 == 1 else 3
            rows.append(tuple([-7 if i == 1 else -6] * width))
        p = FamilyParams(g=1, r=13, a=tuple(rows))
        by_circle = {s.circle: s.denominator for s in fill_schedule(p)}
        assert by_circle["C[1,2]"] == -4  # (-7-1)/2
        assert by_circle["C[2,1]"] == -3

    def test_numerator_fixed(self):
        with pytest.raises(ValueError):
            FillingInstruction("C1", 3, numerator=2)


class TestFillEquivalence:
    @pytest.mark.parametrize("g,seed", [(1, 7), (1, 13), (2, 11)])
    def test_fill_reproduces_l_prime(self, g, seed):
        p = random_params(g, seed=seed)
        assert diagram_isomorphic(fill_to_l_prime(g, p), l_prime(p))

    def test_component_count_after_filling(self):
        p = random_params(1, seed=5)
        assert fill_to_l_prime(1, p).component_count() == 3

    def test_clasp_after_filling(self):
        p = random_params(1, seed=5)
        d = fill_to_l_prime(1, p)
        assert len(d.regions["clasp-a"].crossings) == 7
        assert len(d.regions["clasp-b"].crossings) == 7

    def test_negative_control(self):
        p = random_params(1, seed=3)
        sched = fill_schedule(p)
        sched[4] = FillingInstruction(sched[4].circle, sched[4].denominator + 1)
        d = fill_circles(script_l(1), [(s.circle, s.denominator) for s in sched])
        assert not diagram_isomorphic(d, l_prime(p))


class TestKn:
    def test_n_zero_is_unknot(self):
        rep = k_n(random_params(1, seed=7), 0)
        assert rep.explicit is not None
        assert rep.explicit.component_count() == 1
        assert rep.explicit.crossing_count() == 0

    def test_single_component_small_n(self):
        p = random_params(1, seed=7)
        for n in (1, 2, 3):
            rep = k_n(p, n)
            assert rep.explicit.component_count() == 1

    def test_explicit_limit(self):
        p = random_params(1, seed=7)
        rep = k_n(p, 4, explicit_limit=3)
        assert rep.explicit is None
        assert rep.base.component_count() == 3

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            k_n(random_params(1, seed=7), -1)

    def test_filling_slopes_recorded(self):
        rep = k_n(random_params(1, seed=7), 5)
        assert rep.meta["filling_slopes"] == {"L1": "-1/5", "L2": "+1/5"}


class TestFixedBridge:
    def test_parameters(self):
        d = fixed_bridge_family(1, 2, 15, seed=0)
        assert d.meta["m"] == 3
        assert d.component_count() == 1
        assert d.meta["reported_bridge_number"]["value"] == 2

    def test_g_plus_b_too_small(self):
        with pytest.raises(ValueError):
            fixed_bridge_family(1, 1, 15)

    def test_row_count_must_exceed_threshold(self):
        with pytest.raises(ValueError):
            fixed_bridge_family(1, 2, 11)

    def test_twist_count_grows_with_r(self):
        d15 = fixed_bridge_family(1, 2, 15, seed=0)
        d17 = fixed_bridge_family(1, 2, 17, seed=0)
        assert d17.meta["twist_region_count"] > d15.meta["twist_region_count"]

    def test_magnitudes_at_least_seven(self):
        d = fixed_bridge_family(2, 2, 35, seed=1)
        assert all(abs(r.half_twists) >= 7 for r in d.regions.values())


class TestManifests:
    def test_params_roundtrip(self):
        p = random_params(1, seed=9)
        man = manifest_for(p)
        assert from_manifest(man) == p

    def test_family_manifest_rebuild(self):
        p = random_params(1, seed=9)
        man = manifest_for(p) | {"family": "l_prime"}
        d = from_manifest(man)
        assert diagram_isomorphic(d, l_prime(p))

    def test_script_l_manifest(self):
        d = from_manifest({"family": "script_l", "g": 1})
        assert d.component_count() == 37

    def test_determinism(self):
        a = manifest_for(random_params(2, seed=4))
        b = manifest_for(random_params(2, seed=4))
        assert a == b
