import pytest
from hypothesis import given, settings, strategies as st

from platforge.braid import parse_braid, word
from platforge.canonical import canonical_form, diagram_isomorphic, reflect
from platforge.codes import (
    from_pd_code,
    linking_from_gauss,
    parse_gauss_code,
    to_dt_code,
    to_gauss_code,
    to_pd_code,
)
from platforge.diagram import (
    DiagramError,
    add_crossing_circle,
    fill_circles,
    fill_crossing_circle,
    insert_half_twists,
    plat_diagram,
    reverse_component,
)


def plat(text):
    return plat_diagram(parse_braid(text))


def trefoil():
    return plat("strands=2; 1^3")


def fig8():
    return plat("strands=4; 2^1 1^-1 2^1 1^-1")


def hopf():
    return plat("strands=4; 2^2")


random_words = st.builds(
    lambda m, letters: word(2 * m, letters),
    st.integers(2, 3),
    st.lists(st.tuples(st.integers(1, 3), st.integers(-3, 3)), min_size=1, max_size=6),
)


class TestPlatDiagram:
    def test_identity_plat(self):
        d = plat("strands=4;")
        assert d.crossing_count() == 0
        assert d.component_count() == 2

    def test_crossing_count_is_power(self):
        d = plat("strands=6; 2^7")
        assert d.crossing_count() == 7
        assert len(set(d.signs())) == 1

    def test_component_count_matches_braid(self):
        from platforge.braid import plat_component_count

        for text in ("strands=2; 1^3", "strands=4; 2^2", "strands=6; 2^7 4^-9"):
            w = parse_braid(text)
            assert plat_diagram(w).component_count() == plat_component_count(w)

    def test_regions_recorded(self):
        d = plat("strands=6; 2^7 4^-9")
        assert d.regions["t0"].half_twists == 7
        assert d.regions["t1"].half_twists == -9
        assert len(d.regions["t0"].crossings) == 7

    @given(random_words)
    @settings(max_examples=50, deadline=None)
    def test_euler_always_valid(self, w):
        # Diagram.validate runs at construction: planarity per piece
        d = plat_diagram(w)
        assert d.crossing_count() == sum(abs(l.power) for l in w.letters)


class TestInvariants:
    def test_writhe_zero_crossing(self):
        assert plat("strands=2;").writhe() == 0

    def test_trefoil_writhe(self):
        assert abs(trefoil().writhe()) == 3

    def test_hopf_linking(self):
        h = hopf()
        a, b = h.components
        assert abs(h.linking_number(a, b)) == 1

    def test_positive_hopf_is_plus_one(self):
        h = hopf()
        a, b = h.components
        if h.linking_number(a, b) < 0:
            h = reverse_component(h, a)
        assert h.linking_number(a, b) == 1
        assert all(s == 1 for s in h.signs())

    def test_linking_symmetric_and_negates(self):
        h = hopf()
        a, b = h.components
        assert h.linking_number(a, b) == h.linking_number(b, a)
        hr = reverse_component(h, a)
        assert hr.linking_number(a, b) == -h.linking_number(a, b)

    def test_split_unknots_link_zero(self):
        d = plat("strands=4;")
        a, b = d.component_labels()
        assert d.linking_number(a, b) == 0

    def test_unknown_component(self):
        with pytest.raises(DiagramError):
            trefoil().linking_number("K", "nope")

    @given(random_words)
    @settings(max_examples=40, deadline=None)
    def test_linking_reversal_property(self, w):
        d = plat_diagram(w)
        labels = [l for l in d.components]
        if len(labels) < 2:
            return
        a, b = labels[0], labels[1]
        lk = d.linking_number(a, b)
        assert reverse_component(d, a).linking_number(a, b) == -lk
        assert reverse_component(reverse_component(d, a), b).linking_number(a, b) == lk


class TestTwistOps:
    def test_insert_adds_crossings_2_strands(self):
        # t0 is an empty region whose strands continue into t1 below
        d = plat("strands=6; 2^0 2^4")
        d2 = insert_half_twists(d, "t0", 7)
        assert d2.crossing_count() == d.crossing_count() + 7
        assert d2.regions["t0"].half_twists == 7
        assert d2.regions["t1"].half_twists == 4

    def test_insert_zero_is_identity(self):
        d = plat("strands=6; 2^7")
        assert insert_half_twists(d, "t0", 0) is d

    def test_cancellation(self):
        d = plat("strands=6; 2^7 4^-9")
        d2 = insert_half_twists(d, "t1", 9)
        assert d2.regions["t1"].half_twists == 0
        assert d2.crossing_count() == d.crossing_count() - 9

    def test_insert_then_uninsert_restores(self):
        d = plat("strands=6; 2^7 4^-9")
        d2 = insert_half_twists(insert_half_twists(d, "t0", 4), "t0", -4)
        assert d2.crossing_count() == d.crossing_count()
        assert diagram_isomorphic(d2, d)

    def test_region_not_found(self):
        with pytest.raises(DiagramError):
            insert_half_twists(trefoil(), "zzz", 1)


class TestCrossingCircles:
    def test_add_two_strand_circle(self):
        d = plat("strands=6; 2^7")
        dc = add_crossing_circle(d, "t0", "C")
        assert dc.crossing_count() == d.crossing_count() + 4
        assert dc.component_count() == d.component_count() + 1

    def test_double_encircle_rejected(self):
        d = add_crossing_circle(plat("strands=6; 2^7"), "t0", "C")
        with pytest.raises(DiagramError):
            add_crossing_circle(d, "t0", "C2")

    def test_meridian_fill_restores(self):
        d = plat("strands=6; 2^7 4^-9")
        dc = add_crossing_circle(d, "t0", "C")
        assert diagram_isomorphic(fill_crossing_circle(dc, "C", 0), d)

    def test_fill_adds_full_twists(self):
        # one crossing, slope 1/3: seven crossings in the region
        d = plat("strands=4; 2^1")
        d = add_crossing_circle(d, "t0", "C")
        d = fill_crossing_circle(d, "C", 3)
        assert d.regions["t0"].half_twists == 7
        assert d.crossing_count() == 7

    def test_fill_non_circle_rejected(self):
        d = plat("strands=4; 2^1")
        with pytest.raises(DiagramError):
            fill_crossing_circle(d, "K", 1)
        with pytest.raises(DiagramError):
            fill_crossing_circle(d, "nope", 1)

    def test_circle_linking_with_enclosed_strands(self):
        # anti-parallel pair through the disk: signed sum cancels to zero
        d = plat("strands=4; 2^2")
        dc = add_crossing_circle(d, "t0", "C")
        lks = [dc.linking_number("C", lbl) for lbl in d.components]
        assert sorted(abs(v) for v in lks) in ([0, 0], [1, 1])

    def test_crossing_count_bookkeeping(self):
        # after a filling schedule: initial + sum 2q*k(k-1)/2 - 2k per circle
        d = plat("strands=6; 2^7 4^6")
        d = add_crossing_circle(d, "t0", "Ca")
        d = add_crossing_circle(d, "t1", "Cb")
        start = d.crossing_count()
        filled = fill_circles(d, [("Ca", 2), ("Cb", 3)])
        expect = start + (2 * 2 + 2 * 3) * 1 - 2 * 2 - 2 * 2
        assert filled.crossing_count() == expect


class TestIsomorphism:
    def test_self_iso_shuffled(self):
        d1 = plat("strands=6; 2^7 4^-9")
        d2 = plat("strands=6; 4^-9 2^7")  # different creation order, same diagram
        assert diagram_isomorphic(d1, d2)

    def test_trefoil_not_fig8(self):
        assert not diagram_isomorphic(trefoil(), fig8())

    def test_mirror_allowed(self):
        assert diagram_isomorphic(trefoil(), plat("strands=2; 1^-3"))

    def test_reflection_is_involution(self):
        d = fig8()
        assert diagram_isomorphic(reflect(reflect(d)), d)

    def test_canonical_form_cached_and_stable(self):
        d = trefoil()
        assert canonical_form(d) == canonical_form(plat("strands=2; 1^3"))

    def test_different_twist_counts_differ(self):
        assert not diagram_isomorphic(plat("strands=2; 1^3"), plat("strands=2; 1^5"))


class TestCodes:
    def test_unknot_pd_empty(self):
        assert to_pd_code(plat("strands=2;")) == ""

    def test_trefoil_pd_roundtrip(self):
        t = trefoil()
        pd = to_pd_code(t)
        assert len(pd.strip().splitlines()) == 3
        assert diagram_isomorphic(from_pd_code(pd), t)

    @given(random_words)
    @settings(max_examples=30, deadline=None)
    def test_pd_roundtrip_random(self, w):
        d = plat_diagram(w)
        if d.crossing_count() == 0:
            return
        if d.free_loops:
            return  # PD cannot carry crossing-free components
        assert diagram_isomorphic(from_pd_code(to_pd_code(d)), d)

    def test_gauss_parses_back(self):
        h = hopf()
        seqs = parse_gauss_code(to_gauss_code(h))
        assert set(seqs) == set(h.component_labels())
        assert sum(len(v) for v in seqs.values()) == 2 * h.crossing_count()

    def test_gauss_linking_agrees(self):
        h = hopf()
        a, b = h.components
        assert linking_from_gauss(to_gauss_code(h), a, b) == h.linking_number(a, b)

    @given(random_words)
    @settings(max_examples=40, deadline=None)
    def test_two_method_linking(self, w):
        d = plat_diagram(w)
        labels = list(d.components)
        if len(labels) < 2:
            return
        text = to_gauss_code(d)
        for i in range(len(labels)):
            for j in range(i + 1, len(labels)):
                assert linking_from_gauss(text, labels[i], labels[j]) == d.linking_number(
                    labels[i], labels[j]
                )

    def test_dt_knots_only(self):
        with pytest.raises(DiagramError):
            to_dt_code(hopf())

    def test_dt_trefoil_fig8(self):
        dt3 = [abs(int(x)) for x in to_dt_code(trefoil()).split()]
        assert sorted(dt3) == [2, 4, 6]
        dt4 = [abs(int(x)) for x in to_dt_code(fig8()).split()]
        assert sorted(dt4) == [2, 4, 6, 8]

    def test_dt_deterministic(self):
        assert to_dt_code(trefoil()) == to_dt_code(plat("strands=2; 1^3"))


def test_fill_circles_unknown_label():
    d = plat("strands=4; 2^1")
    with pytest.raises(DiagramError):
        fill_circles(d, [("nope", 1)])
