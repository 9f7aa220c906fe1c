import pytest
from hypothesis import given, settings, strategies as st

from platforge.braid import (
    BraidLetter,
    BraidSyntaxError,
    BraidWord,
    format_braid,
    parse_braid,
    plat_component_count,
    underlying_permutation,
    word,
)


def compose(p, q):
    """Apply p then q, both as image tuples."""
    return tuple(q[x - 1] for x in p)


class TestPermutation:
    def test_empty_word_is_identity(self):
        w = BraidWord(4, ())
        assert underlying_permutation(w) == (1, 2, 3, 4)

    def test_even_power_is_identity(self):
        w = word(2, [(1, 2)])
        assert underlying_permutation(w) == (1, 2)

    def test_hand_composed_odd_powers(self):
        # sigma_2^7 sigma_4^-9 on six strands: transpositions (2 3)(4 5)
        w = word(6, [(2, 7), (4, -9)])
        assert underlying_permutation(w) == (1, 3, 2, 5, 4, 6)

    def test_left_to_right_composition(self):
        w1 = word(4, [(1, 1)])
        w2 = word(4, [(2, 1)])
        p = underlying_permutation(w1 * w2)
        assert p == compose(underlying_permutation(w1), underlying_permutation(w2))

    @given(
        st.integers(2, 4).map(lambda m: 2 * m),
        st.data(),
    )
    @settings(max_examples=60, deadline=None)
    def test_homomorphism(self, strands, data):
        letters = st.lists(
            st.tuples(st.integers(1, strands - 1), st.integers(-5, 5)), max_size=12
        )
        w1 = word(strands, data.draw(letters))
        w2 = word(strands, data.draw(letters))
        assert underlying_permutation(w1 * w2) == compose(
            underlying_permutation(w1), underlying_permutation(w2)
        )


class TestPlatComponentCount:
    def test_identity_plat(self):
        assert plat_component_count(BraidWord(4, ())) == 2

    def test_single_crossing_unknot(self):
        assert plat_component_count(word(4, [(2, 1)])) == 1

    def test_trefoil(self):
        assert plat_component_count(word(2, [(1, 3)])) == 1

    @given(st.integers(1, 4), st.data())
    @settings(max_examples=80, deadline=None)
    def test_bounded_by_m(self, m, data):
        strands = 2 * m
        letters = st.lists(
            st.tuples(st.integers(1, max(1, strands - 1)), st.integers(-4, 4)),
            max_size=10,
        )
        w = word(strands, data.draw(letters))
        assert 1 <= plat_component_count(w) <= m

    @given(st.integers(2, 4), st.data())
    @settings(max_examples=60, deadline=None)
    def test_even_power_append_stable(self, m, data):
        strands = 2 * m
        letters = st.lists(
            st.tuples(st.integers(1, strands - 1), st.integers(-4, 4)), max_size=8
        )
        w = word(strands, data.draw(letters))
        j = data.draw(st.integers(1, strands - 1))
        sign = data.draw(st.sampled_from([2, -2]))
        w2 = w * word(strands, [(j, sign)])
        assert plat_component_count(w) == plat_component_count(w2)


class TestGrammar:
    def test_parse_basic(self):
        w = parse_braid("strands=6; 2^7 4^-9")
        assert w.strands == 6
        assert w.letters == (BraidLetter(2, 7), BraidLetter(4, -9))

    def test_format_inverse(self):
        assert format_braid(parse_braid("strands=6; 2^7 4^-9")) == "strands=6; 2^7 4^-9"

    def test_row_separators_ignored(self):
        assert parse_braid("strands=6; 2^7 | 4^-9") == parse_braid("strands=6; 2^7 4^-9")

    def test_formatter_emits_separators(self):
        w = parse_braid("strands=6; 2^7 4^-9 1^6")
        text = format_braid(w, row_breaks=[2])
        assert text == "strands=6; 2^7 4^-9 | 1^6"
        assert parse_braid(text) == w

    def test_out_of_range_index(self):
        with pytest.raises(BraidSyntaxError):
            parse_braid("strands=4; 5^1")

    def test_syntax_error_carries_position(self):
        with pytest.raises(BraidSyntaxError) as exc:
            parse_braid("strands=4; bogus")
        assert exc.value.line == 1
        assert exc.value.column > 0

    def test_zero_power_is_legal(self):
        w = parse_braid("strands=4; 2^0")
        assert plat_component_count(w) == 2

    @given(st.integers(1, 3), st.data())
    @settings(max_examples=40, deadline=None)
    def test_roundtrip_random(self, m, data):
        strands = 2 * m + 2
        letters = st.lists(
            st.tuples(st.integers(1, strands - 1), st.integers(-9, 9)), max_size=10
        )
        w = word(strands, data.draw(letters))
        assert parse_braid(format_braid(w)) == w


def test_multiline_error_position():
    with pytest.raises(BraidSyntaxError) as exc:
        parse_braid("strands=6; 2^7\n4^-9 oops")
    assert exc.value.line == 2
