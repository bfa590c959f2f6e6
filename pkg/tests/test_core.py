import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meanders import core
from meanders.errors import (
    BracketSyntaxError,
    Interlaced,
    NotCleaved,
    NotConnected,
    NotInvolution,
    ParityViolation,
    PrefixViolation,
    SizeMismatch,
    TooLargeForOracle,
    TotalMismatch,
)

from helpers import (
    TWO_CURVE_LOWER,
    TWO_CURVE_UPPER,
    CONNECTED_LOWER,
    CONNECTED_SHOOTING,
    CONNECTED_UPPER,
    dyck_words,
    trace_curves,
    word_blocks,
    word_partners,
)


def two_curve():
    return core.combine(core.arcs_from_pairs(TWO_CURVE_UPPER), core.arcs_from_pairs(TWO_CURVE_LOWER))


def connected14():
    return core.combine(core.arcs_from_pairs(CONNECTED_UPPER), core.arcs_from_pairs(CONNECTED_LOWER))


@st.composite
def dyck(draw, max_alpha=8):
    alpha = draw(st.integers(0, max_alpha))
    word, opened, closed = [], 0, 0
    while closed < alpha:
        can_open = opened < alpha
        can_close = closed < opened
        if can_open and can_close:
            step = draw(st.booleans())
        else:
            step = can_open
        word.append(step)
        opened += step
        closed += not step
    return tuple(word)


class TestArcCollection:
    def test_two_curve_collections_validate(self):
        m = two_curve()
        assert m.upper.arcs() == TWO_CURVE_UPPER
        assert m.lower.arcs() == TWO_CURVE_LOWER

    def test_rainbow(self):
        assert core.rainbow(3).arcs() == [(1, 6), (2, 5), (3, 4)]
        assert core.rainbow(0).points == 0

    def test_not_involution(self):
        with pytest.raises(NotInvolution):
            core.validate_arc_collection([2, 3, 1, 4])
        with pytest.raises(NotInvolution):
            core.validate_arc_collection([1, 2])
        with pytest.raises(NotInvolution):
            core.validate_arc_collection([2, 1, 3])

    def test_parity(self):
        with pytest.raises(ParityViolation) as exc:
            core.validate_arc_collection([3, 4, 1, 2])
        assert exc.value.arc == (1, 3)

    def test_interlaced(self):
        with pytest.raises(Interlaced):
            core.validate_arc_collection([4, 5, 6, 1, 2, 3])

    def test_euler_count_separates_planar_from_crossing(self):
        assert core.euler_cycle_count([4, 3, 2, 1]) == 3
        assert core.euler_cycle_count([4, 5, 6, 1, 2, 3]) <= 3

    @pytest.mark.parametrize("alpha", range(1, 5))
    def test_all_involutions_classified(self, alpha):
        # every fixed-point-free involution with odd/even arcs: valid iff non-crossing
        n = 2 * alpha
        planar = {tuple(word_partners(w)[1:]) for w in dyck_words(alpha)}
        odds = list(range(1, n + 1, 2))
        evens = list(range(2, n + 1, 2))
        for perm in itertools.permutations(evens):
            partner = [0] * n
            for a, b in zip(odds, perm):
                partner[a - 1], partner[b - 1] = b, a
            if tuple(partner) in planar:
                core.validate_arc_collection(partner)
            else:
                with pytest.raises(Interlaced):
                    core.validate_arc_collection(partner)

    def test_involution_text_round_trip(self):
        a = core.parse_involution("10,5,4,3,2,9,8,7,6,1")
        assert core.format_involution(a) == "10,5,4,3,2,9,8,7,6,1"
        with pytest.raises(BracketSyntaxError):
            core.parse_involution("1,x")


class TestMeander:
    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            core.combine(core.rainbow(2), core.rainbow(3))

    def test_two_curve_permutation(self):
        m = two_curve()
        cyc = core.cycles_of(core.meander_permutation(m))
        assert core.format_cycles(cyc) == "(1,10,7,8,9,6)(2,3,4,5)"
        assert core.count_components(m) == 2

    def test_two_curve_product_cycles(self):
        got = {frozenset(c) for c in core.product_cycles(two_curve())}
        assert got == {frozenset(c) for c in [(1, 9, 7), (3, 5), (2, 4), (6, 10, 8)]}

    def test_permutation_round_trip(self):
        m = two_curve()
        perm = core.meander_permutation(m)
        assert core.parse_cycles(core.format_cycles(core.cycles_of(perm))) == perm
        assert core.meander_from_permutation(perm) == m

    def test_meander_from_permutation_rejects_parity(self):
        with pytest.raises(ParityViolation):
            core.meander_from_permutation([3, 4, 1, 2])

    def test_empty_meander(self):
        assert core.count_components(core.combine(core.rainbow(0), core.rainbow(0))) == 0

    def test_oracle_cap(self, monkeypatch):
        monkeypatch.setenv("MEANDER_ORACLE_CAP", "8")
        with pytest.raises(TooLargeForOracle):
            core.count_components(two_curve())
        monkeypatch.setenv("MEANDER_ORACLE_CAP", "10")
        assert core.count_components(two_curve()) == 2

    def test_counts_match_reference_walk(self):
        for alpha in range(1, 5):
            words = list(dyck_words(alpha))
            for up, low in itertools.product(words, repeat=2):
                m = core.combine(core.validate_arc_collection(word_partners(up)[1:]),
                                 core.validate_arc_collection(word_partners(low)[1:]))
                assert core.count_components(m) == trace_curves(word_partners(up), word_partners(low))


class TestShooting:
    def test_connected_table(self):
        assert core.trace_shooting(connected14()) == CONNECTED_SHOOTING

    def test_connected_reverse(self):
        assert core.meander_from_shooting(CONNECTED_SHOOTING) == connected14()

    def test_conjugacy(self):
        pi = np.array(CONNECTED_SHOOTING) - 1
        inv = np.argsort(pi)
        comb = np.array(core.meander_permutation(connected14())) - 1
        assert np.array_equal(inv[(pi + 1) % 14], comb)

    def test_disconnected_rejected(self):
        with pytest.raises(NotConnected):
            core.trace_shooting(two_curve())


class TestBrackets:
    def test_two_curve_condensed(self):
        m = two_curve()
        assert str(core.arcs_to_brackets(m.upper)) == "((3,2),(2,3))"
        assert str(core.arcs_to_brackets(m.lower)) == "((2,1),(1,2),(2,2))"

    def test_parse_meander(self):
        assert core.parse_meander("((3,2),(2,3))/((2,1),(1,2),(2,2))") == two_curve()
        assert core.format_meander(two_curve()) == "((3,2),(2,3))/((2,1),(1,2),(2,2))"

    def test_zero_entries_merged(self):
        b = core.BracketExpression.from_blocks([(2, 0), (1, 1), (0, 2)])
        assert b.blocks == ((3, 3),)
        assert core.parse_brackets("((1,0),(1,2))").blocks == ((2, 2),)

    def test_prefix_violation(self):
        with pytest.raises(PrefixViolation):
            core.parse_brackets("((1,2),(2,1))")
        with pytest.raises(PrefixViolation):
            core.BracketExpression(((0, 1), (1, 0)))

    def test_total_mismatch(self):
        with pytest.raises(TotalMismatch):
            core.parse_brackets("((3,2))")

    def test_syntax_error_names_token(self):
        with pytest.raises(BracketSyntaxError) as exc:
            core.parse_brackets("((3,2),(2;3))")
        assert exc.value.token == ";"
        assert exc.value.position == 9

    def test_empty_expression(self):
        assert core.parse_brackets("()").size == 0

    @given(dyck())
    def test_word_round_trip(self, word):
        b = core.BracketExpression(word_blocks(word)) if word else core.BracketExpression(())
        assert tuple(b.word()) == word
        arcs = core.brackets_to_arcs(b)
        assert list(arcs.pairing) == word_partners(word)[1:]
        assert core.arcs_to_brackets(arcs) == b
        assert core.parse_brackets(core.emit_brackets(b)) == b


class TestFlip:
    def test_two_curve_flip(self):
        assert str(core.flip(two_curve())) == "((3,2),(2,3),(2,2),(2,1),(1,2))"

    def test_flip_cleaved_and_reversible(self):
        b = core.flip(two_curve())
        assert core.cleavage_index(b) == 2
        assert core.unflip(b) == two_curve()

    def test_flip_preserves_count(self):
        assert core.count_components(core.rainbow_meander(core.flip(two_curve()))) == 2

    def test_unflip_needs_cleaved(self):
        with pytest.raises(NotCleaved):
            core.unflip(core.parse_brackets("((2,1),(1,2))"))

    def test_reflect_is_involution(self):
        b = core.parse_brackets("((2,1),(1,2),(2,2))")
        assert core.reflect_blocks(core.reflect_blocks(b)) == b
        assert str(core.reflect_blocks(b)) == "((2,2),(2,1),(1,2))"

    @settings(max_examples=200)
    @given(st.data())
    def test_flip_exhaustive_property(self, data):
        alpha = data.draw(st.integers(1, 6))
        words = list(dyck_words(alpha))
        up = data.draw(st.sampled_from(words))
        low = data.draw(st.sampled_from(words))
        m = core.combine(core.validate_arc_collection(word_partners(up)[1:]),
                         core.validate_arc_collection(word_partners(low)[1:]))
        b = core.flip(m)
        assert core.is_cleaved(b)
        assert b.size == 2 * alpha
        assert core.count_components(core.rainbow_meander(b)) == core.count_components(m)
        assert core.unflip(b) == m


class TestBirainbowMeander:
    def test_layout(self):
        m = core.birainbow_to_meander([2, 1])
        assert m.upper.arcs() == [(1, 4), (2, 3), (5, 6)]
        assert m.lower == core.rainbow(3)

    def test_empty(self):
        assert core.birainbow_to_meander([]).points == 0
