"""Tests for the Poincare action on upper half-space."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bianchi_mod2.arithmetic import ArithmeticDomainError, QuadElement
from bianchi_mod2.geometry import (
    VERTICES,
    EdgeAction,
    HPoint,
    act,
    edge_action,
    fixes_point,
    maps_point_set,
    vertex_name,
    vertex_table,
)
from bianchi_mod2.groups import GEN_A, GEN_SMALL_C, GEN_T, IDENTITY, NAMED_GENERATORS, Word, evaluate_word
from bianchi_mod2.groups.audit import GAMMA0_LETTERS

small = st.builds(Fraction, st.integers(-4, 4), st.sampled_from([1, 2, 4]))
points = st.builds(
    HPoint,
    st.builds(QuadElement, small, small),
    st.builds(Fraction, st.integers(1, 4), st.sampled_from([1, 2, 4, 8])),
)
words = st.lists(
    st.tuples(st.sampled_from(GAMMA0_LETTERS), st.sampled_from([-1, 1])),
    max_size=3,
).map(tuple)


class TestAction:
    """Tests for act()."""

    def test_translation(self) -> None:
        p = HPoint(QuadElement(Fraction(1, 2)), Fraction(1, 4))
        assert act(GEN_T, p) == HPoint(QuadElement(Fraction(3, 2)), Fraction(1, 4))

    def test_centre_acts_trivially(self) -> None:
        for p in VERTICES.values():
            assert act(-IDENTITY, p) == p

    def test_stabilizer_generators_fix_v2_prime(self) -> None:
        assert fixes_point(GEN_A, VERTICES["v2'"])
        assert fixes_point(GEN_SMALL_C, VERTICES["v2'"])
        assert not fixes_point(GEN_T, VERTICES["v2'"])

    def test_c_swaps_v1_and_v1_prime(self) -> None:
        assert edge_action(GEN_SMALL_C, VERTICES["v1"], VERTICES["v1'"]) is EdgeAction.SWAPS
        assert edge_action(-IDENTITY, VERTICES["v1"], VERTICES["v1'"]) is EdgeAction.FIXES
        assert edge_action(GEN_T, VERTICES["v1"], VERTICES["v1'"]) is EdgeAction.NONE
        assert maps_point_set(GEN_SMALL_C, [VERTICES["v1"], VERTICES["v1'"]], [VERTICES["v1'"], VERTICES["v1"]])

    @given(words, words, points)
    @settings(max_examples=50, deadline=None)
    def test_left_action(self, u: Word, v: Word, p: HPoint) -> None:
        """(gh).p = g.(h.p)."""
        g, h = evaluate_word(u, NAMED_GENERATORS), evaluate_word(v, NAMED_GENERATORS)
        assert act(g @ h, p) == act(g, act(h, p))


class TestPoints:
    """Tests for HPoint and the vertex table."""

    def test_height_must_be_positive(self) -> None:
        with pytest.raises(ArithmeticDomainError, match="positive"):
            HPoint(QuadElement.of(0), Fraction(0))

    def test_vertex_lookup(self) -> None:
        assert vertex_name(VERTICES["v2"]) == "v2"
        assert vertex_name(HPoint(QuadElement.of(0), Fraction(1))) is None

    def test_vertex_table(self) -> None:
        rows = vertex_table()
        assert len(rows) == 8
        assert {"name": "v2'", "z": "-1/2*w", "zeta_sq": "1/2"} in rows
