"""
Tests for short-vector enumeration, kissing numbers and the
covolume-one view of nearly minimal vectors.
"""

import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from app.errors import BoundTooLargeForBudget, PreconditionFailed
from app.interval.interval import Interval
from app.lattice.enumerate import (
    CERTAIN,
    POSSIBLE,
    covolume_scale,
    enumerate_vectors_below,
    kissing_number,
    minimal_norm,
    nearly_minimal_vectors,
    shortest_vectors,
)
from app.lattice.gram import GramMatrix, LatticeBasis, gram_and_covolume
from app.proof.lemmas import empirical_lemma_check

HEX = GramMatrix.parse_inline("2,1;1,2")
Z2 = GramMatrix.from_rationals([[1, 0], [0, 1]])


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

class TestEnumerate:
    def test_hexagonal_shortest_vectors(self):
        report = shortest_vectors(HEX)
        coords = {v.coords for v in report.vectors}
        assert coords == {(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)}
        assert kissing_number(report) == 6
        assert report.all_certain
        assert report.closed_under_negation()

    def test_square_lattice(self):
        assert kissing_number(shortest_vectors(Z2)) == 4
        assert minimal_norm(Z2) == Interval.point(1)

    def test_lexicographic_order(self):
        report = enumerate_vectors_below(HEX, 6)
        coords = [v.coords for v in report.vectors]
        assert coords == sorted(coords)
        assert len(coords) == 12

    def test_bound_must_be_positive(self):
        with pytest.raises(PreconditionFailed):
            enumerate_vectors_below(HEX, 0)

    def test_budget(self):
        with pytest.raises(BoundTooLargeForBudget):
            enumerate_vectors_below(HEX, 1000, budget=5)

    def test_report_json(self):
        data = shortest_vectors(HEX).to_json()
        assert data["count"] == 6
        assert data["minimal_norm"] == ["2/1", "2/1"]
        assert data["vectors"][0] == {"coords": [-1, 0], "status": CERTAIN, "norm": "2/1"}

    @given(
        st.integers(1, 20),
        st.integers(-20, 20),
        st.integers(1, 20),
        st.integers(1, 30),
    )
    @settings(max_examples=200, deadline=None)
    def test_matches_brute_force(self, a, b, c, bound):
        # det >= 1 and entries <= 20 keep every vector of norm <= 30 inside the box
        assume(a * c - b * b > 0)
        gram = GramMatrix.from_rationals([[a, b], [b, c]])
        expected = {
            (x, y)
            for x, y in itertools.product(range(-25, 26), repeat=2)
            if (x, y) != (0, 0) and a * x * x + 2 * b * x * y + c * y * y <= bound
        }
        found = {v.coords for v in enumerate_vectors_below(gram, bound).vectors}
        assert found == expected

    def test_three_dimensional(self):
        fcc = GramMatrix.parse_inline("2,1,1;1,2,1;1,1,2")
        assert kissing_number(shortest_vectors(fcc)) == 12


class TestIntervalGram:
    def test_nothing_missed(self):
        gram, _ = gram_and_covolume(LatticeBasis(LatticeBasis.hexagonal().rows))
        assert gram.exact is None
        report = shortest_vectors(gram)
        assert kissing_number(report) == 6
        assert minimal_norm(gram).contains(2)

    def test_straddling_vectors_are_possible(self):
        gram = GramMatrix.from_rationals([[["199/100", "201/100"], "0"], ["0", "2"]])
        report = enumerate_vectors_below(gram, 2)
        status = {v.coords: v.status for v in report.vectors}
        assert status[(1, 0)] == POSSIBLE
        assert status[(0, 1)] == CERTAIN


# ---------------------------------------------------------------------------
# Covolume one
# ---------------------------------------------------------------------------

class TestNearlyMinimal:
    def test_covolume_scale(self):
        scale = covolume_scale(HEX)
        assert scale.lo**2 <= 3 <= scale.hi**2

    def test_hexagonal_counts(self):
        near = nearly_minimal_vectors(HEX, 0, Fraction(557, 500))
        gap = nearly_minimal_vectors(HEX, Fraction(557, 500), Fraction(81, 50))
        assert len(near.vectors) == 6
        assert len(gap.vectors) == 0

    def test_square_counts(self):
        near = nearly_minimal_vectors(Z2, 0, Fraction(557, 500))
        gap = nearly_minimal_vectors(Z2, Fraction(557, 500), Fraction(81, 50))
        assert len(near.vectors) == 4
        assert len(gap.vectors) == 4

    def test_empirical_view(self):
        view = empirical_lemma_check(HEX)
        assert view.nearly_minimal == 6
        assert view.gap_vectors == 0
        assert view.uncertain == 0
        assert view.minimal_length.lo > Fraction(1074, 1000)
        assert view.minimal_length.hi < Fraction(1075, 1000)
