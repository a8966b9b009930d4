"""Exact density arithmetic: surd ordering against integer-sqrt oracles."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from locmat.density import (
    INFINITY,
    Surd,
    cmp_density,
    floor_times,
    format_density,
    parse_density,
    scale_density,
    times_is_integer,
)
from locmat.steinitz import ParseError


def decimal_floor(x: int, y: int, d: int, z: int, digits: int) -> int:
    # Independent oracle: floor(((x + y*sqrt(d)) / z) * 10^digits) via
    # integer square roots at shifted precision.
    shift = 10**digits
    return (x * shift + math.isqrt(y * y * shift * shift * d)) // z


def oracle_cmp(a, b) -> int:
    # Compare two surd/rational values by decimal refinement; distinct
    # values always separate at some precision.
    def digits(v, k):
        if isinstance(v, Surd):
            return decimal_floor(v.x, v.y, v.d, v.z, k)
        return (v.numerator * 10**k) // v.denominator

    for k in range(1, 60):
        fa, fb = digits(a, k), digits(b, k)
        if fa != fb:
            return 1 if fa > fb else -1
    return 0


SQRT2 = Surd.make(0, 1, 2, 1)
SQRT5 = Surd.make(0, 1, 5, 1)


class TestConstruction:
    def test_square_extraction(self):
        assert Surd.make(0, 1, 8, 2) == Surd.make(0, 2, 2, 2) == Surd.make(0, 1, 2, 1)

    def test_rationalizes_perfect_square(self):
        assert Surd.make(0, 1, 4, 1) == Fraction(2)
        assert Surd.make(3, 2, 9, 3) == Fraction(3)

    def test_gcd_reduction(self):
        s = Surd.make(2, 4, 3, 6)
        assert (s.x, s.y, s.d, s.z) == (1, 2, 3, 3)

    def test_negative_radicand_rejected(self):
        with pytest.raises(ValueError):
            Surd.make(0, 1, -2, 1)

    def test_negative_surd_part_rejected(self):
        with pytest.raises(ValueError):
            Surd.make(0, -1, 2, 1)


class TestOrdering:
    def test_cross_radicand(self):
        assert SQRT2 < SQRT5
        assert Surd.make(1, 1, 2, 1) > SQRT5  # 2.414... > 2.236...

    def test_vs_rational(self):
        assert SQRT2 > Fraction(7, 5)
        assert SQRT2 < Fraction(3, 2)
        # Boundary case: 3 < 2*sqrt(2) iff 9 < 8 - false.
        assert not (Fraction(3, 2) < SQRT2)

    def test_never_equal_to_rational(self):
        assert SQRT2 != Fraction(141421356, 100000000)
        assert not (SQRT2 == 1)

    def test_infinity_is_largest(self):
        assert cmp_density(INFINITY, SQRT5) == 1
        assert cmp_density(SQRT5, INFINITY) == -1
        assert cmp_density(INFINITY, INFINITY) == 0


class TestFloorTimes:
    def test_known_values(self):
        assert floor_times(SQRT2, 2) == 2
        assert floor_times(SQRT2, 6) == 8
        assert floor_times(Fraction(3, 2), 3) == 4

    def test_rational_exact(self):
        assert floor_times(Fraction(7, 3), 6) == 14
        assert times_is_integer(Fraction(7, 3), 6)
        assert not times_is_integer(Fraction(7, 3), 4)
        assert not times_is_integer(SQRT2, 4)


class TestText:
    def test_roundtrip(self):
        for text in ("inf", "3/2", "7", "(0+1*sqrt(2))/1", "(3+2*sqrt(5))/4"):
            assert format_density(parse_density(text)) == text

    def test_sqrt_sugar(self):
        assert parse_density("sqrt(2)") == SQRT2

    def test_malformed(self):
        with pytest.raises(ParseError):
            parse_density("sqrt(two)")


surds = st.builds(
    Surd.make,
    st.integers(min_value=0, max_value=20),
    st.integers(min_value=1, max_value=10),
    st.sampled_from([2, 3, 5, 6, 7, 10, 11, 13]),
    st.integers(min_value=1, max_value=12),
)
rationals = st.builds(Fraction, st.integers(min_value=1, max_value=120), st.integers(min_value=1, max_value=40))
values = st.one_of(surds, rationals)


@given(values, values)
def test_cmp_matches_decimal_oracle(a, b):
    assert cmp_density(a, b) == oracle_cmp(a, b)


@given(values, st.integers(min_value=1, max_value=500))
def test_floor_times_matches_decimal_oracle(r, b):
    scaled = scale_density(r, Fraction(b))
    expected = (
        decimal_floor(scaled.x, scaled.y, scaled.d, scaled.z, 0)
        if isinstance(scaled, Surd)
        else scaled.numerator // scaled.denominator
    )
    assert floor_times(r, b) == expected


@given(values, rationals)
def test_scale_density_order_preserving(r, q):
    scaled = scale_density(r, q)
    # r*q compared against any rational m matches r against m/q.
    m = Fraction(3, 2)
    assert cmp_density(scaled, m) == cmp_density(r, m / q)


@given(values, values, values)
def test_cmp_transitive(a, b, c):
    if cmp_density(a, b) <= 0 and cmp_density(b, c) <= 0:
        assert cmp_density(a, c) <= 0
