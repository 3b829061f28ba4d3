import random

import pytest

from oracles import poincare_oracle, random_presentation
from wcikit import (
    FormalBasket,
    Orbifold,
    SeriesParseError,
    TruncatedSeries,
    max_weight_ok,
    parse_candidate,
    parse_series,
    poincare_series,
    recover_weights_degrees,
    recovery_bound,
    series_from_basket,
    series_from_candidate,
)


class TestTruncatedSeries:
    def test_one(self):
        s = TruncatedSeries.one(4)
        assert s.coeffs == (1, 0, 0, 0, 0)
        assert s.bound == 4
        assert s.is_one()

    def test_mul_div_inverse(self):
        rng = random.Random(3)
        for _ in range(100):
            coeffs = tuple([1] + [rng.randint(-9, 9) for _ in range(12)])
            s = TruncatedSeries(coeffs)
            k = rng.randint(1, 6)
            assert s.mul_factor(k).div_factor(k).coeffs == coeffs
            assert s.div_factor(k).mul_factor(k).coeffs == coeffs

    def test_factor_guards(self):
        s = TruncatedSeries.one(3)
        with pytest.raises(ValueError):
            s.mul_factor(0)
        with pytest.raises(ValueError):
            s.div_factor(-1)

    def test_text_parse_round_trip(self):
        s = TruncatedSeries((1, 4, -2, 0, 7))
        assert parse_series(s.text()).coeffs == s.coeffs

    @pytest.mark.parametrize("text", [
        "",                  # nothing
        "0 1\n2 5",          # skipped index
        "1 5",               # does not start at 0
        "0 1\n1 two",        # junk coefficient
        "0 1 2",             # three fields
    ])
    def test_parse_errors(self, text):
        with pytest.raises(SeriesParseError):
            parse_series(text)


class TestPoincareSeries:
    def test_projective_space(self):
        s = poincare_series([1, 1, 1, 1, 1], [], 5)
        assert s.coeffs == (1, 5, 15, 35, 70, 126)

    def test_matches_monomial_count_oracle_fixed(self):
        for weights, degrees, bound in [
            ([1, 1, 1, 1, 1], [5], 10),
            ([1, 1, 2, 2, 3, 3], [6, 6], 12),
            ([1, 1, 1, 2, 5], [10], 12),
            ([1, 2, 3], [4], 10),
            ([2, 3, 5], [], 12),
        ]:
            got = poincare_series(weights, degrees, bound)
            assert list(got.coeffs) == poincare_oracle(weights, degrees, bound)

    def test_matches_monomial_count_oracle_random(self):
        rng = random.Random(17)
        for _ in range(40):
            n_w = rng.randint(1, 5)
            weights = sorted(rng.randint(1, 6) for _ in range(n_w))
            degrees = sorted(rng.randint(2, 9)
                             for _ in range(rng.randint(0, 2)))
            bound = rng.randint(0, 14)
            got = poincare_series(weights, degrees, bound)
            assert list(got.coeffs) == poincare_oracle(weights, degrees, bound)

    def test_quintic_sections(self):
        c = parse_candidate("1,1,1,1,1 / 5")
        assert series_from_candidate(c, 5)[5] == 125

    def test_intersection_codim4_coefficient(self):
        c = parse_candidate("1,1,1,1,1,1,1,1 / 2,2,2,3")
        s = series_from_candidate(c, 6)
        assert s[2] == 33
        assert s.coeffs == (1, 8, 33, 95, 217, 423, 737)

    def test_low_series_of_degree_ten_family(self):
        c = parse_candidate("1,1,1,2,5 / 10")
        assert series_from_candidate(c, 5).coeffs == (1, 3, 7, 13, 22, 35)


class TestRecovery:
    def test_golden_round_trips(self):
        for text in ["1,1,1,1,1 / 5", "1,1,2,2,3,3 / 6,6", "1,1,1,2,5 / 10"]:
            c = parse_candidate(text)
            top = 2 * max(c.weights + c.degrees)
            rec = recover_weights_degrees(series_from_candidate(c, top))
            assert rec.residual_clean
            assert rec.weights == c.weights
            assert rec.degrees == c.degrees

    def test_constant_series(self):
        rec = recover_weights_degrees(TruncatedSeries.one(8))
        assert rec.weights == () and rec.degrees == ()
        assert rec.residual_clean

    def test_truncated_too_short_is_not_certified(self):
        c = parse_candidate("1,1,2,2,3,3 / 6,6")
        rec = recover_weights_degrees(series_from_candidate(c, 4))
        assert not rec.residual_clean

    def test_max_entries_abort(self):
        s = poincare_series([1] * 9, [], 8)
        rec = recover_weights_degrees(s, max_entries=5)
        assert not rec.residual_clean
        assert len(rec.weights) + len(rec.degrees) <= 5

    def test_requires_unit_constant(self):
        with pytest.raises(ValueError):
            recover_weights_degrees(TruncatedSeries((2, 0, 0)))

    def test_round_trip_random(self):
        rng = random.Random(29)
        for _ in range(300):
            weights, degrees = random_presentation(rng)
            top = 2 * max(weights + degrees)
            s = poincare_series(weights, degrees, top)
            rec = recover_weights_degrees(s)
            assert rec.residual_clean
            assert list(rec.weights) == weights
            assert list(rec.degrees) == degrees


class TestRecoveryBound:
    def test_values_per_amplitude(self):
        assert recovery_bound(FormalBasket((), 1, -5), -1) == 31512
        assert recovery_bound(FormalBasket((), -7, 33), 1) == 86116

    def test_large_index_dominates(self):
        fb = FormalBasket((Orbifold(1, 40000),), 1, 0)
        assert recovery_bound(fb, -1) == 80000
        assert recovery_bound(fb, 1) == 86116

    def test_amplitude_guard(self):
        with pytest.raises(ValueError):
            recovery_bound(FormalBasket((), 1, 0), 0)


class TestMaxWeight:
    def test_unit_weight_always_fine(self):
        assert max_weight_ok(1, 1, (5,))

    def test_within_basket_index(self):
        assert max_weight_ok(5, 5, (7,))
        assert not max_weight_ok(6, 5, (7,))

    def test_divides_degree(self):
        assert max_weight_ok(6, 5, (12, 7))


class TestSeriesFromBasket:
    def test_anti_plurigenera_of_smooth_quartic(self):
        fb = FormalBasket((), 1, -5)
        s = series_from_basket(fb, -1, 4)
        assert s.coeffs == (1, 5, 15, 35, 69)

    def test_plurigenera_of_smooth_intersection(self):
        fb = FormalBasket((), -7, 33)
        s = series_from_basket(fb, 1, 6)
        assert s.coeffs == (1, 8, 33, 95, 217, 423, 737)

    def test_orbifold_families_match_monomial_counts(self):
        # one half point; both amplitudes realized by explicit families
        fb = FormalBasket((Orbifold(1, 2),), -3, 11)
        c = parse_candidate("1,1,1,1,2 / 7")
        assert series_from_basket(fb, 1, 20).coeffs == \
            series_from_candidate(c, 20).coeffs

        fb = FormalBasket((Orbifold(1, 2),), 1, -4)
        c = parse_candidate("1,1,1,1,2 / 5")
        assert series_from_basket(fb, -1, 20).coeffs == \
            series_from_candidate(c, 20).coeffs

    def test_amplitude_guard(self):
        with pytest.raises(ValueError):
            series_from_basket(FormalBasket((), 1, 0), 0, 5)

    def test_zero_bound(self):
        assert series_from_basket(FormalBasket((), 1, -5), -1, 0).coeffs == (1,)
