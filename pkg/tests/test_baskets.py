import random
from fractions import Fraction

import pytest

from oracles import five_merge_counts, prime_packing_reachable, random_basket
from wcikit import (
    BasketInconsistency,
    FormalBasket,
    Orbifold,
    c2_bound_ok,
    c2_load,
    canonical,
    canonical_unpacking,
    chi_int_sequence,
    chi_m,
    count_five_packings,
    descendants,
    format_basket,
    gt_volume_filter,
    high_index_count_bounds,
    initial_basket,
    initial_counts_from_chis,
    is_prime_packing,
    k3,
    merge_orbifolds,
    pack,
    parse_basket,
    pluri_growth_filter,
    rr_correction,
)


class TestOrbifold:
    def test_valid_points(self):
        assert Orbifold(1, 2).r == 2
        assert Orbifold(2, 5).b == 2
        Orbifold(0, 1)  # the trivial point is allowed

    @pytest.mark.parametrize("b,r", [
        (0, 3),    # b must be positive for r > 1
        (2, 4),    # not coprime
        (3, 5),    # b beyond r/2
        (1, 0),    # bad index
        (-1, 2),
    ])
    def test_invalid_points(self, b, r):
        with pytest.raises(ValueError):
            Orbifold(b, r)

    def test_ordering(self):
        pts = [Orbifold(2, 5), Orbifold(1, 2), Orbifold(1, 5)]
        assert canonical(pts) == (Orbifold(1, 2), Orbifold(1, 5), Orbifold(2, 5))


class TestBasketText:
    def test_format_groups_repeats(self):
        basket = canonical([Orbifold(1, 2), Orbifold(1, 2), Orbifold(2, 5)])
        text = format_basket(basket)
        assert parse_basket(text) == basket

    def test_parse_single_and_counted(self):
        assert parse_basket("(1,2)") == (Orbifold(1, 2),)
        assert parse_basket("2x(1,2); 1x(2,5)") == canonical(
            [Orbifold(1, 2), Orbifold(1, 2), Orbifold(2, 5)])

    def test_parse_empty(self):
        assert parse_basket("") == ()
        assert parse_basket("   ") == ()

    @pytest.mark.parametrize("text", ["(1;2)", "2(1,2)", "(2,4)", "x(1,2)"])
    def test_parse_errors(self, text):
        with pytest.raises(BasketInconsistency):
            parse_basket(text)


class TestCorrectionTerm:
    def test_known_values(self):
        assert rr_correction(Orbifold(1, 2), 2) == Fraction(1, 4)
        assert rr_correction(Orbifold(1, 3), 2) == Fraction(1, 3)
        assert rr_correction(Orbifold(1, 3), 3) == Fraction(2, 3)
        assert rr_correction(Orbifold(2, 5), 2) == Fraction(3, 5)
        assert rr_correction(Orbifold(2, 5), 3) == 1

    def test_m_one_is_zero(self):
        assert rr_correction(Orbifold(3, 7), 1) == 0

    def test_periodicity(self):
        rng = random.Random(7)
        for _ in range(50):
            r = rng.randint(2, 11)
            b = rng.choice([b for b in range(1, r // 2 + 1)
                            if Fraction(b, r).denominator == r])
            q = Orbifold(b, r)
            m = rng.randint(1, 10)
            period_sum = rr_correction(q, r + 1)
            assert rr_correction(q, m + r) - rr_correction(q, m) == period_sum


class TestVolumeAndChi:
    def test_k3_golden(self):
        assert k3(FormalBasket((), 1, -5)) == -4
        assert k3(FormalBasket((), -7, 33)) == 24
        assert k3(FormalBasket((Orbifold(1, 2),), -3, 11)) == Fraction(7, 2)
        assert k3(FormalBasket((Orbifold(1, 2),), 1, -4)) == Fraction(-5, 2)

    def test_chi_one_is_minus_chi(self):
        fb = FormalBasket((Orbifold(2, 7),), 4, -2)
        assert chi_m(fb, 1) == -4

    def test_chi_two_returns_chi2(self):
        rng = random.Random(13)
        for _ in range(100):
            fb = FormalBasket(canonical(random_basket(rng)),
                              rng.randint(-10, 40), rng.randint(-10, 40))
            assert chi_m(fb, 2) == fb.chi2

    def test_incremental_matches_formula(self):
        rng = random.Random(19)
        for _ in range(150):
            fb = FormalBasket(canonical(random_basket(rng)),
                              rng.randint(-10, 40), rng.randint(-10, 40))
            seq = chi_int_sequence(fb, 9)
            for m in range(1, 10):
                assert seq[m] == chi_m(fb, m)

    def test_chi_example(self):
        fb = FormalBasket((Orbifold(1, 2),), 1, 0)
        assert chi_int_sequence(fb, 3) == [0, -1, 0, 9]

    def test_chi_m_guard(self):
        with pytest.raises(ValueError):
            chi_m(FormalBasket((), 1, 0), 0)


class TestPacking:
    def test_merge_componentwise(self):
        assert merge_orbifolds(Orbifold(1, 2), Orbifold(1, 3)) == Orbifold(2, 5)
        assert merge_orbifolds(Orbifold(0, 1), Orbifold(1, 4)) == Orbifold(1, 5)

    def test_merge_rejects_non_points(self):
        # (1,2)+(1,2) = (2,4) is not coprime
        assert merge_orbifolds(Orbifold(1, 2), Orbifold(1, 2)) is None

    def test_prime_packing_determinant(self):
        assert is_prime_packing(Orbifold(1, 2), Orbifold(1, 3))
        assert not is_prime_packing(Orbifold(1, 2), Orbifold(1, 4))
        assert is_prime_packing(Orbifold(0, 1), Orbifold(1, 4))
        assert not is_prime_packing(Orbifold(0, 1), Orbifold(2, 5))

    def test_pack_positions(self):
        basket = canonical([Orbifold(1, 2), Orbifold(1, 3), Orbifold(1, 7)])
        packed = pack(basket, 0, 1)
        assert packed == canonical([Orbifold(2, 5), Orbifold(1, 7)])

    def test_pack_same_position_raises(self):
        basket = (Orbifold(1, 2), Orbifold(1, 3))
        with pytest.raises(ValueError):
            pack(basket, 1, 1)

    def test_pack_invalid_merge(self):
        basket = (Orbifold(1, 2), Orbifold(1, 2))
        assert pack(basket, 0, 1) is None


class TestUnpacking:
    def test_atomic_points(self):
        assert canonical_unpacking(Orbifold(1, 9)) == (Orbifold(1, 9),)
        assert canonical_unpacking(Orbifold(0, 1)) == (Orbifold(0, 1),)

    def test_split_example(self):
        assert canonical_unpacking(Orbifold(2, 5)) == canonical(
            [Orbifold(1, 2), Orbifold(1, 3)])
        assert canonical_unpacking(Orbifold(5, 12)) == canonical(
            [Orbifold(1, 2)] * 3 + [Orbifold(1, 3)] * 2)

    def test_parts_sum_to_whole(self):
        rng = random.Random(31)
        for _ in range(100):
            for q in random_basket(rng):
                parts = canonical_unpacking(q)
                assert sum(p.b for p in parts) == q.b
                assert sum(p.r for p in parts) == q.r

    def test_initial_basket_is_pointwise(self):
        basket = canonical([Orbifold(2, 5), Orbifold(1, 2)])
        assert initial_basket(basket) == canonical(
            [Orbifold(1, 2), Orbifold(1, 2), Orbifold(1, 3)])


class TestCountFormulas:
    def _chis(self, fb):
        return {m: chi_m(fb, m) for m in range(2, 7)}

    def test_counts_match_unpacking(self):
        rng = random.Random(43)
        for _ in range(250):
            fb = FormalBasket(canonical(random_basket(rng)),
                              rng.randint(-10, 40), rng.randint(-10, 40))
            counts = initial_counts_from_chis(fb.chi, self._chis(fb))
            b0 = initial_basket(fb.basket)
            assert counts.n12 == sum(1 for q in b0 if q.r == 2)
            assert counts.n13 == sum(1 for q in b0 if q.r == 3)
            assert counts.n14_plus == sum(1 for q in b0 if q.r >= 4)
            assert counts.sigma == len(b0)

    def test_sigma5_bracket(self):
        rng = random.Random(47)
        for _ in range(250):
            fb = FormalBasket(canonical(random_basket(rng)),
                              rng.randint(-10, 40), rng.randint(-10, 40))
            lo, hi = high_index_count_bounds(fb.chi, self._chis(fb))
            sigma5 = sum(1 for q in initial_basket(fb.basket) if q.r >= 5)
            assert lo <= sigma5 <= hi

    def test_five_merge_count_formula(self):
        rng = random.Random(53)
        for _ in range(250):
            fb = FormalBasket(canonical(random_basket(rng)),
                              rng.randint(-10, 40), rng.randint(-10, 40))
            sigma5 = sum(1 for q in initial_basket(fb.basket) if q.r >= 5)
            want = 0
            for q in fb.basket:
                counts = five_merge_counts(q)
                assert len(counts) == 1, q
                want += next(iter(counts))
            got = count_five_packings(fb.chi, self._chis(fb), sigma5)
            assert got == want

    def test_reachable_from_unpacking(self):
        rng = random.Random(59)
        for _ in range(250):
            for q in random_basket(rng):
                assert prime_packing_reachable(q), q


class TestCurvatureFilters:
    def test_c2_load_values(self):
        assert c2_load((Orbifold(1, 2),)) == Fraction(3, 2)
        assert c2_load(()) == 0

    def test_c2_bound(self):
        assert c2_bound_ok((Orbifold(1, 2),))
        big = tuple(Orbifold(1, 24) for _ in range(2))
        assert not c2_bound_ok(big)

    def test_c2_monotone_under_packing(self):
        rng = random.Random(61)
        done = 0
        while done < 150:
            basket = canonical(random_basket(rng, max_size=4))
            if len(basket) < 2:
                continue
            i, j = rng.sample(range(len(basket)), 2)
            packed = pack(basket, min(i, j), max(i, j))
            if packed is None:
                continue
            assert c2_load(packed) >= c2_load(basket)
            done += 1

    def test_k3_antitone_under_packing(self):
        rng = random.Random(67)
        done = 0
        while done < 150:
            basket = canonical(random_basket(rng, max_size=4))
            if len(basket) < 2:
                continue
            i, j = rng.sample(range(len(basket)), 2)
            packed = pack(basket, min(i, j), max(i, j))
            if packed is None:
                continue
            chi, chi2 = rng.randint(-10, 40), rng.randint(-10, 40)
            assert k3(FormalBasket(packed, chi, chi2)) <= \
                k3(FormalBasket(basket, chi, chi2))
            done += 1


class TestGrowthAndVolumeFilters:
    def test_pluri_growth_accepts_real_family(self):
        p = {1: 8, 2: 33, 3: 95, 4: 217, 5: 423, 6: 737}
        assert pluri_growth_filter(p, pg=8)

    def test_pluri_growth_rejects_stalled(self):
        p = {1: 2, 2: 3, 3: 3, 4: 3, 5: 3, 6: 3}
        assert not pluri_growth_filter(p, pg=2)

    def test_volume_filter_golden(self):
        fb = FormalBasket((), -7, 33)
        assert gt_volume_filter(fb, pg=8, p2=33, p3=95, p5=423, sigma5_lower=0)

    def test_volume_filter_rejects_nonpositive(self):
        fb = FormalBasket((), 1, -5)  # k3 = -4
        assert not gt_volume_filter(fb, pg=0, p2=0, p3=0, p5=1,
                                    sigma5_lower=0)


class TestDescendants:
    def test_golden_chain(self):
        src = FormalBasket((Orbifold(2, 5),), 1, 0)
        targets = {m: chi_m(src, m) for m in (3, 4, 5, 6)}
        b0 = canonical([Orbifold(1, 2), Orbifold(1, 3)])
        out = descendants(b0, 1, 0, targets)
        assert [fb.basket for fb in out] == [(Orbifold(2, 5),)]

    def test_includes_start_when_consistent(self):
        b0 = canonical([Orbifold(1, 2), Orbifold(1, 3)])
        src = FormalBasket(b0, 1, 0)
        targets = {m: chi_m(src, m) for m in (3, 4, 5, 6)}
        out = descendants(b0, 1, 0, targets)
        assert any(fb.basket == b0 for fb in out)

    def test_prune_cuts_root(self):
        b0 = canonical([Orbifold(1, 2), Orbifold(1, 3)])
        out = descendants(b0, 1, 0, {}, prune=lambda b: True)
        assert out == []

    def test_closure_is_complete_without_targets(self):
        # (1,2)+(1,4) and every merge onto (3,9) drop out on gcd grounds
        b0 = canonical([Orbifold(1, 2), Orbifold(1, 3), Orbifold(1, 4)])
        out = descendants(b0, 1, 0, {})
        assert {fb.basket for fb in out} == {
            b0,
            canonical([Orbifold(2, 5), Orbifold(1, 4)]),
            canonical([Orbifold(1, 2), Orbifold(2, 7)]),
        }
