"""Tests for the rate and rank bounds."""

import math
from fractions import Fraction

import numpy as np
import pytest

from qbounds import (BoundParams, DomainError, PreconditionError,
                     eb_rate_bound, eb_rate_bound_continuous, entropy,
                     johnson_radius, max_code_size, rank_bound,
                     verify_rank_monotonicity)


class TestBoundParams:
    def test_exactly_one_of_d_delta(self):
        with pytest.raises(DomainError):
            BoundParams(q=3, n=10)
        with pytest.raises(DomainError):
            BoundParams(q=3, n=10, d=3, delta=0.3)

    def test_d_gives_exact_rational_delta(self):
        p = BoundParams(q=3, n=100, d=25)
        assert p.delta_value == Fraction(1, 4)

    def test_d_range(self):
        with pytest.raises(DomainError):
            BoundParams(q=3, n=10, d=11)
        with pytest.raises(DomainError):
            BoundParams(q=3, n=10, d=0)


class TestFiniteForm:
    def test_johnson_decoding_radius(self):
        # J_3(1/4) = 0.13962..., so e = ceil(13.962) - 1 = 13
        assert eb_rate_bound(BoundParams(q=3, n=100, d=25)).e == 13

    def test_sound_against_exhaustive_extremal_codes(self):
        # delta must stay below (q-1)/q for the bound to apply
        for q, n, d in [(2, 6, 2), (2, 7, 3), (3, 5, 2), (3, 4, 2)]:
            size, _ = max_code_size(q, n, d)
            rate = math.log(size) / (n * math.log(q))
            assert rate <= eb_rate_bound(BoundParams(q=q, n=n, d=d)).rate_upper

    def test_correction_terms_nonnegative(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            q = int(rng.integers(2, 12))
            n = int(rng.integers(20, 500))
            delta = float(rng.uniform(0.05, (q - 1) / q - 0.02))
            res = eb_rate_bound(BoundParams(q=q, n=n, delta=delta))
            base = 1.0 - entropy(q, res.e / n)
            assert res.rate_upper >= base - 1e-12
            for label, value in res.terms[1:]:
                assert value >= 0, label

    def test_term_sum_consistency(self):
        res = eb_rate_bound(BoundParams(q=5, n=250, d=60))
        assert res.rate_upper == pytest.approx(
            sum(v for _, v in res.terms), rel=1e-12)

    def test_e_consistency(self):
        rng = np.random.default_rng(4)
        for _ in range(200):
            q = int(rng.integers(2, 10))
            n = int(rng.integers(30, 2000))
            delta = float(rng.uniform(0.03, (q - 1) / q - 0.02))
            res = eb_rate_bound(BoundParams(q=q, n=n, delta=delta))
            J = johnson_radius(q, delta)
            assert res.e / n < J <= (res.e + 1) / n + 1e-12

    def test_preconditions(self):
        with pytest.raises(DomainError):
            eb_rate_bound(BoundParams(q=3, n=9, d=6))  # delta = 2/3
        with pytest.raises(PreconditionError):
            eb_rate_bound(BoundParams(q=3, n=4, d=1))  # e = 0


class TestContinuousForm:
    def test_relaxation_ordering_examples(self):
        p = BoundParams(q=3, n=100, d=25)
        assert (eb_rate_bound_continuous(p).rate_upper
                >= eb_rate_bound(p).rate_upper)

    def test_gap_at_n1000(self):
        p = BoundParams(q=5, n=1000, delta=0.25)
        gap = (eb_rate_bound_continuous(p).rate_upper
               - eb_rate_bound(p).rate_upper)
        assert 0 <= gap < 0.02

    def test_limit_at_large_n(self):
        q, delta, n = 3, 0.25, 10 ** 6
        res = eb_rate_bound_continuous(BoundParams(q=q, n=n, delta=delta))
        limit = 1.0 - entropy(q, johnson_radius(q, delta))
        # correction terms decay like log(n)/n (the log_q(q n^2 delta)/n
        # term dominates), so bound the gap by a multiple of that
        assert 0 <= res.rate_upper - limit <= 5.0 * math.log(n) / n

    def test_relaxation_ordering_grid(self):
        rng = np.random.default_rng(5)
        for _ in range(500):
            q = int(rng.integers(3, 30))
            n = int(rng.integers(16, 10 ** 5))
            delta = float(rng.uniform(0.01, (q - 1) / q - 0.01))
            p = BoundParams(q=q, n=n, delta=delta)
            if n * johnson_radius(q, delta) <= 1.0:
                continue
            assert (eb_rate_bound_continuous(p).rate_upper
                    >= eb_rate_bound(p).rate_upper - 1e-12)

    def test_term_sum_consistency(self):
        res = eb_rate_bound_continuous(BoundParams(q=7, n=300, d=50))
        assert res.rate_upper == pytest.approx(
            sum(v for _, v in res.terms), rel=1e-12)


class TestRankBound:
    def test_third_below_quarter(self):
        r13 = rank_bound(3, 16, Fraction(1, 3)).r_upper
        r14 = rank_bound(3, 16, Fraction(1, 4)).r_upper
        assert r13 < r14

    def test_dominant_term(self):
        res = rank_bound(3, 100, Fraction(1, 4))
        expected = (1 - entropy(3, johnson_radius(3, 0.25))) * 100
        assert res.term("dominant_linear") == pytest.approx(expected, rel=1e-12)

    def test_term_sum_consistency(self):
        res = rank_bound(29, 5000, Fraction(1, 4))
        assert res.r_upper == pytest.approx(
            sum(v for _, v in res.terms), rel=1e-12)

    def test_nonprime_rejected(self):
        with pytest.raises(DomainError):
            rank_bound(9, 100, 0.25)

    def test_strictly_decreasing_between_quarter_and_third(self):
        for p in (3, 29):
            for n in (16, 100, 10 ** 4):
                deltas = np.linspace(0.25, 1 / 3, 100)
                vals = [rank_bound(p, n, float(d)).r_upper for d in deltas]
                assert (np.diff(vals) < 0).all()

    def test_small_exhaustive_injection_check(self):
        # every ternary length-4 code containing 0 with min weight >= 2
        # realizes a "rank" log_3 |C| below the bound at delta = 1/2
        size, witness = max_code_size(3, 4, 2)
        r_realized = math.log(size) / math.log(3)
        assert r_realized <= rank_bound(3, 4, Fraction(1, 2)).r_upper


class TestRankMonotonicity:
    def test_anchor_case(self):
        assert verify_rank_monotonicity(3, 16)

    def test_large_prime_large_n(self):
        assert verify_rank_monotonicity(29, 10 ** 5)

    def test_hypothesis_boundary(self):
        with pytest.raises(PreconditionError):
            verify_rank_monotonicity(3, 15)

    def test_prime_check(self):
        with pytest.raises(DomainError):
            verify_rank_monotonicity(4, 20)
