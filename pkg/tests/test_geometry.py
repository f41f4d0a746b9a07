"""Tests for the threshold layer: constants, F(n, p), table derivation,
and rank classification."""

from fractions import Fraction

import math

import numpy as np
import pytest

from qbounds import (Classification, DomainError, PreconditionError,
                     baseline_rank, classify_rank, codim_guarantees,
                     constants, derive_N, derive_c_n0, entropy,
                     envelope_check, f1_monotonicity_scan, johnson_radius,
                     paper_tables, threshold_F, threshold_F_array)
from qbounds.geometry import SUPPORTED_PRIMES, primes_up_to
from qbounds.precision import PrecisionPolicy


class TestConstants:
    def test_f1_definitional_identity(self):
        for p in primes_up_to(101):
            if p < 3:
                continue
            k = constants(p)
            expected = 0.5 * (1 - entropy(p, johnson_radius(p, Fraction(1, 4))))
            assert k.f1 == pytest.approx(expected, rel=1e-12)

    def test_f4_f5_identities(self):
        for p in (3, 13, 29):
            k = constants(p)
            assert k.f4 == pytest.approx(1 / math.log(p), rel=1e-14)
            assert k.f5 == pytest.approx(johnson_radius(p, 0.25), rel=1e-14)

    def test_crossover_at_31(self):
        assert constants(29).f1 < 3 / 8 < constants(31).f1

    def test_f5_small_for_p3(self):
        assert constants(3).f5 <= 0.14

    def test_ranges(self):
        for p in primes_up_to(101):
            if p < 3:
                continue
            k = constants(p)
            assert 0 < k.f1 < 0.5
            assert 0 < k.f5 <= 0.25

    def test_attach_paper(self):
        k = constants(3, attach_paper=True)
        assert k.c == Fraction(9, 32)
        assert k.n0 == 1908
        assert k.N == 91

    def test_rejects_composite(self):
        with pytest.raises(DomainError):
            constants(9)
        with pytest.raises(DomainError):
            constants(2)


class TestThresholdF:
    def test_above_quarter_n_at_92(self):
        assert 92 / 4 < threshold_F(3, 92)

    def test_linear_cap_at_2000(self):
        assert threshold_F(3, 2000) <= (9 / 32) * 2000

    def test_exceeds_baseline_at_16(self):
        assert threshold_F(3, 16) > baseline_rank(16) == 7

    def test_array_matches_scalar(self):
        ns = np.arange(16, 200)
        arr = threshold_F_array(3, ns)
        for i in (0, 50, 150):
            assert arr[i] == pytest.approx(threshold_F(3, int(ns[i])), rel=1e-14)

    def test_high_precision_agrees(self):
        hp = threshold_F(3, 1908, digits=50)
        assert float(hp) == pytest.approx(threshold_F(3, 1908), rel=1e-13)

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            threshold_F(3, 15)


class TestBaselineRank:
    def test_formula_cases(self):
        assert baseline_rank(16) == 7    # 16 = 0 mod 8
        assert baseline_rank(18) == 8    # 18 = 2 mod 8
        assert baseline_rank(50) == 20   # 50 = 2 mod 8 -> floor(150/8)+2
        assert baseline_rank(12) == 6    # maximal-rank regime

    def test_mod_8_split(self):
        for n in range(13, 200):
            expected = 3 * n // 8 + (2 if n % 8 in (2, 4) else 1)
            assert baseline_rank(n) == expected

    def test_domain(self):
        with pytest.raises(DomainError):
            baseline_rank(4)


class TestTableDerivation:
    def test_n0_for_p3(self):
        res = derive_c_n0(3)
        assert res.n0 == 1908
        assert res.c == Fraction(9, 32)
        assert res.decreasing_at_cap
        # minimality witness at the boundary
        assert threshold_F(3, 1907) > (9 / 32) * 1907
        assert res.last_violation == 1907

    def test_n0_for_p19(self):
        assert derive_c_n0(19).n0 == 2661

    def test_N_for_p3(self):
        res = derive_N(3)
        assert res.N == 91
        assert res.first_failure == 92

    def test_N_for_p23(self):
        assert derive_N(23).N == 1395

    def test_cap_too_small(self):
        with pytest.raises(PreconditionError):
            derive_c_n0(29, cap=1000)

    def test_forced_escalation_changes_nothing(self):
        # widening the decision margin routes the tightest comparison
        # (|F - baseline| ~ 1.5e-3 on this range) through the
        # high-precision path; the derived value must not change
        eager = PrecisionPolicy(decision_margin=0.03)
        result = derive_N(3, cap=120, policy=eager)
        assert result.N == 91
        assert result.escalations >= 1


class TestScans:
    def test_f1_scan_passes(self):
        rep = f1_monotonicity_scan(101)
        assert rep.passed
        assert rep.payload["f1_29"] < 0.375 < rep.payload["f1_31"]

    def test_f1_scan_composite_pmax(self):
        # non-prime p_max: still scans primes only
        assert f1_monotonicity_scan(100).passed

    def test_f1_scan_requires_31(self):
        with pytest.raises(PreconditionError):
            f1_monotonicity_scan(29)

    def test_envelope_p3(self):
        rep = envelope_check(3, 16, 10 ** 5)
        assert rep.passed
        assert rep.payload["n_star"] <= 92

    def test_envelope_all_primes_at_cap(self):
        for p in SUPPORTED_PRIMES:
            F = threshold_F(p, 10 ** 5)
            assert 10 ** 5 / 4 < F <= math.sqrt(3) * 10 ** 5 / 4

    def test_f1_below_c_for_all_primes(self):
        paper = paper_tables()
        for p in SUPPORTED_PRIMES:
            assert constants(p).f1 < float(paper["c"][p])


class TestCodimGuarantees:
    def test_caps_and_applicability(self):
        rep = codim_guarantees(3, 2000, 600)
        assert rep.applicable
        assert rep.tau1_codim_cap == Fraction(2003, 4)
        assert rep.tau2_codim_cap == Fraction(2001, 3)
        assert rep.exceeds_quarter and rep.exceeds_third

    def test_strict_boundary(self):
        F = threshold_F(3, 2000)
        r = math.ceil(F)
        assert codim_guarantees(3, 2000, r).applicable == (r > F)
        assert not codim_guarantees(3, 2000, math.floor(F)).applicable

    def test_even_codim_feasible(self):
        for n in range(16, 400):
            w_max = (n + 3) // 8
            assert w_max >= 1  # a weight-w vector realizes codim 2w <= (n+3)/4

    def test_domain(self):
        with pytest.raises(DomainError):
            codim_guarantees(31, 2000, 600)
        with pytest.raises(DomainError):
            codim_guarantees(3, 15, 5)


class TestClassifyRank:
    def test_spec_examples(self):
        assert classify_rank(3, 20, 10).classification is Classification.MAX_RANK_ONLY
        assert classify_rank(3, 50, 20).classification is Classification.BASELINE
        assert classify_rank(3, 2000, 600).classification is Classification.MAIN_THEOREM
        assert classify_rank(3, 50, 3).classification is Classification.NO_CONCLUSION
        assert classify_rank(3, 20, 11).classification is Classification.IMPOSSIBLE

    def test_monotone_in_r(self):
        strength = {
            Classification.NO_CONCLUSION: 0,
            Classification.MAIN_THEOREM: 1,
            Classification.BASELINE: 2,
            Classification.MAX_RANK_ONLY: 3,
            Classification.IMPOSSIBLE: 4,
        }
        for p, n in ((3, 20), (3, 50), (3, 2000), (29, 300)):
            levels = [strength[classify_rank(p, n, r).classification]
                      for r in range(0, n // 2 + 2)]
            assert levels == sorted(levels)

    def test_report_fields(self):
        rep = classify_rank(3, 2000, 600)
        assert rep.baseline == baseline_rank(2000)
        assert rep.max_rank == 1000
        assert rep.F_value == pytest.approx(threshold_F(3, 2000))

    def test_small_n_has_no_F(self):
        rep = classify_rank(3, 10, 5)
        assert rep.F_value is None
        assert rep.classification is Classification.MAX_RANK_ONLY
