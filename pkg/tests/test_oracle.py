"""Tests for the exhaustive oracle: metric axioms, exact extremal code
sizes, lemma checks, and the witness serialization format."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from qbounds import (DomainError, PreconditionError, ResourceBudgetError,
                     eb_soundness_sweep, hamming_ball_volume,
                     hamming_distance, hamming_weight, johnson_ball_check,
                     johnson_suite, make_code, max_code_size, min_distance,
                     parse_code, pigeonhole_suite, pigeonhole_witness,
                     random_code, serialize_code)


class TestWordOps:
    def test_weight(self):
        assert hamming_weight((0, 0, 0)) == 0
        assert hamming_weight((1, 2, 1, 2)) == 4
        assert hamming_weight((1, 0, 2, 0)) == 2

    def test_distance_basics(self):
        assert hamming_distance((0, 1, 2), (0, 1, 2)) == 0
        assert hamming_distance((0, 0, 0, 0), (1, 1, 1, 1)) == 4

    def test_distance_mismatch(self):
        with pytest.raises(DomainError):
            hamming_distance((0, 1), (0, 1, 2))

    def test_metric_axioms_random(self):
        rng = random.Random(11)
        for _ in range(300):
            q = rng.choice([2, 3, 5, 7])
            n = rng.randint(1, 10)
            a, b, c = (tuple(rng.randrange(q) for _ in range(n))
                       for _ in range(3))
            assert hamming_distance(a, b) >= 0
            assert (hamming_distance(a, b) == 0) == (a == b)
            assert hamming_distance(a, b) == hamming_distance(b, a)
            assert (hamming_distance(a, c)
                    <= hamming_distance(a, b) + hamming_distance(b, c))


class TestCode:
    def test_normalization(self):
        code = make_code(3, 2, [(1, 0), (0, 1), (1, 0)])
        assert code.size == 2
        assert code.words == ((0, 1), (1, 0))

    def test_word_validation(self):
        with pytest.raises(DomainError):
            make_code(3, 2, [(0, 3)])
        with pytest.raises(DomainError):
            make_code(3, 2, [(0, 1, 2)])

    def test_min_distance_repetition(self):
        for q, n in ((2, 5), (3, 4)):
            code = make_code(q, n, [(s,) * n for s in range(q)])
            assert min_distance(code) == n

    def test_min_distance_full_space(self):
        code = make_code(3, 2, itertools.product(range(3), repeat=2))
        assert min_distance(code) == 1

    def test_min_distance_caches(self):
        code = make_code(2, 4, [(0, 0, 0, 0), (1, 1, 1, 0)])
        assert code.cached_min_distance is None
        assert min_distance(code) == 3
        assert code.cached_min_distance == 3

    def test_min_distance_undefined(self):
        with pytest.raises(DomainError):
            min_distance(make_code(2, 3, [(0, 0, 0)]))

    def test_translation_invariance(self):
        rng = random.Random(12)
        for _ in range(30):
            q = rng.choice([2, 3, 5])
            n = rng.randint(2, 6)
            code = random_code(q, n, rng.randint(2, min(q ** n, 20)),
                               seed=rng.randrange(2 ** 30))
            t = tuple(rng.randrange(q) for _ in range(n))
            shifted = make_code(q, n, [tuple((s + u) % q for s, u in zip(w, t))
                                       for w in code.words])
            assert min_distance(code) == min_distance(shifted)


class TestMaxCodeSize:
    def test_whole_space_at_d1(self):
        size, witness = max_code_size(3, 4, 1)
        assert size == 81
        assert witness.size == 81

    def test_repetition_at_d_equals_n(self):
        for q, n in ((2, 5), (3, 4), (5, 3)):
            size, witness = max_code_size(q, n, n)
            assert size == q
            assert min_distance(witness) == n

    def test_ternary_hamming_instance(self):
        size, witness = max_code_size(3, 4, 3)
        assert size == 9
        assert witness.size == 9
        assert min_distance(witness) == 3
        assert (0, 0, 0, 0) in witness.words

    def test_known_binary_values(self):
        # independent cross-checks: A_2(4,3) = 2, A_2(5,3) = 4, A_2(6,3) = 8
        assert max_code_size(2, 4, 3)[0] == 2
        assert max_code_size(2, 5, 3)[0] == 4
        assert max_code_size(2, 6, 3)[0] == 8

    def test_monotone_in_d(self):
        for q, n in ((2, 6), (3, 4)):
            sizes = [max_code_size(q, n, d)[0] for d in range(1, n + 1)]
            assert sizes == sorted(sizes, reverse=True)

    def test_sphere_packing_cap(self):
        for q, n, d in ((2, 6, 3), (3, 4, 3), (2, 7, 3), (3, 5, 3)):
            size, _ = max_code_size(q, n, d)
            ball = hamming_ball_volume(q, n, (d - 1) // 2)
            assert size * ball <= q ** n

    def test_deterministic_witness(self):
        first = max_code_size(3, 4, 3)[1]
        second = max_code_size(3, 4, 3)[1]
        assert first.words == second.words

    def test_space_budget(self):
        with pytest.raises(ResourceBudgetError):
            max_code_size(5, 10, 3)

    def test_time_budget(self):
        with pytest.raises(ResourceBudgetError):
            max_code_size(2, 12, 3, time_limit=0.01)

    def test_candidate_cap(self):
        with pytest.raises(ResourceBudgetError):
            max_code_size(2, 12, 2, max_candidates=100)


class TestPigeonhole:
    def test_full_radius(self):
        code = random_code(3, 4, 10, seed=1)
        _, count = pigeonhole_witness(code, 4)
        assert count == code.size

    def test_zero_radius(self):
        code = random_code(3, 4, 10, seed=2)
        y, count = pigeonhole_witness(code, 0)
        assert count == 1
        assert y in code.words

    def test_meets_averaging_bound(self):
        rng = random.Random(13)
        for _ in range(50):
            code = random_code(3, 5, rng.randint(1, 40),
                               seed=rng.randrange(2 ** 30))
            e = rng.randint(0, 5)
            _, count = pigeonhole_witness(code, e)
            bound = Fraction(code.size * hamming_ball_volume(3, 5, e), 3 ** 5)
            assert Fraction(count) >= bound

    def test_suite(self):
        rep = pigeonhole_suite(trials=60, seed=5)
        assert rep.passed
        assert rep.instances_checked == 60


class TestJohnsonCheck:
    def test_decoding_radius_passes(self):
        rng = random.Random(14)
        for _ in range(20):
            code = random_code(3, 5, rng.randint(2, 25),
                               seed=rng.randrange(2 ** 30))
            d = min_distance(code)
            from qbounds import johnson_radius
            e = math.ceil(5 * johnson_radius(3, Fraction(d, 5))) - 1
            if e < 0:
                continue
            assert johnson_ball_check(code, e).passed

    def test_singleton_trivially_passes(self):
        code = make_code(3, 4, [(0, 1, 2, 0)])
        assert johnson_ball_check(code, 2).passed

    def test_precondition(self):
        code = make_code(2, 6, [(0,) * 6, (1, 1, 1, 0, 0, 0)])
        with pytest.raises(PreconditionError):
            johnson_ball_check(code, 5)

    def test_suite(self):
        rep = johnson_suite(trials=60, seed=6)
        assert rep.passed
        assert rep.instances_checked == 60


class TestRandomCode:
    def test_forced_full_space(self):
        assert random_code(3, 4, 81, seed=9).size == 81

    def test_singleton(self):
        assert random_code(3, 4, 1, seed=9).size == 1

    def test_deterministic(self):
        assert random_code(3, 4, 10, seed=42).words == \
            random_code(3, 4, 10, seed=42).words

    def test_size_cap(self):
        with pytest.raises(DomainError):
            random_code(2, 3, 9, seed=0)


class TestSoundnessSweep:
    def test_small_sweep_passes(self):
        rep = eb_soundness_sweep(q_set=(2, 3), n_max=5, seed=0,
                                 time_limit=5.0)
        assert rep.passed
        assert rep.instances_checked > 0
        assert "skipped_precondition" in rep.payload


class TestSerialization:
    def test_round_trip(self):
        code = random_code(3, 5, 12, seed=3)
        min_distance(code)
        text = serialize_code(code)
        back = parse_code(text)
        assert back.words == code.words
        assert serialize_code(back) == text

    def test_header_format(self):
        size, witness = max_code_size(3, 4, 3)
        header = serialize_code(witness).splitlines()[0]
        assert header == "3 4 9 3"

    def test_singleton_header_d0(self):
        text = serialize_code(make_code(2, 3, [(1, 0, 1)]))
        assert text == "2 3 1 0\n101\n"

    def test_bad_header(self):
        with pytest.raises(DomainError):
            parse_code("nonsense\n")

    def test_distance_mismatch_detected(self):
        with pytest.raises(DomainError):
            parse_code("2 3 2 3\n000\n100\n")
