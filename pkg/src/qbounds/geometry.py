"""Rank thresholds for Z_p^r symmetry: the constants f1..f5(p), the
threshold F(n, p), the baseline classification rank, and the exhaustive
scans that re-derive the published c/n0 and N tables.

All scans run a vectorized double-precision pass and escalate individual
comparisons to high precision only when the margin is below the policy's
decision margin; results are identical to a full high-precision scan.
"""

import importlib.resources
import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import mpmath
import numpy as np

from .eb_bounds import is_prime, rank_bound
from .errors import (DomainError, PreconditionError, SearchExhaustedError)
from .precision import DEFAULT_POLICY, PrecisionPolicy, strict_sign
from .qcore import entropy, johnson_radius
from .report import VerificationReport

__all__ = [
    "PrimeConstants", "Classification", "ThresholdReport", "CodimReport",
    "DerivedCN0", "DerivedN", "paper_tables", "constants", "threshold_F",
    "threshold_F_array", "baseline_rank", "derive_c_n0", "derive_N",
    "f1_monotonicity_scan", "envelope_check", "codim_guarantees",
    "classify_rank", "primes_up_to",
]

SUPPORTED_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29)


def primes_up_to(limit: int) -> list[int]:
    return [p for p in range(2, limit + 1) if is_prime(p)]


def paper_tables() -> dict:
    """The published c(p)/n0(p)/N(p) tables (provenance: paper-constant)."""
    raw = json.loads(importlib.resources.files("qbounds.data")
                     .joinpath("paper_constants.json").read_text())
    return {
        "provenance": raw["provenance"],
        "primes": tuple(raw["primes"]),
        "c": {int(p): Fraction(*v) for p, v in raw["c"].items()},
        "n0": {int(p): v for p, v in raw["n0"].items()},
        "N": {int(p): v for p, v in raw["N"].items()},
    }


_PAPER = paper_tables()


@dataclass(frozen=True)
class PrimeConstants:
    """The f1..f5 bundle for one prime, optionally with the published
    rationals attached."""

    p: int
    f1: float
    f2: float
    f3: float
    f4: float
    f5: float
    c: Fraction | None = None
    n0: int | None = None
    N: int | None = None


def _check_odd_prime(p):
    if not is_prime(p) or p < 3:
        raise DomainError(f"expected a prime >= 3, got {p!r}")


def constants(p: int, digits=None, attach_paper: bool = False) -> PrimeConstants:
    """The five threshold constants of a prime:

        f1 = (1/2)(1 - H_p(J)),  J = J_p(1/4)
        f2 = log_p(p(p-1)(1-J) sqrt(2 pi J) / (4J)) + 2/(13 ln p) - 2.5 log_p 2
        f3 = 1/(6 ln p) + 1/(ln p (1-J))
        f4 = 1/ln p
        f5 = J
    """
    _check_odd_prime(p)
    quarter = Fraction(1, 4)
    if digits is not None:
        with mpmath.workdps(digits):
            J = johnson_radius(p, quarter, digits=digits)
            lp = mpmath.log(p)
            f1 = (1 - entropy(p, J, digits=digits)) / 2
            f2 = (mpmath.log(p * (p - 1) * (1 - J) * mpmath.sqrt(2 * mpmath.pi * J)
                             / (4 * J)) / lp
                  + 2 / (13 * lp) - mpmath.mpf("2.5") * mpmath.log(2) / lp)
            f3 = 1 / (6 * lp) + 1 / (lp * (1 - J))
            vals = (f1, f2, f3, 1 / lp, J)
    else:
        J = johnson_radius(p, quarter)
        lp = math.log(p)
        f1 = 0.5 * (1.0 - entropy(p, J))
        f2 = (math.log(p * (p - 1) * (1.0 - J) * math.sqrt(2.0 * math.pi * J)
                       / (4.0 * J)) / lp
              + 2.0 / (13.0 * lp) - 2.5 * math.log(2.0) / lp)
        f3 = 1.0 / (6.0 * lp) + 1.0 / (lp * (1.0 - J))
        vals = (f1, f2, f3, 1.0 / lp, J)
    extra = {}
    if attach_paper and p in _PAPER["c"]:
        extra = {"c": _PAPER["c"][p], "n0": _PAPER["n0"][p], "N": _PAPER["N"][p]}
    return PrimeConstants(p, *vals, **extra)


def _check_F_domain(p, n, f5):
    if n < 16:
        raise PreconditionError(f"F(n, p) requires n >= 16, got n={n}")
    if f5 * (n - 1) <= 2:
        raise PreconditionError(
            f"F(n, p) requires f5(p)(n-1) > 2 (p={p}, n={n})")


def threshold_F(p: int, n: int, digits=None):
    """The rank threshold F(n, p) = f1 n + 2.5 log_p n + f2 + f3/(n-1)
    + f4/(f5 (n-1) - 2)."""
    _check_odd_prime(p)
    k = constants(p, digits=digits)
    _check_F_domain(p, n, float(k.f5))
    if digits is not None:
        with mpmath.workdps(digits):
            return (k.f1 * n + mpmath.mpf("2.5") * mpmath.log(n) / mpmath.log(p)
                    + k.f2 + k.f3 / (n - 1) + k.f4 / (k.f5 * (n - 1) - 2))
    return (k.f1 * n + 2.5 * math.log(n) / math.log(p) + k.f2
            + k.f3 / (n - 1) + k.f4 / (k.f5 * (n - 1) - 2))


def threshold_F_array(p: int, ns: np.ndarray) -> np.ndarray:
    """Vectorized double-precision F(n, p) over an integer array of n."""
    _check_odd_prime(p)
    k = constants(p)
    ns = np.asarray(ns, dtype=np.float64)
    if ns.size and (ns.min() < 16 or k.f5 * (ns.min() - 1) <= 2):
        raise PreconditionError("F(n, p) requires n >= 16 and f5(n-1) > 2")
    return (k.f1 * ns + 2.5 * np.log(ns) / math.log(p) + k.f2
            + k.f3 / (ns - 1.0) + k.f4 / (k.f5 * (ns - 1.0) - 2.0))


def baseline_rank(n: int) -> int:
    """Smallest symmetry rank already classified by the prior theorems:
    floor(3n/8)+2 for n = 2, 4 mod 8, floor(3n/8)+1 otherwise (n >= 13),
    and the maximal rank floor(n/2) for 5 <= n <= 12."""
    if not isinstance(n, int) or n < 5:
        raise DomainError(f"baseline_rank requires an integer n >= 5, got {n!r}")
    if n <= 12:
        return n // 2
    return 3 * n // 8 + (2 if n % 8 in (2, 4) else 1)


@dataclass(frozen=True)
class DerivedCN0:
    p: int
    c: Fraction
    n0: int
    cap: int
    last_violation: int
    decreasing_at_cap: bool
    escalations: int


def _scan_start(p: int) -> int:
    f5 = constants(p).f5
    return max(16, int(math.floor(2.0 / f5)) + 2)


def derive_c_n0(p: int, cap: int = 400_000,
                policy: PrecisionPolicy = DEFAULT_POLICY) -> DerivedCN0:
    """Re-derive n0(p): the least n0 with F(n, p) <= c(p) n for every
    n in [n0, cap], taking c(p) from the published table.

    Every pointwise comparison whose double-precision margin is below the
    policy's decision margin is re-decided at escalation precision.  The
    certificate field ``decreasing_at_cap`` records that F(n,p) - c(p) n
    is still decreasing at the cap, so the property persists beyond it.
    """
    _check_odd_prime(p)
    if p not in _PAPER["c"]:
        raise DomainError(f"no published c(p) for p={p}")
    c = _PAPER["c"][p]
    if cap < _PAPER["n0"][p] + 10:
        raise PreconditionError(f"cap={cap} below published n0(p) + margin")
    start = _scan_start(p)
    ns = np.arange(start, cap + 1, dtype=np.int64)
    diff = threshold_F_array(p, ns) - float(c) * ns
    escalations = 0
    signs = np.sign(diff).astype(np.int8)  # +1 where F > c n (violation)
    for i in np.nonzero(np.abs(diff) < policy.decision_margin)[0]:
        n_i = int(ns[i])
        s, esc = strict_sign(
            float(diff[i]),
            lambda n_i=n_i: threshold_F(p, n_i, digits=policy.escalation_digits)
            - mpmath.mpf(c.numerator) / c.denominator * n_i,
            policy)
        signs[i] = s
        escalations += esc
    viol = np.nonzero(signs > 0)[0]
    if viol.size == 0:
        raise SearchExhaustedError(
            f"no crossing of F(n,{p}) = c n found above n = {start}")
    last = int(ns[viol[-1]])
    if last >= cap:
        raise SearchExhaustedError(
            f"F(n,{p}) > c n still holds at the cap n = {cap}")
    g_cap = threshold_F(p, cap) - float(c) * cap
    g_next = threshold_F(p, cap + 1) - float(c) * (cap + 1)
    return DerivedCN0(p=p, c=c, n0=last + 1, cap=cap, last_violation=last,
                      decreasing_at_cap=bool(g_next < g_cap),
                      escalations=escalations)


@dataclass(frozen=True)
class DerivedN:
    p: int
    N: int
    first_failure: int
    escalations: int


def derive_N(p: int, cap: int = 200_000,
             policy: PrecisionPolicy = DEFAULT_POLICY) -> DerivedN:
    """Re-derive N(p): the largest N with F(n, p) > baseline_rank(n) for
    all n in [16, N]; also reports the first failing n (= N + 1)."""
    _check_odd_prime(p)
    if p in _PAPER["N"] and cap < _PAPER["N"][p] + 10:
        raise PreconditionError(f"cap={cap} below published N(p) + margin")
    ns = np.arange(16, cap + 1, dtype=np.int64)
    base = 3 * ns // 8 + np.where((ns % 8 == 2) | (ns % 8 == 4), 2, 1)
    diff = threshold_F_array(p, ns) - base.astype(np.float64)
    escalations = 0
    signs = np.sign(diff).astype(np.int8)  # +1 where the anchor claim holds
    for i in np.nonzero(np.abs(diff) < policy.decision_margin)[0]:
        n_i = int(ns[i])
        s, esc = strict_sign(
            float(diff[i]),
            lambda n_i=n_i: threshold_F(p, n_i, digits=policy.escalation_digits)
            - baseline_rank(n_i),
            policy)
        signs[i] = s
        escalations += esc
    fails = np.nonzero(signs <= 0)[0]
    if fails.size == 0:
        raise SearchExhaustedError(
            f"F(n,{p}) > baseline still holds at the cap n = {cap}")
    first = int(ns[fails[0]])
    if first == 16:
        raise DomainError(f"anchor property already fails at n = 16 for p = {p}")
    return DerivedN(p=p, N=first - 1, first_failure=first, escalations=escalations)


def f1_monotonicity_scan(p_max: int,
                         policy: PrecisionPolicy = DEFAULT_POLICY) -> VerificationReport:
    """Verify that f1(p) strictly increases over all primes in [3, p_max]
    and that f1(29) < 3/8 < f1(31).  Requires p_max >= 31."""
    if p_max < 31:
        raise PreconditionError(f"p_max must be >= 31, got {p_max}")
    primes = [p for p in primes_up_to(p_max) if p >= 3]
    f1 = {p: constants(p).f1 for p in primes}

    def hi_f1(p):
        return (1 - entropy(p, johnson_radius(p, Fraction(1, 4),
                                              digits=policy.escalation_digits),
                            digits=policy.escalation_digits)) / 2

    escalations = 0
    checked = 0
    for a, b in zip(primes, primes[1:]):
        checked += 1
        s, esc = strict_sign(f1[b] - f1[a],
                             lambda a=a, b=b: hi_f1(b) - hi_f1(a), policy)
        escalations += esc
        if s <= 0:
            return VerificationReport(
                suite="f1-monotonicity", instances_checked=checked, passed=False,
                counterexample={"p_low": a, "p_high": b,
                                "f1_low": f1[a], "f1_high": f1[b]})
    for p, want_below in ((29, True), (31, False)):
        checked += 1
        s, esc = strict_sign(0.375 - f1[p],
                             lambda p=p: mpmath.mpf(3) / 8 - hi_f1(p), policy)
        escalations += esc
        if (s > 0) != want_below:
            return VerificationReport(
                suite="f1-monotonicity", instances_checked=checked, passed=False,
                counterexample={"p": p, "f1": f1[p], "three_eighths": 0.375})
    return VerificationReport(
        suite="f1-monotonicity", instances_checked=checked, passed=True,
        counterexample=None,
        payload={"f1_29": f1[29], "f1_31": f1[31], "escalations": escalations})


def envelope_check(p: int, n_lo: int, n_hi: int,
                   policy: PrecisionPolicy = DEFAULT_POLICY) -> VerificationReport:
    """Find the minimal n* in [n_lo, n_hi] from which
    n/4 < F(n, p) <= sqrt(3) n / 4 holds for every n up to n_hi."""
    _check_odd_prime(p)
    if not 16 <= n_lo < n_hi:
        raise DomainError(f"need 16 <= n_lo < n_hi, got [{n_lo}, {n_hi}]")
    ns = np.arange(n_lo, n_hi + 1, dtype=np.int64)
    F = threshold_F_array(p, ns)
    ok = (ns / 4.0 < F) & (F <= math.sqrt(3.0) * ns / 4.0)
    bad = np.nonzero(~ok)[0]
    if bad.size and int(ns[bad[-1]]) == n_hi:
        return VerificationReport(
            suite="envelope", instances_checked=int(ns.size), passed=False,
            counterexample={"p": p, "n": int(ns[bad[-1]]),
                            "F": float(F[bad[-1]])})
    n_star = n_lo if bad.size == 0 else int(ns[bad[-1]]) + 1
    return VerificationReport(
        suite="envelope", instances_checked=int(ns.size), passed=True,
        counterexample=None, payload={"p": p, "n_star": n_star})


@dataclass(frozen=True)
class CodimReport:
    p: int
    n: int
    r: int
    applicable: bool
    F_value: float
    tau1_codim_cap: Fraction  # (n+3)/4
    tau2_codim_cap: Fraction  # (n+1)/3
    rank_bound_quarter: float
    rank_bound_third: float
    exceeds_quarter: bool
    exceeds_third: bool


def codim_guarantees(p: int, n: int, r: int) -> CodimReport:
    """Codimension caps for the two small-codimension symmetries forced by
    a rank above the threshold: codim <= (n+3)/4 and codim <= (n+1)/3.

    The contradiction driving both caps is the rank bound evaluated at
    m = floor(n/2) with delta = 1/4 and 1/3; a weight-w image vector
    corresponds to a fixed-point set of codimension 2w.
    """
    _check_odd_prime(p)
    if p > 29:
        raise DomainError(f"codim guarantees cover primes <= 29, got {p}")
    if not isinstance(n, int) or n < 16:
        raise DomainError(f"n must be an integer >= 16, got {n!r}")
    if not isinstance(r, int) or r < 1:
        raise DomainError(f"r must be a positive integer, got {r!r}")
    F = threshold_F(p, n)
    m = n // 2
    rb14 = rank_bound(p, m, Fraction(1, 4)).r_upper
    rb13 = rank_bound(p, m, Fraction(1, 3)).r_upper
    return CodimReport(
        p=p, n=n, r=r, applicable=bool(r > F), F_value=F,
        tau1_codim_cap=Fraction(n + 3, 4), tau2_codim_cap=Fraction(n + 1, 3),
        rank_bound_quarter=rb14, rank_bound_third=rb13,
        exceeds_quarter=bool(r > rb14), exceeds_third=bool(r > rb13))


class Classification(Enum):
    IMPOSSIBLE = "IMPOSSIBLE"
    MAX_RANK_ONLY = "MAX_RANK_ONLY"
    BASELINE = "BASELINE"
    MAIN_THEOREM = "MAIN_THEOREM"
    NO_CONCLUSION = "NO_CONCLUSION"


@dataclass(frozen=True)
class ThresholdReport:
    p: int
    n: int
    r: int
    F_value: float | None
    baseline: int
    max_rank: int
    classification: Classification


def classify_rank(p: int, n: int, r: int) -> ThresholdReport:
    """Deterministic classification of a rank r against all three
    thresholds, strongest applicable conclusion first:

    - r > floor(n/2): impossible (exceeds the maximal symmetry rank);
    - r = floor(n/2): maximal-rank classification;
    - r >= baseline_rank(n): prior classification theorems apply;
    - r > F(n, p): the rank-threshold classification applies;
    - otherwise no conclusion.
    """
    _check_odd_prime(p)
    if not isinstance(n, int) or n < 5:
        raise DomainError(f"n must be an integer >= 5, got {n!r}")
    if not isinstance(r, int) or r < 0:
        raise DomainError(f"r must be a nonnegative integer, got {r!r}")
    max_rank = n // 2
    base = baseline_rank(n)
    F = None
    if n >= 16 and p <= 29:
        try:
            F = threshold_F(p, n)
        except PreconditionError:
            F = None
    if r > max_rank:
        cls = Classification.IMPOSSIBLE
    elif r == max_rank:
        cls = Classification.MAX_RANK_ONLY
    elif r >= base:
        cls = Classification.BASELINE
    elif F is not None and r > F:
        cls = Classification.MAIN_THEOREM
    else:
        cls = Classification.NO_CONCLUSION
    return ThresholdReport(p=p, n=n, r=r, F_value=F, baseline=base,
                           max_rank=max_rank, classification=cls)
