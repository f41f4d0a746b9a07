"""Special functions and combinatorial estimates for q-ary codes.

Exact integer combinatorics (Hamming-ball volumes, binomials) never touch
floating point; real-valued functions evaluate in doubles by default and in
``digits``-digit software precision when asked.
"""

import math
from fractions import Fraction
from numbers import Rational

import mpmath

from .errors import DomainError

__all__ = [
    "entropy", "entropy_d1", "entropy_d2",
    "johnson_radius", "johnson_radius_d1",
    "hamming_ball_volume", "stirling_bounds", "log_binomial_estimate",
]


def _check_q(q):
    if not isinstance(q, int) or q < 2:
        raise DomainError(f"alphabet size must be an integer >= 2, got {q!r}")


def _mpf(x):
    """Lossless conversion to mpf at the current working precision."""
    if isinstance(x, Rational) and not isinstance(x, int):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def entropy(q, x, digits=None):
    """q-ary entropy H_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x).

    Uses the 0*log 0 = 0 convention at the endpoints.  Domain: 0 <= x <= 1.
    """
    _check_q(q)
    if x < 0 or x > 1:
        raise DomainError(f"entropy argument must be in [0, 1], got {x}")
    if digits is not None:
        with mpmath.workdps(digits):
            xm = _mpf(x)
            if xm == 0:
                return mpmath.mpf(0)
            if xm == 1:
                return mpmath.log(q - 1) / mpmath.log(q)
            lq = mpmath.log(q)
            return (xm * mpmath.log(q - 1) - xm * mpmath.log(xm)
                    - (1 - xm) * mpmath.log(1 - xm)) / lq
    x = float(x)
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return math.log(q - 1) / math.log(q)
    lq = math.log(q)
    return (x * math.log(q - 1) - x * math.log(x)
            - (1.0 - x) * math.log(1.0 - x)) / lq


def entropy_d1(q, x, digits=None):
    """First derivative H_q'(x) = log_q((q-1)(1-x)/x), for 0 < x < 1."""
    _check_q(q)
    if not 0 < x < 1:
        raise DomainError("entropy_d1 requires 0 < x < 1 (unbounded at endpoints)")
    if digits is not None:
        with mpmath.workdps(digits):
            xm = _mpf(x)
            return mpmath.log((q - 1) * (1 - xm) / xm) / mpmath.log(q)
    x = float(x)
    return math.log((q - 1) * (1.0 - x) / x) / math.log(q)


def entropy_d2(q, x, digits=None):
    """Second derivative H_q''(x) = -(1/ln q)(1/x + 1/(1-x)); always < 0."""
    _check_q(q)
    if not 0 < x < 1:
        raise DomainError("entropy_d2 requires 0 < x < 1")
    if digits is not None:
        with mpmath.workdps(digits):
            xm = _mpf(x)
            return -(1 / xm + 1 / (1 - xm)) / mpmath.log(q)
    x = float(x)
    return -(1.0 / x + 1.0 / (1.0 - x)) / math.log(q)


def _check_delta(q, delta, *, strict_upper=False):
    top = Fraction(q - 1, q)
    dv = Fraction(delta) if isinstance(delta, Rational) else delta
    cmp_top = top if isinstance(dv, Fraction) else float(top)
    if dv < 0 or dv > cmp_top or (strict_upper and dv == cmp_top):
        bound = "<" if strict_upper else "<="
        raise DomainError(
            f"relative distance must satisfy 0 <= delta {bound} (q-1)/q, got {delta}")


def johnson_radius(q, delta, digits=None):
    """Johnson radius J_q(delta) = (1 - 1/q)(1 - sqrt(1 - q*delta/(q-1)))."""
    _check_q(q)
    _check_delta(q, delta)
    if digits is not None:
        with mpmath.workdps(digits):
            dm = _mpf(delta)
            rad = 1 - mpmath.mpf(q) * dm / (q - 1)
            if rad < 0:
                rad = mpmath.mpf(0)
            return (1 - mpmath.mpf(1) / q) * (1 - mpmath.sqrt(rad))
    d = float(delta)
    rad = 1.0 - q * d / (q - 1)
    if rad < 0.0:  # rounding at the upper endpoint
        rad = 0.0
    return (1.0 - 1.0 / q) * (1.0 - math.sqrt(rad))


def johnson_radius_d1(q, delta, digits=None):
    """Derivative J_q'(delta) = (1/2)(1 - q*delta/(q-1))^(-1/2); >= 1/2."""
    _check_q(q)
    _check_delta(q, delta, strict_upper=True)
    if digits is not None:
        with mpmath.workdps(digits):
            dm = _mpf(delta)
            return mpmath.mpf("0.5") / mpmath.sqrt(1 - mpmath.mpf(q) * dm / (q - 1))
    d = float(delta)
    return 0.5 / math.sqrt(1.0 - q * d / (q - 1))


def hamming_ball_volume(q, n, e):
    """Exact number of words within Hamming distance e of a fixed word:
    sum_{i=0}^{e} C(n, i) (q-1)^i, in arbitrary-size integers."""
    _check_q(q)
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"length must be a nonnegative integer, got {n!r}")
    if not isinstance(e, int) or e < 0 or e > n:
        raise DomainError(f"radius must satisfy 0 <= e <= n, got e={e!r}")
    return sum(math.comb(n, i) * (q - 1) ** i for i in range(e + 1))


def stirling_bounds(k, digits=None):
    """Two-sided Robbins bracket for ln k!, k >= 1.

    ln k! = k ln k - k + (1/2) ln(2 pi k) + theta_k with
    1/(12k+1) < theta_k < 1/(12k), so the returned (lower, upper) pair
    always straddles the exact value.
    """
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"stirling_bounds requires an integer k >= 1, got {k!r}")
    if digits is not None:
        with mpmath.workdps(digits):
            km = mpmath.mpf(k)
            s = km * mpmath.log(km) - km + mpmath.log(2 * mpmath.pi * km) / 2
            return s + mpmath.mpf(1) / (12 * k + 1), s + mpmath.mpf(1) / (12 * k)
    s = k * math.log(k) - k + 0.5 * math.log(2.0 * math.pi * k)
    return s + 1.0 / (12 * k + 1), s + 1.0 / (12 * k)


def log_binomial_estimate(q, n, e, digits=None):
    """Stirling estimate of log_q C(n, e) with its residue cap.

    Returns ``(value, delta_cap)`` where the exact log-binomial lies in
    ``[value - delta_cap, value + delta_cap]`` and
    ``delta_cap = (1/ln q)(1/(12n) + 1/(12e) + 1/(12(n-e)))``.
    Requires 1 <= e <= n-1 (the estimate is undefined at the endpoints).
    """
    _check_q(q)
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"length must be an integer >= 2, got {n!r}")
    if not isinstance(e, int) or not 1 <= e <= n - 1:
        raise DomainError(f"log_binomial_estimate requires 1 <= e <= n-1, got e={e!r}")
    if digits is not None:
        with mpmath.workdps(digits):
            lq = mpmath.log(q)
            nm, em = mpmath.mpf(n), mpmath.mpf(e)
            value = (nm * mpmath.log(nm) - em * mpmath.log(em)
                     - (nm - em) * mpmath.log(nm - em)
                     + mpmath.log(nm / (2 * mpmath.pi * em * (nm - em))) / 2) / lq
            cap = (mpmath.mpf(1) / (12 * n) + mpmath.mpf(1) / (12 * e)
                   + mpmath.mpf(1) / (12 * (n - e))) / lq
            return value, cap
    lq = math.log(q)
    value = (n * math.log(n) - e * math.log(e) - (n - e) * math.log(n - e)
             + 0.5 * math.log(n / (2.0 * math.pi * e * (n - e)))) / lq
    cap = (1.0 / (12 * n) + 1.0 / (12 * e) + 1.0 / (12 * (n - e))) / lq
    return value, cap
