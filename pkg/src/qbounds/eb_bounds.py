"""Finite-length Elias-Bassalygo rate bounds and the injection-rank bound.

Every bound returns a per-term breakdown whose values sum to the headline
number; the term labels are a stable contract consumed by the CLI.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import mpmath

from .errors import DomainError, PreconditionError
from .qcore import entropy, johnson_radius, _mpf

__all__ = [
    "BoundParams", "BoundResult", "RankBoundResult",
    "eb_rate_bound", "eb_rate_bound_continuous",
    "rank_bound", "verify_rank_monotonicity", "is_prime",
]


def is_prime(p) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class BoundParams:
    """One rate-bound instance: alphabet q, block length n, and exactly one
    of minimum distance d or relative distance delta.  Supplying d fixes
    delta = d/n as an exact rational."""

    q: int
    n: int
    d: int | None = None
    delta: float | Fraction | None = None

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 2:
            raise DomainError(f"q must be an integer >= 2, got {self.q!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"n must be an integer >= 1, got {self.n!r}")
        if (self.d is None) == (self.delta is None):
            raise DomainError("exactly one of d, delta must be supplied")
        if self.d is not None and not 1 <= self.d <= self.n:
            raise DomainError(f"d must satisfy 1 <= d <= n, got d={self.d!r}")
        if self.delta is not None and not 0 <= self.delta <= 1:
            raise DomainError(f"delta must lie in [0, 1], got {self.delta!r}")

    @property
    def delta_value(self):
        if self.d is not None:
            return Fraction(self.d, self.n)
        return self.delta


@dataclass(frozen=True)
class BoundResult:
    rate_upper: float
    e: int
    terms: tuple[tuple[str, float], ...]

    def term(self, label: str) -> float:
        for lab, val in self.terms:
            if lab == label:
                return val
        raise KeyError(label)


@dataclass(frozen=True)
class RankBoundResult:
    r_upper: float
    terms: tuple[tuple[str, float], ...]

    def term(self, label: str) -> float:
        for lab, val in self.terms:
            if lab == label:
                return val
        raise KeyError(label)


def _require_open_delta(q, delta):
    top = Fraction(q - 1, q)
    dv = delta if isinstance(delta, Rational) else delta
    cmp_top = top if isinstance(dv, Rational) else float(top)
    if not 0 < dv < cmp_top:
        raise DomainError(
            f"bound requires 0 < delta < (q-1)/q, got delta={delta}")


def _johnson_e(q, n, delta):
    """e = ceil(n*J_q(delta)) - 1, with a guarded ceiling near integers."""
    t = n * johnson_radius(q, float(delta))
    if abs(t - round(t)) < 1e-9:
        with mpmath.workdps(50):
            tm = n * johnson_radius(q, delta, digits=50)
            e = int(mpmath.ceil(tm)) - 1
    else:
        e = math.ceil(t) - 1
    return e


def eb_rate_bound(params: BoundParams) -> BoundResult:
    """Finite-length Elias-Bassalygo bound on the rate of any q-ary
    length-n code with minimum relative distance delta.

    With e = ceil(n*J_q(delta)) - 1:

        R <= 1 - H_q(e/n)
             + (1/2n) log_q(2 pi (e/n)(1 - e/n) n)
             + (1/n) log_q(q n^2 delta)
             + (1/(n ln q)) (1/(12n) + 1/(12e+1) + 1/(12(n-e)+1))
    """
    q, n = params.q, params.n
    delta = params.delta_value
    _require_open_delta(q, delta)
    e = _johnson_e(q, n, delta)
    if e < 1:
        raise PreconditionError(
            f"n > 1/J_q(delta) required (e = {e} < 1 at n = {n})")
    lq = math.log(q)
    en = e / n
    t_entropy = 1.0 - entropy(q, en)
    t_ball = math.log(2.0 * math.pi * en * (1.0 - en) * n) / (2.0 * n * lq)
    t_size = math.log(q * n * n * float(delta)) / (n * lq)
    t_resid = (1.0 / (12 * n) + 1.0 / (12 * e + 1)
               + 1.0 / (12 * (n - e) + 1)) / (n * lq)
    terms = (
        ("one_minus_entropy", t_entropy),
        ("half_log_ball_geometry", t_ball),
        ("log_qn2delta", t_size),
        ("stirling_residue", t_resid),
    )
    return BoundResult(rate_upper=sum(v for _, v in terms), e=e, terms=terms)


def eb_rate_bound_continuous(params: BoundParams) -> BoundResult:
    """Continuous relaxation of the finite-length bound (no ceilings):

        R <= 1 - H_q(J) + (1/n) log_q((q-1)(1-J)/J) + (1/2n) log_q(2 pi n J)
             + (1/n) log_q(q n^2 delta) + 1/(12 n^2 ln q) + 2/(13 n ln q)
             + (1/(2 n^2 ln q)) (1/(J - 1/n) + 1/(1 - J)),   J = J_q(delta).

    Always >= eb_rate_bound on the same parameters.
    """
    q, n = params.q, params.n
    delta = params.delta_value
    _require_open_delta(q, delta)
    J = johnson_radius(q, float(delta))
    if n * J <= 1.0:
        raise PreconditionError(f"n > 1/J_q(delta) required (n*J = {n * J:.6g})")
    e = _johnson_e(q, n, delta)
    lq = math.log(q)
    t_entropy = 1.0 - entropy(q, J)
    t_taylor = math.log((q - 1) * (1.0 - J) / J) / (n * lq)
    t_ball = math.log(2.0 * math.pi * n * J) / (2.0 * n * lq)
    t_size = math.log(q * n * n * float(delta)) / (n * lq)
    t_resid = (1.0 / (12.0 * n * n * lq) + 2.0 / (13.0 * n * lq)
               + (1.0 / (J - 1.0 / n) + 1.0 / (1.0 - J)) / (2.0 * n * n * lq))
    terms = (
        ("one_minus_entropy_at_J", t_entropy),
        ("taylor_first_order", t_taylor),
        ("half_log_2pinJ", t_ball),
        ("log_qn2delta", t_size),
        ("residues", t_resid),
    )
    return BoundResult(rate_upper=sum(v for _, v in terms), e=e, terms=terms)


def rank_bound(p: int, n: int, delta, digits=None) -> RankBoundResult:
    """Rank cap r(delta) for injections Z_p^r -> Z_p^n whose nonzero images
    all have Hamming weight >= delta*n:

        r <= (1 - H_p(J)) n + 2.5 log_p n + log_p((p-1)(1-J)/J)
             + 0.5 log_p(2 pi J) + log_p(p delta) + 2/(13 ln p)
             + (1/n)(1/(12 ln p) + 1/(2 ln p (1-J)))
             + 1/((2 ln p) J n - 2 ln p),            J = J_p(delta).
    """
    if not is_prime(p):
        raise DomainError(f"rank_bound requires a prime alphabet, got p={p!r}")
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    _require_open_delta(p, delta)
    if digits is not None:
        with mpmath.workdps(digits):
            J = johnson_radius(p, delta, digits=digits)
            if n * J <= 1:
                raise PreconditionError("n > 1/J_p(delta) required")
            lp = mpmath.log(p)
            dm = _mpf(delta)
            terms = (
                ("dominant_linear", (1 - entropy(p, J, digits=digits)) * n),
                ("log_p_n", mpmath.mpf("2.5") * mpmath.log(n) / lp),
                ("entropy_slope_at_J", mpmath.log((p - 1) * (1 - J) / J) / lp),
                ("half_log_2piJ", mpmath.log(2 * mpmath.pi * J) / (2 * lp)),
                ("log_p_pdelta", mpmath.log(p * dm) / lp),
                ("two_over_13lnp", 2 / (13 * lp)),
                ("inverse_n", (1 / (12 * lp) + 1 / (2 * lp * (1 - J))) / n),
                ("johnson_tail", 1 / (2 * lp * J * n - 2 * lp)),
            )
            return RankBoundResult(r_upper=sum(v for _, v in terms), terms=terms)
    J = johnson_radius(p, float(delta))
    if n * J <= 1.0:
        raise PreconditionError(f"n > 1/J_p(delta) required (n*J = {n * J:.6g})")
    lp = math.log(p)
    terms = (
        ("dominant_linear", (1.0 - entropy(p, J)) * n),
        ("log_p_n", 2.5 * math.log(n) / lp),
        ("entropy_slope_at_J", math.log((p - 1) * (1.0 - J) / J) / lp),
        ("half_log_2piJ", math.log(2.0 * math.pi * J) / (2.0 * lp)),
        ("log_p_pdelta", math.log(p * float(delta)) / lp),
        ("two_over_13lnp", 2.0 / (13.0 * lp)),
        ("inverse_n", (1.0 / (12.0 * lp) + 1.0 / (2.0 * lp * (1.0 - J))) / n),
        ("johnson_tail", 1.0 / (2.0 * lp * J * n - 2.0 * lp)),
    )
    return RankBoundResult(r_upper=sum(v for _, v in terms), terms=terms)


def verify_rank_monotonicity(p: int, n: int) -> bool:
    """True iff rank_bound(p, n, 1/3) < rank_bound(p, n, 1/4).

    Holds for every prime p >= 3 and n >= 16; n below 16 is rejected
    because the underlying derivative estimate needs it.
    """
    if not is_prime(p) or p < 3:
        raise DomainError(f"p must be a prime >= 3, got {p!r}")
    if not isinstance(n, int) or n < 16:
        raise PreconditionError(f"monotonicity statement requires n >= 16, got {n!r}")
    third = rank_bound(p, n, Fraction(1, 3)).r_upper
    quarter = rank_bound(p, n, Fraction(1, 4)).r_upper
    return third < quarter
