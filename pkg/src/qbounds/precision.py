"""Working-precision policy and guarded strict comparisons.

Everything in qbounds evaluates in double precision by default.  Scans that
decide strict inequalities between nearly-equal quantities (the table
re-derivations) escalate individual comparisons to software high precision
whenever the double-precision margin falls below ``decision_margin``.
"""

from dataclasses import dataclass
from typing import Callable

import mpmath

from .errors import AmbiguousComparisonError, DomainError


@dataclass(frozen=True)
class PrecisionPolicy:
    """Precision contract for real-valued evaluation.

    working_digits
        Decimal digits of the default working precision (binary floating
        point gives ~17).
    escalation_digits
        Digits used when a comparison is re-run in software precision.
    decision_margin
        Minimum |difference| at which a strict comparison is accepted
        without escalation.
    """

    working_digits: int = 17
    escalation_digits: int = 50
    decision_margin: float = 1e-9

    def __post_init__(self):
        if self.working_digits < 15:
            raise DomainError("working_digits must be >= 15")
        if self.escalation_digits < self.working_digits:
            raise DomainError("escalation_digits must be >= working_digits")
        if not self.decision_margin > 0:
            raise DomainError("decision_margin must be positive")


DEFAULT_POLICY = PrecisionPolicy()


def strict_sign(diff: float,
                hires: Callable[[], "mpmath.mpf"],
                policy: PrecisionPolicy = DEFAULT_POLICY) -> tuple[int, bool]:
    """Sign of a difference, escalating to high precision near zero.

    ``hires`` recomputes the difference at ``policy.escalation_digits``
    digits; it is only invoked when |diff| < decision_margin.  Returns
    ``(sign, escalated)`` with sign in {-1, +1}.  Raises
    AmbiguousComparisonError if the high-precision difference is still
    inside the margin.
    """
    if abs(diff) >= policy.decision_margin:
        return (1 if diff > 0 else -1), False
    with mpmath.workdps(policy.escalation_digits):
        hd = hires()
        if abs(hd) < mpmath.mpf(policy.decision_margin) ** 2:
            raise AmbiguousComparisonError(
                f"comparison unresolved at {policy.escalation_digits} digits "
                f"(|diff| = {mpmath.nstr(abs(hd), 5)})")
        return (1 if hd > 0 else -1), True
