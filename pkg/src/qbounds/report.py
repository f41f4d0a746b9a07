"""Pass/fail records for verification suites."""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one oracle or scan suite.

    A failed report always carries the violating instance, fully
    serialized, in ``counterexample``.
    """

    suite: str
    instances_checked: int
    passed: bool
    counterexample: dict | None = None
    payload: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.passed and self.counterexample is None:
            raise ValueError("failed report must carry a counterexample")
