import json
import time
import logging
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)


class WorkbenchError(Exception):
    """Base class for errors raised by the workbench"""


class PreconditionError(WorkbenchError, ValueError):
    """A hypothesis of an operation does not hold for the given input"""


class IdentityViolation(WorkbenchError, AssertionError):
    """An identity that must hold by theory failed (implementation bug guard)"""


class BudgetExceeded(WorkbenchError, RuntimeError):
    """An enumeration would exceed the configured ceiling"""

    def __init__(self, message, attempted):
        super().__init__(message)
        self.attempted = attempted


STATUSES = ('pass', 'fail', 'xfail', 'xpass', 'skip')


@dataclass
class VerificationReport:
    """
    Outcome of one verification check

    A report is 'xfail' when the check ran outside its hypothesis and the
    identity failed as predicted, 'xpass' when it unexpectedly held.
    """
    check: str
    statement: str
    params: dict
    status: str
    witness: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @classmethod
    def build(cls, check, statement, params, passed, witness, started,
              expected_failure=False):
        """
        Create a report and stamp its wall time

        Args:
            check: Check identifier
            statement: Plain-language description of the identity
            params: Parameters of this instance
            passed: Whether the identity held
            witness: JSON-serializable payload
            started: time.perf_counter() value taken when the check began
            expected_failure: The identity is predicted to fail here

        Returns:
            VerificationReport
        """
        if expected_failure:
            status = 'xpass' if passed else 'xfail'
        else:
            status = 'pass' if passed else 'fail'
        return cls(check, statement, dict(params), status, witness,
                   time.perf_counter() - started)

    @classmethod
    def skipped(cls, check, params, reason):
        return cls(check, '', dict(params), 'skip', {'reason': reason}, 0.0)

    @property
    def ok(self):
        """True unless the check failed or surprisingly passed"""
        return self.status in ('pass', 'xfail', 'skip')

    def require(self):
        """Raise IdentityViolation if this report failed"""
        if not self.ok:
            logger.error(f"Check {self.check} failed with params {self.params}")
            raise IdentityViolation(
                f"{self.check} failed for {self.params}: {self.witness}")
        return self

    def to_dict(self, timing=True):
        data = {
            'check': self.check,
            'statement': self.statement,
            'params': self.params,
            'status': self.status,
            'witness': self.witness,
        }
        if timing:
            data['elapsed'] = round(self.elapsed, 6)
        return data

    def to_json(self, timing=True):
        return json.dumps(self.to_dict(timing), sort_keys=True)

    def to_text(self):
        params = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        line = f"[{self.status.upper():5}] {self.check} ({params})"
        if self.status in ('fail', 'xpass', 'skip'):
            line += f"\n        {json.dumps(self.witness, sort_keys=True)}"
        return line
