import enum
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

import pandas as pd


class Outcome(enum.Enum):
    PASS = 'pass'
    FAIL = 'fail'
    UNKNOWN = 'unknown'
    NOT_RUN = 'not-run'

    def __str__(self):
        return self.value


def combine(outcomes):
    """fail dominates unknown, unknown dominates pass."""
    outcomes = list(outcomes)
    if any(o is Outcome.FAIL for o in outcomes):
        return Outcome.FAIL
    if any(o is not Outcome.PASS for o in outcomes):
        return Outcome.UNKNOWN
    return Outcome.PASS


@dataclass(frozen=True)
class CheckResult:
    name: str
    outcome: Outcome
    detail: str = ''

    @property
    def passed(self):
        return self.outcome is Outcome.PASS


@dataclass(frozen=True)
class ExactOrder:
    value: int

    def as_dict(self):
        return {'exact': self.value}


@dataclass(frozen=True)
class LowerBoundOnly:
    bound: int

    def as_dict(self):
        return {'lower_bound': self.bound}


EmbeddingEvidence = Union[ExactOrder, LowerBoundOnly]


@dataclass
class ValidationReport:
    """
    Ordered per-check outcomes plus the derived security quantities. A report
    is only `safe` if every single check passed.
    """
    checks: Dict[str, CheckResult] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    t: Optional[int] = None
    rho_log2: Optional[float] = None
    embedding: Optional[EmbeddingEvidence] = None
    cm_discriminant: Optional[int] = None

    twist_order: Optional[int] = None
    twist_trace: Optional[int] = None
    twist_rho_log2: Optional[float] = None
    twist_cofactor: Optional[int] = None
    twist_embedding: Optional[EmbeddingEvidence] = None
    joint_rho_log2: Optional[float] = None


    def add(self, name, outcome, detail=''):
        self.checks[name] = CheckResult(name, outcome, detail)
        return outcome


    def __getitem__(self, name):
        return self.checks[name]


    def __contains__(self, name):
        return name in self.checks


    def merge(self, other):
        """Takes over the checks, notes and every derived field `other` has set."""
        self.checks.update(other.checks)
        self.notes.extend(other.notes)
        for name in self.__dataclass_fields__:
            if name in ('checks', 'notes'):
                continue
            value = getattr(other, name)
            if value is not None:
                setattr(self, name, value)
        return self


    @property
    def safe(self):
        return bool(self.checks) and all(c.passed for c in self.checks.values())


    @property
    def verdict(self):
        return combine(c.outcome for c in self.checks.values())


    def failures(self, outcome=Outcome.FAIL):
        return [c for c in self.checks.values() if c.outcome is outcome]


    def as_dict(self):
        d = {
            'verdict': str(self.verdict),
            'checks': [{'name': c.name, 'outcome': str(c.outcome), 'detail': c.detail} for c in self.checks.values()],
            'notes': list(self.notes),
        }
        for name in self.__dataclass_fields__:
            if name in ('checks', 'notes'):
                continue
            value = getattr(self, name)
            if hasattr(value, 'as_dict'):
                value = value.as_dict()
            d[name] = value
        return d


    def to_frame(self):
        return pd.DataFrame(
            [(c.name, str(c.outcome), c.detail) for c in self.checks.values()],
            columns=['check', 'outcome', 'detail'],
        ).set_index('check')
