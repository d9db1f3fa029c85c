"""
Trusted-security criteria:

  T1  the seed comes from a source the user declared trustworthy, and every
      parameter draw is covered by the seed transcript
  T2  p, a and b show none of the screened "pre-studied" structures
  T3  repeated generation yields curves of nearly the same strength
"""
import dataclasses
import multiprocessing
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Tuple

import sympy
from absl import logging

from .errors import GenerationFailure, InvalidArgument
from .numeric import naf_weight
from .utils import pool_map
from .validate.base import CheckResult, Outcome


REQUIRED_PURPOSES = ('prime', 'coefficient-a', 'coefficient-b', 'base-point')
DEFAULT_ALLOWED_SOURCES = ('/dev/random', '/dev/urandom', 'os.urandom', 'shake256-seed')
DEFAULT_MIN_SEED_BITS = 256
DEFAULT_NAF_LIMIT = 6
DEFAULT_T3_TOLERANCE = 0.5

EXPANSION_BITS = 1024
_CONSTANTS = {
    'pi': sympy.pi,
    'e': sympy.E,
    'sqrt2': sympy.sqrt(2),
    'cos1': sympy.cos(1),
    'golden_ratio': sympy.GoldenRatio,
}


@dataclass(frozen=True)
class TranscriptEntry:
    purpose: str
    bits_consumed: int
    commitment: str


    def serialize(self):
        return f'{self.purpose}:{self.bits_consumed}:{self.commitment}'


    @classmethod
    def parse(cls, text):
        try:
            purpose, bits, commitment = text.strip().split(':')
            return cls(purpose, int(bits), commitment)
        except ValueError:
            raise InvalidArgument(f'malformed transcript entry {text!r}')


@dataclass(frozen=True)
class SeedRecord:
    source_id: str
    seed_commitment: str
    seed_length_bits: int
    acquired_at: Optional[str] = None
    transcript: Tuple[TranscriptEntry, ...] = ()


    @property
    def purposes(self):
        return {e.purpose for e in self.transcript}


    @property
    def missing_purposes(self):
        return [p for p in REQUIRED_PURPOSES if p not in self.purposes]


    @property
    def complete(self):
        return not self.missing_purposes


    def as_dict(self):
        d = dataclasses.asdict(self)
        d['transcript'] = [e.serialize() for e in self.transcript]
        return d


@dataclass(frozen=True)
class ConstantExpansion:
    """floor(c * 2^width) for a well-known constant c."""
    name: str
    value: int
    width: int


    def candidates(self, m):
        """The constant read as an m-bit integer: leading bits, and fraction bits."""
        out = []
        if self.value.bit_length() >= m:
            out.append(self.value >> (self.value.bit_length() - m))
        frac = self.value & ((1 << self.width) - 1)
        if self.width >= m:
            out.append(frac >> (self.width - m))
        return out


@lru_cache(maxsize=None)
def default_constants():
    digits = EXPANSION_BITS * 31 // 100 + 30
    return tuple(
        ConstantExpansion(name, int(sympy.N(c * sympy.Integer(2)**EXPANSION_BITS, digits)), EXPANSION_BITS)
        for name, c in _CONSTANTS.items()
    )


def load_constants(path):
    """Blacklist file: `name hex-expansion` per line, '#' starts a comment."""
    constants = []
    with open(path) as f:
        for lineno, line in enumerate(f, 1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            try:
                name, hexdigits = line.split()
                value = int(hexdigits, 16)
            except ValueError:
                raise InvalidArgument(f'{path}:{lineno}: expected "name hex-expansion"')
            constants.append(ConstantExpansion(name, value, 4 * len(hexdigits)))
    return tuple(constants)


@dataclass(frozen=True)
class TrustPolicy:
    allowed_sources: Tuple[str, ...] = DEFAULT_ALLOWED_SOURCES
    min_seed_bits: int = DEFAULT_MIN_SEED_BITS
    naf_limit: int = DEFAULT_NAF_LIMIT
    constants: Tuple[ConstantExpansion, ...] = field(default_factory=default_constants)
    t3_tolerance_log2: float = DEFAULT_T3_TOLERANCE


    @classmethod
    def with_constants_file(cls, path, **kwargs):
        return cls(constants=default_constants() + load_constants(path), **kwargs)


def _matches_constant(x, constant):
    m = x.bit_length()
    if m < 16:
        return False
    k = (m + 1) // 2
    top = x >> (m - k)
    return any(c >> (m - k) == top for c in constant.candidates(m))


@dataclass(frozen=True)
class T2Result:
    outcome: Outcome
    screens: Tuple[str, ...] = ()


def check_t2(curve, policy=None):
    policy = policy or TrustPolicy()
    p, a, b = curve.p, curve.a, curve.b
    screens = []

    if a == p - 3:
        screens.append('a = -3 (mod p)')

    w = naf_weight(p)
    if w <= policy.naf_limit:
        screens.append(f'special-form prime: NAF weight {w} <= {policy.naf_limit}')

    for label, x in (('p', p), ('a', a), ('b', b)):
        for constant in policy.constants:
            if _matches_constant(x, constant):
                screens.append(f'known constant: {label} matches the expansion of {constant.name}')

    return T2Result(Outcome.FAIL if screens else Outcome.PASS, tuple(screens))


def check_t1(record, policy=None):
    policy = policy or TrustPolicy()
    if record is None:
        return CheckResult('t1', Outcome.FAIL, 'no seed record')

    problems = []
    if record.source_id not in policy.allowed_sources:
        problems.append(f'source {record.source_id!r} is not on the allowed list')
    if record.seed_length_bits < policy.min_seed_bits:
        problems.append(f'seed has {record.seed_length_bits} bits, at least {policy.min_seed_bits} required')
    if record.missing_purposes:
        problems.append(f'transcript lacks {", ".join(record.missing_purposes)}')

    if problems:
        return CheckResult('t1', Outcome.FAIL, '; '.join(problems))
    return CheckResult('t1', Outcome.PASS,
                       f'{record.seed_length_bits}-bit seed from {record.source_id}, complete transcript')


def check_rigidity(record=None, fixture_source=None):
    if record is not None and record.complete:
        return CheckResult('rigidity', Outcome.PASS, f'complete seed transcript from {record.source_id}')
    if record is None and fixture_source:
        return CheckResult('rigidity', Outcome.PASS, f'published fixture generated from {fixture_source}')
    if record is not None:
        return CheckResult('rigidity', Outcome.UNKNOWN,
                           f'seed transcript lacks {", ".join(record.missing_purposes)}')
    return CheckResult('rigidity', Outcome.UNKNOWN, 'no seed record')


@dataclass(frozen=True)
class StrengthSpread:
    rho_log2: Tuple[float, ...]
    twist_rho_log2: Tuple[float, ...]


    @property
    def values(self):
        return self.rho_log2 + self.twist_rho_log2


    @property
    def spread(self):
        return max(self.values) - min(self.values) if self.values else None


@dataclass(frozen=True)
class T3Result:
    outcome: Outcome
    stats: Optional[StrengthSpread] = None
    detail: str = ''


def _t3_trial(config):
    from .generate import generate
    result = generate(config)
    return result.report.rho_log2, result.report.twist_rho_log2


def check_t3(config, trials=3, tolerance_log2=DEFAULT_T3_TOLERANCE, workers=None, timeout=None):
    """
    Runs the generator `trials` times with independent seed streams and
    compares the rho costs of E and E' of the outputs.
    """
    if trials < 2:
        raise InvalidArgument('T3 needs at least two generation trials')

    configs = [dataclasses.replace(config, rng=config.rng.spawn(i), t3_trials=0) for i in range(trials)]

    try:
        results = pool_map(_t3_trial, [(c,) for c in configs], workers, timeout)
    except multiprocessing.TimeoutError:
        logging.warning('T3: generation timed out after %ss', timeout)
        return T3Result(Outcome.NOT_RUN, detail=f'generation timed out after {timeout}s')
    except GenerationFailure as e:
        logging.warning('T3: generation failed at stage %s', e.stage)
        return T3Result(Outcome.NOT_RUN, detail=f'generation failed: {e}')

    stats = StrengthSpread(tuple(r for r, _ in results), tuple(r for _, r in results))
    threshold = config.thresholds.rho_min_log2
    ok = stats.spread <= tolerance_log2 and min(stats.values) >= threshold
    logging.info('T3: %d curves, rho spread 2^%.3f (tolerance %.2f)', trials, stats.spread, tolerance_log2)
    return T3Result(Outcome.PASS if ok else Outcome.FAIL, stats,
                    f'spread {stats.spread:.3f} (tolerance {tolerance_log2}), minimum 2^{min(stats.values):.2f}')


@dataclass(frozen=True)
class TrustReport:
    t1: CheckResult
    t2: T2Result
    t3: T3Result


    @property
    def trusted(self):
        return all(o is Outcome.PASS for o in (self.t1.outcome, self.t2.outcome, self.t3.outcome))


    def as_dict(self):
        return {
            't1': {'outcome': str(self.t1.outcome), 'detail': self.t1.detail},
            't2': {'outcome': str(self.t2.outcome), 'screens': list(self.t2.screens)},
            't3': {'outcome': str(self.t3.outcome), 'detail': self.t3.detail,
                   'rho_log2': list(self.t3.stats.rho_log2) if self.t3.stats else None,
                   'twist_rho_log2': list(self.t3.stats.twist_rho_log2) if self.t3.stats else None},
        }
