"""
Trusted curve generation.

The loop keeps the restart structure of the generation procedure:

    ECDLP check fails           -> new coefficients a, b
    base point order fails      -> new base point only
    twist check fails           -> new prime p
    trust check (T1/T2/T3) fails -> new seed
"""
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

from absl import logging

from .curve import INFINITY, CurveParams, DomainParams, _mul, discriminant, field_sqrt
from .entropy import EntropySource, OsEntropy, SeededEntropy
from .errors import ConfigurationError, GenerationFailure, InvalidArgument
from .numeric import is_probable_prime, jacobi
from .ordercalc import BSGS_LIMIT, ENGINES, EXHAUSTIVE_LIMIT, certify_order, count_points
from .trust import T3Result, TrustPolicy, TrustReport, check_t1, check_t2, check_t3
from .validate import Outcome, SecurityThresholds, ValidationReport, finish_report, validate_ecdlp, validate_twist
from .validate.ecdlp import check_supersingular
from .validate.rho import rho_cost_log2


@dataclass(frozen=True)
class GeneratorConfig:
    bits: int
    thresholds: Optional[SecurityThresholds] = None
    order_engine: str = 'bsgs'
    max_coefficient_retries: int = 1000
    max_prime_retries: int = 1000
    max_seed_restarts: int = 4
    max_base_point_retries: int = 64
    rng: Optional[EntropySource] = None
    trust_policy: TrustPolicy = field(default_factory=TrustPolicy)
    t3_trials: int = 0
    order_oracle: Optional[Callable[[CurveParams], int]] = None
    order_trials: int = 3

    def __post_init__(self):
        if self.bits < 16:
            raise ConfigurationError(f'field size must be at least 16 bits, got {self.bits}')
        if self.order_engine not in ENGINES:
            raise ConfigurationError(f'unknown order engine {self.order_engine!r}, expected one of {ENGINES}')
        if self.order_engine == 'exhaustive' and 2**self.bits > EXHAUSTIVE_LIMIT:
            raise ConfigurationError(f'the exhaustive engine is limited to {EXHAUSTIVE_LIMIT.bit_length() - 1} bits')
        if self.order_engine == 'bsgs' and 2**self.bits > BSGS_LIMIT:
            raise ConfigurationError(f'the bsgs engine is limited to {BSGS_LIMIT.bit_length() - 1} bits, '
                                     f'larger fields need an external order oracle')
        if self.order_engine == 'external' and self.order_oracle is None:
            raise ConfigurationError('order_engine=external needs an order oracle')
        if self.t3_trials == 1:
            raise ConfigurationError('T3 needs at least two trials')

        if self.thresholds is None:
            profile = 'production' if self.order_engine == 'external' else 'desk'
            object.__setattr__(self, 'thresholds', SecurityThresholds.from_profile(profile, self.bits))
        if self.thresholds.rho_min_log2 > rho_cost_log2(2**self.bits):
            raise ConfigurationError(f'rho >= 2^{self.thresholds.rho_min_log2:g} is out of reach over a '
                                     f'{self.bits}-bit field; use the desk profile or more bits')
        if self.rng is None:
            object.__setattr__(self, 'rng', OsEntropy())


class GenerationResult(NamedTuple):
    domain: DomainParams
    seed_record: object
    report: ValidationReport
    trust_report: TrustReport


def sample_prime(l, rng, max_tries=None):
    """
    An l-bit prime p = 3 (mod 4). The candidate is drawn first and then
    tested for the 3 (mod 4) form.
    """
    if l < 3:
        raise InvalidArgument(f'need at least 3 bits for p = 3 (mod 4), got {l}')
    max_tries = max_tries or 64 * l

    for _ in range(max_tries):
        p = rng.next_bits(l, 'prime') | (1 << (l - 1))
        if p % 4 == 3 and is_probable_prime(p):
            return p
    raise GenerationFailure('prime', f'no {l}-bit prime = 3 (mod 4) in {max_tries} draws')


def sample_coefficients(p, rng):
    while True:
        a = rng.randbelow(p, 'coefficient-a')
        b = rng.randbelow(p, 'coefficient-b')
        if discriminant(CurveParams(p, a, b)):
            return a, b


def sample_base_point(curve, rng, max_tries=1000):
    p = curve.p
    for _ in range(max_tries):
        x = rng.randbelow(p, 'base-point')
        v = curve.rhs(x)
        if jacobi(v, p) != 1:
            continue
        y = field_sqrt(v, p)
        if rng.next_bits(1, 'base-point'):
            y = p - y
        return x, y
    raise GenerationFailure('base-point', f'no point found in {max_tries} draws')


def _curve_order(config, curve):
    if config.order_engine == 'external':
        return config.order_oracle(curve)
    return count_points(curve, config.order_engine)


def _screen(curve, N, thresholds):
    """Cheap subset of the ECDLP suite, evaluated before any base point exists."""
    p = curve.p
    if not is_probable_prime(N):
        return 'N is not prime'
    if N == p:
        return 'anomalous'
    if check_supersingular(p, p + 1 - N) is Outcome.FAIL:
        return 'supersingular'
    if rho_cost_log2(N) < thresholds.rho_min_log2:
        return 'rho below threshold'
    return None


def _base_point(config, curve, N):
    for _ in range(config.max_base_point_retries):
        G = sample_base_point(curve, config.rng)
        if G is not INFINITY and _mul(curve, N, G) is INFINITY:
            return G
        logging.debug('base point %s does not have order %d, resampling G', G, N)
    raise GenerationFailure('base-point')


def _curve_for_prime(config, p, seed):
    """An (E, G) over F_p passing the ECDLP suite, or None if its twist fails."""
    thresholds = config.thresholds
    for _ in range(config.max_coefficient_retries):
        a, b = sample_coefficients(p, config.rng)
        curve = CurveParams(p, a, b)
        N = _curve_order(config, curve)

        reason = _screen(curve, N, thresholds)
        if reason:
            logging.debug('a=%d b=%d rejected (%s), resampling a, b', a, b, reason)
            continue

        G = _base_point(config, curve, N)
        domain = DomainParams(curve, G, N, N, 1)
        cert = certify_order(curve, N, trials=config.order_trials, seed=seed, method=config.order_engine)
        report = validate_ecdlp(domain, thresholds, cert, order_trials=config.order_trials, seed=seed)
        if not report.safe:
            logging.debug('a=%d b=%d rejected (%s), resampling a, b', a, b,
                          ', '.join(c.name for c in report.checks.values() if not c.passed))
            continue

        twist_report = validate_twist(domain, thresholds, order_trials=config.order_trials, seed=seed)
        if not twist_report.safe:
            logging.debug('twist of a=%d b=%d rejected (%s), resampling p', a, b,
                          ', '.join(c.name for c in twist_report.checks.values() if not c.passed))
            return None

        return domain, report.merge(twist_report)

    raise GenerationFailure('coefficients', f'no suitable a, b over p = {p} in {config.max_coefficient_retries} draws')


def generate(config, seed=0):
    """
    Runs the generation loop and returns the domain with its seed record,
    validation report and trust report. `seed` only drives the validation
    sampling (witness and twist points), never the parameters.
    """
    rng = config.rng
    for restart in range(config.max_seed_restarts + 1):
        if restart:
            rng.reseed()
        logging.info('new seed from %s (%d-bit field)', rng.provenance().source_id, config.bits)

        for _ in range(config.max_prime_retries):
            p = sample_prime(config.bits, rng)
            logging.debug('new prime p = %d', p)

            found = _curve_for_prime(config, p, seed)
            if found is None:
                continue
            domain, report = found
            record = rng.provenance()
            break
        else:
            raise GenerationFailure('prime', f'no prime with a safe curve and twist in {config.max_prime_retries} draws')

        t1 = check_t1(record, config.trust_policy)
        t2 = check_t2(domain.curve, config.trust_policy)
        if t1.outcome is not Outcome.PASS or t2.outcome is not Outcome.PASS:
            logging.info('trust check failed (T1: %s; T2: %s), restarting from a new seed',
                         t1.detail, '; '.join(t2.screens) or 'pass')
            continue

        if config.t3_trials:
            t3 = check_t3(config, config.t3_trials, config.trust_policy.t3_tolerance_log2)
            if t3.outcome is Outcome.FAIL:
                logging.info('T3 failed (%s), restarting from a new seed', t3.detail)
                continue
        else:
            t3 = T3Result(Outcome.NOT_RUN, detail='T3 not requested')

        finish_report(report, config.thresholds, record)
        logging.info('accepted curve over a %d-bit field: N = %d, rho = 2^%.2f', config.bits, domain.N, report.rho_log2)
        return GenerationResult(domain, record, report, TrustReport(t1, t2, t3))

    raise GenerationFailure('seed', f'trust checks failed on {config.max_seed_restarts + 1} seeds')


def prime_order_curve(bits, rng=None, seed=0, max_tries=10000):
    """
    A prime-order curve with a base point, for experiments. Only the order
    is screened; nothing else of the security suite runs.
    """
    rng = rng or SeededEntropy.from_passphrase(seed)
    engine = 'exhaustive' if 2**bits <= EXHAUSTIVE_LIMIT else 'bsgs'
    p = sample_prime(bits, rng)
    for _ in range(max_tries):
        a, b = sample_coefficients(p, rng)
        curve = CurveParams(p, a, b)
        N = count_points(curve, engine)
        if N != p and is_probable_prime(N):
            G = sample_base_point(curve, rng)
            return DomainParams(curve, G, N, N, 1)
    raise GenerationFailure('coefficients', f'no prime-order curve over p = {p} in {max_tries} draws')
