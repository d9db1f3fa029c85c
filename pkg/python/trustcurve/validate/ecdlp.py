"""
ECDLP security suite for a curve E with base point G.

Checks run in a fixed order and every one of them leaves an entry in the
report; a weak curve never raises.
"""
import math

from absl import logging

from ..curve import INFINITY, _mul, discriminant, in_hasse_interval, is_on_curve
from ..errors import InvalidOrder, NotOrdinary
from ..numeric import is_probable_prime, pocklington_certificate, verify_pocklington
from ..ordercalc import certify_order
from .base import LowerBoundOnly, Outcome, ValidationReport
from .discriminant import cm_discriminant
from .rho import rho_cost_log2
from .transfer import check_mov, describe_embedding, embedding_degree, embedding_outcome


POCKLINGTON_MAX_BITS = 128
POCKLINGTON_BUDGET = 2**8


def trace(p, N):
    if not in_hasse_interval(p, N):
        raise InvalidOrder(f'N = {N} violates the Hasse bound for p = {p}')
    return p + 1 - N


def check_anomalous(p, N):
    return Outcome.FAIL if N == p else Outcome.PASS


def check_supersingular(p, t):
    if t % p == 0 or t * t in (0, p, 2 * p, 3 * p, 4 * p):
        return Outcome.FAIL
    return Outcome.PASS


def _primality(x, what):
    if not is_probable_prime(x):
        return Outcome.FAIL, f'{what} is composite'
    if x.bit_length() <= POCKLINGTON_MAX_BITS:
        cert = pocklington_certificate(x, budget=POCKLINGTON_BUDGET)
        if cert is not None and verify_pocklington(cert):
            return Outcome.PASS, f'{what} is prime (Pocklington certificate, witness {cert.witness})'
    return Outcome.PASS, f'{what} is a probable prime (Miller-Rabin)'


def check_order_certificate(report, cert, name='curve_order'):
    if cert.certified and cert.uniqueness_ok:
        report.add(name, Outcome.PASS, cert.detail)
    elif cert.certified:
        report.add(name, Outcome.UNKNOWN, cert.detail)
    else:
        report.add(name, Outcome.FAIL, cert.detail)


def check_subgroup(report, curve, G, N, n, h, thresholds, prefix=''):
    """Steps shared by E and its twist: prime order n of G, cofactor, consistency, rho, transfer."""
    if n is None or n < 2:
        report.add(prefix + 'base_point_order', Outcome.FAIL, 'no prime-order subgroup')
        return

    n_prime = is_probable_prime(n)
    if G is INFINITY or not n_prime or _mul(curve, n, G) is not INFINITY:
        report.add(prefix + 'base_point_order', Outcome.FAIL,
                   f'G does not generate a subgroup of prime order n = {n}')
    else:
        report.add(prefix + 'base_point_order', Outcome.PASS, 'n is prime and n*G = O')

    if h in thresholds.allowed_cofactors:
        report.add(prefix + 'cofactor', Outcome.PASS, f'h = {h} (allowed: {sorted(thresholds.allowed_cofactors)})')
    else:
        report.add(prefix + 'cofactor', Outcome.FAIL, f'h = {h} not in {sorted(thresholds.allowed_cofactors)}')

    # gcd(h, n) = 1 stands in for gcd(N, n) = 1, which n | N makes unsatisfiable
    if h * n == N and math.gcd(h, n) == 1 and math.gcd(n, curve.p) == 1:
        report.add(prefix + 'order_consistency', Outcome.PASS, 'h*n = N, gcd(h, n) = 1, gcd(n, p) = 1')
    else:
        report.add(prefix + 'order_consistency', Outcome.FAIL, f'h*n = {h * n} against N = {N}, gcd(h, n) = {math.gcd(h, n)}')

    rho = rho_cost_log2(n)
    rho_ok = rho >= thresholds.rho_min_log2
    report.add(prefix + 'rho', Outcome.PASS if rho_ok else Outcome.FAIL,
               f'rho = 2^{rho:.2f}, required >= 2^{thresholds.rho_min_log2:g}')

    if not n_prime:
        report.add(prefix + 'mov', Outcome.UNKNOWN, 'n is not prime')
        report.add(prefix + 'embedding_degree', Outcome.UNKNOWN, 'n is not prime')
        return rho, None
    if curve.p % n == 0:
        report.add(prefix + 'mov', Outcome.FAIL, 'n = p')
        report.add(prefix + 'embedding_degree', Outcome.FAIL, 'n = p')
        return rho, None

    B = thresholds.mov_degree_bound
    mov = check_mov(curve.p, n, B)
    report.add(prefix + 'mov', mov, f'p^i != 1 (mod n) for 1 <= i <= {B}' if mov is Outcome.PASS
               else f'p has order <= {B} modulo n')

    evidence = embedding_degree(curve.p, n, thresholds.factor_budget, mov_bound=B if mov is Outcome.PASS else 0)
    outcome = embedding_outcome(evidence, n, thresholds.embed_ratio_denominator)
    report.add(prefix + 'embedding_degree', outcome, describe_embedding(evidence, thresholds.embed_ratio_denominator))
    if isinstance(evidence, LowerBoundOnly):
        label = prefix.replace('_', ' ')
        report.notes.append(f'{label}embedding degree left open: n - 1 keeps a composite cofactor after '
                            f'factoring budget {thresholds.factor_budget}, a larger budget may settle it')
    return rho, evidence


def validate_ecdlp(domain, thresholds, order_cert=None, claimed_D=None, order_trials=3, seed=0):
    curve = domain.curve
    p, N, n, h, G = curve.p, domain.N, domain.n, domain.h, domain.G
    report = ValidationReport()

    if discriminant(curve):
        report.add('non_singular', Outcome.PASS, '4a^3 + 27b^2 != 0 (mod p)')
    else:
        report.add('non_singular', Outcome.FAIL, 'singular curve: 4a^3 + 27b^2 = 0 (mod p)')
        return report

    outcome, detail = _primality(p, 'p')
    report.add('field_prime', outcome, f'{detail}, p = {p % 4} (mod 4)')

    if order_cert is None:
        order_cert = certify_order(curve, N, trials=order_trials, seed=seed)
    check_order_certificate(report, order_cert)

    if is_probable_prime(N):
        report.add('order_prime', Outcome.PASS, 'N is prime')
    elif h > 1 and h in thresholds.allowed_cofactors and N % h == 0 and is_probable_prime(N // h):
        report.add('order_prime', Outcome.PASS, f'N = {h}*n with n prime ({thresholds.role} profile)')
    else:
        report.add('order_prime', Outcome.FAIL, 'N is not prime (nor an allowed cofactor times a prime)')

    report.t = t = p + 1 - N
    report.add('non_anomalous', check_anomalous(p, N), 'N != p' if N != p else 'anomalous: N = p')
    report.add('non_supersingular', check_supersingular(p, t), f't = {t}')

    if G is not INFINITY and is_on_curve(curve, G):
        report.add('base_point_on_curve', Outcome.PASS, 'G satisfies the curve equation')
    else:
        report.add('base_point_on_curve', Outcome.FAIL, 'Incorrect base point: G is not on the curve')
        G = INFINITY

    report.notes.append('order consistency checks gcd(h, n) = 1 in place of gcd(N, n) = 1')
    result = check_subgroup(report, curve, G, N, n, h, thresholds)
    if result:
        report.rho_log2, report.embedding = result

    try:
        cm = cm_discriminant(p, t, thresholds.factor_budget, claimed_D)
    except NotOrdinary as e:
        report.add('cm_discriminant', Outcome.FAIL, str(e))
    else:
        if not cm.complete:
            report.add('cm_discriminant', Outcome.UNKNOWN, 't^2 - 4p not factored within budget')
        else:
            report.cm_discriminant = cm.D
            ok = cm.log2_abs >= thresholds.disc_min_log2
            detail = f'D = {cm.D}, |D| = 2^{cm.log2_abs:.1f} ({cm.method})'
            report.add('cm_discriminant', Outcome.PASS if ok else Outcome.FAIL,
                       f'{detail}, required > 2^{thresholds.disc_min_log2:g}')

    for c in report.failures(Outcome.UNKNOWN):
        logging.warning('ECDLP check %s inconclusive: %s', c.name, c.detail)
    return report
