"""Twist security: the ECDLP suite applied to the canonical quadratic twist E'."""
import random

from absl import logging

from ..curve import INFINITY, _mul, in_hasse_interval, quadratic_twist, random_point, smallest_non_residue
from ..numeric import is_probable_prime
from ..ordercalc import certify_order
from .base import Outcome, ValidationReport
from .ecdlp import check_anomalous, check_order_certificate, check_subgroup, check_supersingular


PREFIX = 'twist_'
MAX_BASE_POINT_DRAWS = 32


def twist_cofactor(N_twist, allowed_cofactors):
    """Smallest allowed h' with N'/h' prime, as (h', n'), or (None, None)."""
    for h in sorted(allowed_cofactors):
        if N_twist % h == 0 and is_probable_prime(N_twist // h):
            return h, N_twist // h
    return None, None


def twist_base_point(curve, h, n, rng):
    """h*P for random P until it is not O; the result has order n when n is prime."""
    for _ in range(MAX_BASE_POINT_DRAWS):
        G = _mul(curve, h, random_point(curve, rng))
        if G is not INFINITY:
            return G
    return INFINITY


def validate_twist(domain, thresholds, twist_order_cert=None, order_trials=3, seed=0):
    curve = domain.curve
    p, N = curve.p, domain.N
    report = ValidationReport()

    if not in_hasse_interval(p, N):
        report.add(PREFIX + 'curve_order', Outcome.FAIL, f'N = {N} violates the Hasse bound, no twist order')
        return report

    E_twist = quadratic_twist(curve)
    N_twist = 2 * p + 2 - N
    report.twist_order = N_twist
    report.twist_trace = p + 1 - N_twist
    report.notes.append(f'twist by the smallest non-residue c = {smallest_non_residue(p)}')

    if twist_order_cert is None:
        twist_order_cert = certify_order(E_twist, N_twist, trials=order_trials, seed=seed)
    check_order_certificate(report, twist_order_cert, PREFIX + 'curve_order')

    h, n = twist_cofactor(N_twist, thresholds.allowed_cofactors)
    if h is None:
        report.add(PREFIX + 'order_prime', Outcome.FAIL,
                   f"N' = {N_twist} is not an allowed cofactor times a prime")
    else:
        report.add(PREFIX + 'order_prime', Outcome.PASS, f"N' = {h}*n' with n' prime")
    report.twist_cofactor = h

    report.add(PREFIX + 'non_anomalous', check_anomalous(p, N_twist), "N' != p" if N_twist != p else "N' = p")
    report.add(PREFIX + 'non_supersingular', check_supersingular(p, report.twist_trace), f"t' = {report.twist_trace}")

    if h is None:
        report.add(PREFIX + 'base_point_order', Outcome.FAIL, "no prime-order subgroup on E'")
        return report

    G = twist_base_point(E_twist, h, n, random.Random(seed))
    result = check_subgroup(report, E_twist, G, N_twist, n, h, thresholds, prefix=PREFIX)
    if result:
        report.twist_rho_log2, report.twist_embedding = result

    for c in report.failures(Outcome.UNKNOWN):
        logging.warning('twist check %s inconclusive: %s', c.name, c.detail)
    return report
