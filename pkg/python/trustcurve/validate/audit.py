"""
Whole-domain verification and the nine-criterion audit matrix.
"""
import dataclasses
from dataclasses import dataclass
from typing import Dict

import pandas as pd
from absl import logging

from ..curve import INFINITY, discriminant, is_on_curve
from ..ordercalc import BSGS_LIMIT, count_points_bsgs
from .base import CheckResult, Outcome, ValidationReport, combine
from .ecdlp import _primality, validate_ecdlp
from .twist import twist_cofactor, validate_twist


CRITERIA = {
    'safeField': ('field_prime',),
    'safeEquation': ('non_singular',),
    'safeBase': ('curve_order', 'order_prime', 'base_point_on_curve', 'base_point_order', 'cofactor',
                 'order_consistency'),
    'safeRho': ('rho',),
    'safeTransfer': ('non_anomalous', 'non_supersingular', 'mov', 'embedding_degree'),
    'safeDiscriminant': ('cm_discriminant',),
    'safeRigid': ('rigidity',),
    'safeTwist': ('twist_curve_order', 'twist_order_prime', 'twist_non_anomalous', 'twist_non_supersingular',
                  'twist_base_point_order', 'twist_cofactor', 'twist_order_consistency', 'twist_rho',
                  'twist_mov', 'twist_embedding_degree', 'joint_rho'),
}
CRITERIA_ORDER = list(CRITERIA) + ['safeCurve']


def _order_unavailable(domain, thresholds, report):
    curve = domain.curve
    report.add('non_singular', Outcome.PASS if discriminant(curve) else Outcome.FAIL, '4a^3 + 27b^2 (mod p)')
    report.add('field_prime', *_primality(curve.p, 'p'))
    on_curve = domain.G is not INFINITY and is_on_curve(curve, domain.G)
    report.add('base_point_on_curve', Outcome.PASS if on_curve else Outcome.FAIL,
               'G satisfies the curve equation' if on_curve else 'Incorrect base point: G is not on the curve')
    report.add('curve_order', Outcome.UNKNOWN,
               f'no order supplied and point counting is limited to p < 2^{BSGS_LIMIT.bit_length() - 1}')
    return report


def complete_orders(domain, thresholds, seed=0):
    """Fills in N, n and h of a parameters-only domain at desk scale, or returns None."""
    if domain.N is not None:
        return domain
    if domain.p >= BSGS_LIMIT:
        return None
    N = count_points_bsgs(domain.curve, seed)
    h, n = twist_cofactor(N, thresholds.allowed_cofactors)
    if h is None:
        h, n = 1, N
    logging.info('counted N = %d for a parameters-only domain', N)
    return dataclasses.replace(domain, N=N, n=n, h=h)


def finish_report(report, thresholds, seed_record=None, fixture_source=None):
    """Adds the checks that need both halves of a report: joint rho and rigidity."""
    from ..trust import check_rigidity

    if report.rho_log2 is not None and report.twist_rho_log2 is not None:
        report.joint_rho_log2 = joint = min(report.rho_log2, report.twist_rho_log2)
        ok = joint >= thresholds.rho_min_log2
        report.add('joint_rho', Outcome.PASS if ok else Outcome.FAIL,
                   f'joint rho = 2^{joint:.2f} (weaker of E and its twist)')
        report.notes.append('joint rho is the minimum of the rho costs of E and its twist')
    else:
        report.add('joint_rho', Outcome.UNKNOWN, 'rho of E or of its twist is unavailable')

    report.checks['rigidity'] = check_rigidity(seed_record, fixture_source)
    return report


def verify_domain(domain, thresholds, seed_record=None, fixture_source=None, claimed_D=None,
                  order_cert=None, twist_order_cert=None, order_trials=3, seed=0):
    """
    The full verifier sequence: ECDLP suite on E, the same suite on E', joint
    rho and rigidity, merged into one report.
    """
    report = ValidationReport()
    full = complete_orders(domain, thresholds, seed)
    if full is None:
        _order_unavailable(domain, thresholds, report)
    else:
        report.merge(validate_ecdlp(full, thresholds, order_cert, claimed_D, order_trials, seed))
        if report['non_singular'].passed:
            report.merge(validate_twist(full, thresholds, twist_order_cert, order_trials, seed))
    return finish_report(report, thresholds, seed_record, fixture_source)


@dataclass
class CurveAudit:
    name: str
    rows: Dict[str, CheckResult]
    report: ValidationReport

    @property
    def safe(self):
        return self.rows['safeCurve'].passed


    def to_series(self):
        return pd.Series({k: str(self.rows[k].outcome) for k in CRITERIA_ORDER}, name=self.name)


def _criterion(name, report, thresholds, domain):
    results = [report[c] for c in CRITERIA[name] if c in report]
    if not results:
        return CheckResult(name, Outcome.UNKNOWN, 'not evaluated')

    outcome = combine(r.outcome for r in results)
    weakest = [r for r in results if r.outcome is outcome and outcome is not Outcome.PASS]
    detail = '; '.join(f'{r.name}: {r.detail}' for r in weakest) or 'all checks pass'

    if name == 'safeBase' and outcome is Outcome.PASS and domain.h and domain.h > 1:
        detail = f'cofactor h = {domain.h} accepted under the {thresholds.role} profile'
    return CheckResult(name, outcome, detail)


def full_audit(domain, thresholds, seed_record=None, fixture_source=None, name=None, report=None, **kwargs):
    if report is None:
        report = verify_domain(domain, thresholds, seed_record, fixture_source, **kwargs)

    rows = {c: _criterion(c, report, thresholds, domain) for c in CRITERIA}
    overall = combine(report[c].outcome for c in report.checks) if report.checks else Outcome.UNKNOWN
    rows['safeCurve'] = CheckResult('safeCurve', overall,
                                    'all criteria met' if overall is Outcome.PASS else 'not all criteria met')
    return CurveAudit(name or 'curve', rows, report)


def audit_matrix(audits):
    """One column per audited curve, one row per criterion."""
    if not audits:
        return pd.DataFrame(index=CRITERIA_ORDER)
    return pd.concat([a.to_series() for a in audits], axis=1)
