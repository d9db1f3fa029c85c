"""Tests for trustcurve.validate.twist."""
from absl.testing import absltest

from trustcurve.curve import CurveParams, DomainParams
from trustcurve.registry import load_registry_entry
from trustcurve.validate import Outcome, SecurityThresholds
from trustcurve.validate.twist import twist_cofactor, validate_twist


TOY16 = DomainParams(CurveParams(65519, 1, 145), (1, 63187), 65647, 65647, 1)


class TwistCofactorTest(absltest.TestCase):

    def test_examples(self):
        self.assertEqual(twist_cofactor(28, {1, 2, 4}), (4, 7))
        self.assertEqual(twist_cofactor(22, {1, 2, 4}), (2, 11))
        self.assertEqual(twist_cofactor(13, {1}), (1, 13))
        self.assertEqual(twist_cofactor(15, {1, 2, 4}), (None, None))


class ValidateTwistTest(absltest.TestCase):

    def test_desk_curve(self):
        report = validate_twist(TOY16, SecurityThresholds.desk(16, role='verifier'))
        self.assertTrue(report.safe, report.to_frame().to_string())
        self.assertEqual(report.twist_order, 65393)
        self.assertEqual(report.twist_trace, 127)
        self.assertEqual(report.twist_cofactor, 1)
        self.assertTrue(all(name.startswith('twist_') for name in report.checks))

    def test_toy_curve(self):
        domain = DomainParams(CurveParams(5, 1, 1), (0, 1), 9, 9, 1)
        report = validate_twist(domain, SecurityThresholds.production('verifier'))
        self.assertEqual(report.twist_order, 3)
        self.assertIs(report['twist_order_prime'].outcome, Outcome.PASS)
        self.assertIs(report['twist_base_point_order'].outcome, Outcome.PASS)
        self.assertIs(report['twist_rho'].outcome, Outcome.FAIL)
        # 3 is too small to pin the order down within the Hasse interval
        self.assertIs(report['twist_curve_order'].outcome, Outcome.UNKNOWN)

    def test_hasse_violation(self):
        domain = DomainParams(CurveParams(5, 1, 1), (0, 1), 20, 20, 1)
        report = validate_twist(domain, SecurityThresholds.production('verifier'))
        self.assertEqual(list(report.checks), ['twist_curve_order'])
        self.assertIs(report['twist_curve_order'].outcome, Outcome.FAIL)
        self.assertIsNone(report.twist_order)

    def test_twist_order_not_prime(self):
        # twist of y^2 = x^3 + x + 5, so N' = 65452 = 4 * 16363 is only allowed for verifiers
        domain = DomainParams(CurveParams(65519, 121, 6655), (1, 33746), 65588, 65588, 1)
        report = validate_twist(domain, SecurityThresholds.desk(16, role='generator'))
        self.assertIs(report['twist_order_prime'].outcome, Outcome.FAIL)
        self.assertIsNone(report.twist_cofactor)

        report = validate_twist(domain, SecurityThresholds.desk(16, role='verifier'))
        self.assertIs(report['twist_order_prime'].outcome, Outcome.PASS)
        self.assertIs(report['twist_curve_order'].outcome, Outcome.PASS)
        self.assertEqual(report.twist_cofactor, 4)

    def test_registry_curves(self):
        thresholds = SecurityThresholds.production('verifier', factor_budget=4)
        for name in ('KG256r1', 'KG384r1'):
            entry = load_registry_entry(name)
            report = validate_twist(entry.domain, thresholds)

            self.assertEqual(report.twist_order, entry.curve_file.twist_N, name)
            self.assertEqual(report.twist_order + entry.domain.N, 2 * entry.domain.p + 2, name)
            self.assertEqual(report.twist_cofactor, 1, name)
            expected_rho = {'KG256r1': 127.8, 'KG384r1': 191.6}[name]
            self.assertAlmostEqual(report.twist_rho_log2, expected_rho, delta=0.05)

            for c in report.checks.values():
                if c.name != 'twist_embedding_degree':
                    self.assertIs(c.outcome, Outcome.PASS, f'{name}: {c.name}')
        # n' - 1 = 2^8 * 3 * (prime) factors completely
        kg = load_registry_entry('KG256r1').domain
        report = validate_twist(kg, thresholds)
        self.assertIs(report['twist_embedding_degree'].outcome, Outcome.PASS)


if __name__ == '__main__':
    absltest.main()
