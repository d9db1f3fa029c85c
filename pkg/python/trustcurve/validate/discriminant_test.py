"""Tests for trustcurve.validate.discriminant."""
import math
import random

import sympy
from absl.testing import absltest, parameterized

from trustcurve.errors import NotOrdinary
from trustcurve.registry import load_registry_entry
from trustcurve.validate import discriminant
from trustcurve.validate.discriminant import cm_discriminant


class CmDiscriminantTest(parameterized.TestCase):

    @parameterized.parameters(
        (5, -3, -11, 1),
        (5, 2, -4, 2),
        (7, 2, -24, 1),
        (65519, -127, -245947, 1),
    )
    def test_examples(self, p, t, D, s):
        result = cm_discriminant(p, t)
        self.assertTrue(result.complete)
        self.assertEqual(result.D, D)
        self.assertEqual(result.square_part, s)
        self.assertEqual(result.method, 'factored')

    def test_not_ordinary(self):
        with self.assertRaises(NotOrdinary):
            cm_discriminant(5, 5)
        with self.assertRaises(NotOrdinary):
            cm_discriminant(7, 6)
        with self.assertRaises(NotOrdinary):
            cm_discriminant(7, 0)

    def test_reconstructs(self):
        rng = random.Random(1)
        for _ in range(200):
            p = sympy.randprime(100, 2**20)
            bound = 2 * math.isqrt(p)
            t = rng.randrange(-bound, bound + 1)
            if t == 0 or t * t >= 4 * p:
                continue
            result = cm_discriminant(p, t)
            self.assertTrue(result.complete)
            self.assertEqual(result.D * result.square_part**2, t * t - 4 * p)
            self.assertIn(result.D % 4, (0, 1))

    def test_claimed(self):
        kg = load_registry_entry('KG256r1')
        domain = kg.domain
        t = domain.p + 1 - domain.N
        result = cm_discriminant(domain.p, t, budget=1, claimed_D=kg.curve_file.cm_discriminant)
        self.assertTrue(result.complete)
        self.assertEqual(result.method, 'claimed')
        self.assertEqual(result.square_part, 1)
        self.assertAlmostEqual(result.log2_abs, 257.0, delta=0.5)

    def test_wrong_claim_falls_back(self):
        result = cm_discriminant(5, -3, claimed_D=-3)
        self.assertEqual(result.D, -11)
        self.assertEqual(result.method, 'factored')

    def test_claim_with_square_factor_rejected(self):
        # y^2 = x^3 + 5 over p = 65167: t^2 - 4p = -1587 = -3 * 23^2
        result = cm_discriminant(65167, -509, claimed_D=-1587)
        self.assertEqual(result.method, 'factored')
        self.assertEqual(result.D, -3)
        self.assertEqual(result.square_part, 23)

    @parameterized.parameters(-3, -4, -8, -11, -15, -20, -24, -5 * 7 * 11 * 13 * 1000003)
    def test_fundamental_claims_screened_in(self, D):
        self.assertTrue(discriminant._plausibly_fundamental(D))

    @parameterized.parameters(-12, -16, -27, -32, -75, -1587, -4 * 9, -7 * 1000003**2, -3 * (2**61 - 1)**2)
    def test_non_fundamental_claims_screened_out(self, D):
        self.assertFalse(discriminant._plausibly_fundamental(D))

    def test_budget_exhausted(self):
        kg = load_registry_entry('KG384r1').domain
        result = cm_discriminant(kg.p, kg.p + 1 - kg.N, budget=1)
        if not result.complete:
            self.assertIsNone(result.D)
            self.assertIsNone(result.log2_abs)


if __name__ == '__main__':
    absltest.main()
