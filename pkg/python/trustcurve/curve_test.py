"""Tests for trustcurve.curve."""
import random

import sympy
from absl.testing import absltest

from trustcurve import curve as ec
from trustcurve import ordercalc
from trustcurve.curve import INFINITY, CurveParams
from trustcurve.errors import InvalidArgument, InvalidOrder, InvalidPoint
from trustcurve.registry import load_registry_entry


TOY = CurveParams(5, 1, 1)


def _random_small_curve(rng, max_p=2**10):
    while True:
        p = sympy.prevprime(rng.randrange(100, max_p))
        if p % 4 != 3:
            continue
        C = CurveParams(p, rng.randrange(p), rng.randrange(p))
        if ec.discriminant(C):
            return C


class CurveParamsTest(absltest.TestCase):

    def test_reduced_coefficients(self):
        with self.assertRaises(InvalidArgument):
            CurveParams(5, 5, 1)
        with self.assertRaises(InvalidArgument):
            CurveParams(4, 1, 1)

    def test_discriminant(self):
        self.assertEqual(ec.discriminant(TOY), 1)
        self.assertEqual(ec.discriminant(CurveParams(5, 0, 0)), 0)
        kg = load_registry_entry('KG256r1').domain
        self.assertNotEqual(ec.discriminant(kg.curve), 0)


class GroupLawTest(absltest.TestCase):

    def test_examples(self):
        P = (0, 1)
        self.assertEqual(ec.add(TOY, P, INFINITY), P)
        self.assertEqual(ec.add(TOY, INFINITY, P), P)
        self.assertEqual(ec.add(TOY, P, P), (4, 2))
        self.assertEqual(ec.scalar_mul(TOY, 2, P), (4, 2))
        self.assertIs(ec.add(TOY, P, ec.negate(TOY, P)), INFINITY)
        self.assertIs(ec.scalar_mul(TOY, 0, P), INFINITY)

    def test_off_curve(self):
        with self.assertRaises(InvalidPoint):
            ec.add(TOY, (0, 1), (1, 1))
        with self.assertRaises(InvalidPoint):
            ec.scalar_mul(TOY, 3, (0, 2))
        with self.assertRaises(InvalidArgument):
            ec.scalar_mul(TOY, -1, (0, 1))

    def test_group_axioms(self):
        rng = random.Random(0)
        for _ in range(10):
            C = _random_small_curve(rng)
            for _ in range(100):
                P, Q, R = (ec.random_point(C, rng) for _ in range(3))
                PQ = ec.add(C, P, Q)
                self.assertEqual(PQ, ec.add(C, Q, P))
                self.assertEqual(ec.add(C, PQ, R), ec.add(C, P, ec.add(C, Q, R)))
                self.assertTrue(ec.is_on_curve(C, PQ))

                k1, k2 = rng.randrange(C.p), rng.randrange(C.p)
                self.assertEqual(ec.scalar_mul(C, k1 + k2, P),
                                 ec.add(C, ec.scalar_mul(C, k1, P), ec.scalar_mul(C, k2, P)))

    def test_base_point_order(self):
        kg = load_registry_entry('KG256r1').domain
        self.assertIs(ec.scalar_mul(kg.curve, kg.n, kg.G), INFINITY)
        self.assertIsNot(ec.scalar_mul(kg.curve, kg.n - 1, kg.G), INFINITY)


class TwistTest(absltest.TestCase):

    def test_examples(self):
        self.assertEqual(ec.twist(TOY, 1), TOY)
        self.assertEqual(ec.twist(TOY, 2), CurveParams(5, 4, 3))
        with self.assertRaises(InvalidArgument):
            ec.twist(TOY, 5)

    def test_twist_order(self):
        self.assertEqual(ec.twist_order(5, 9), 3)
        self.assertEqual(ordercalc.count_points_exhaustive(CurveParams(5, 4, 3)), 3)
        p = 1009
        self.assertEqual(ec.twist_order(p, p + 1), p + 1)
        with self.assertRaises(InvalidOrder):
            ec.twist_order(5, 20)

    def test_registry_twist_orders(self):
        for name, twist_N in [
            ('KG256r1', 105659876450476807015340827963890761977415784647038280107672027020884049705217),
            ('KG384r1', 30850493656680149340079966421756113888797201705900966381839137419093704432275558620475915152050864556025244924005373),
        ]:
            kg = load_registry_entry(name).domain
            self.assertEqual(ec.twist_order(kg.p, kg.N), twist_N)
            self.assertEqual(kg.N + twist_N, 2 * kg.p + 2)

    def test_twist_counts(self):
        rng = random.Random(2)
        for _ in range(20):
            C = _random_small_curve(rng, max_p=2**12)
            N = ordercalc.count_points_exhaustive(C)
            c = ec.smallest_non_residue(C.p)
            self.assertEqual(ordercalc.count_points_exhaustive(ec.twist(C, c)), ec.twist_order(C.p, N))
            self.assertEqual(ec.quadratic_twist(C), ec.twist(C, c))

            # twisting twice, or by a square, gives an isomorphic curve
            self.assertEqual(ordercalc.count_points_exhaustive(ec.twist(ec.twist(C, c), c)), N)
            self.assertEqual(ordercalc.count_points_exhaustive(ec.twist(C, 9)), N)

    def test_smallest_non_residue(self):
        self.assertEqual(ec.smallest_non_residue(7), 3)
        self.assertEqual(ec.smallest_non_residue(23), 5)


class HasseTest(absltest.TestCase):

    def test_interval(self):
        self.assertEqual(ec.hasse_interval(5), (2, 10))
        self.assertTrue(ec.in_hasse_interval(5, 9))
        self.assertFalse(ec.in_hasse_interval(5, 11))


if __name__ == '__main__':
    absltest.main()
