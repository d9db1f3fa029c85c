"""Tests for trustcurve.ordercalc."""
import random

import sympy
from absl.testing import absltest, parameterized

from trustcurve import curve as ec
from trustcurve import ordercalc
from trustcurve.curve import INFINITY, CurveParams
from trustcurve.errors import InvalidArgument, InvalidMultiple, TooLarge, UnsupportedModulus
from trustcurve.numeric import bounded_factor
from trustcurve.registry import load_registry_entry


TOY = CurveParams(5, 1, 1)


def _brute_force_count(C):
    ys = {}
    for y in range(C.p):
        ys[y * y % C.p] = ys.get(y * y % C.p, 0) + 1
    return 1 + sum(ys.get(C.rhs(x), 0) for x in range(C.p))


class ExhaustiveTest(parameterized.TestCase):

    @parameterized.parameters(
        ((5, 1, 1), 9),
        ((7, 1, 0), 8),
        ((23, 1, 1), 28),
    )
    def test_examples(self, params, N):
        self.assertEqual(ordercalc.count_points_exhaustive(CurveParams(*params)), N)

    def test_against_brute_force(self):
        rng = random.Random(0)
        for _ in range(30):
            p = sympy.randprime(5, 3000)
            C = CurveParams(p, rng.randrange(p), rng.randrange(p))
            self.assertEqual(ordercalc.count_points_exhaustive(C), _brute_force_count(C))

    def test_too_large(self):
        with self.assertRaises(TooLarge):
            ordercalc.count_points_exhaustive(CurveParams(sympy.nextprime(2**20), 1, 1))


class BsgsTest(absltest.TestCase):

    def test_examples(self):
        self.assertEqual(ordercalc.count_points_bsgs(CurveParams(23, 1, 1)), 28)
        p = sympy.prevprime(2**16)
        while p % 4 != 3:
            p = sympy.prevprime(p)
        self.assertEqual(ordercalc.count_points_bsgs(CurveParams(p, 1, 0)), p + 1)
        self.assertEqual(ordercalc.count_points_bsgs(CurveParams(1009, 5, 7)),
                         ordercalc.count_points_exhaustive(CurveParams(1009, 5, 7)))

    def test_agrees_with_exhaustive(self):
        rng = random.Random(1)
        checked = 0
        residues = set()
        while checked < 400:
            p = sympy.randprime(5, 2**16)
            residues.add(p % 4)
            C = CurveParams(p, rng.randrange(p), rng.randrange(p))
            if not ec.discriminant(C):
                continue
            N = ordercalc.count_points_bsgs(C, rng_seed=checked)
            self.assertEqual(N, ordercalc.count_points_exhaustive(C), C)
            self.assertTrue(ec.in_hasse_interval(p, N))
            checked += 1
        self.assertEqual(residues, {1, 3})

    def test_small_fields(self):
        for C in (CurveParams(5, 1, 0), CurveParams(7, 0, 1), CurveParams(11, 1, 2)):
            self.assertEqual(ordercalc.count_points_bsgs(C), _brute_force_count(C), C)
        rng = random.Random(3)
        for p in sympy.primerange(5, ordercalc.BSGS_MIN_FIELD):
            for _ in range(4):
                C = CurveParams(p, rng.randrange(p), rng.randrange(p))
                if ec.discriminant(C):
                    self.assertEqual(ordercalc.count_points_bsgs(C, rng_seed=p), _brute_force_count(C), C)

    def test_desk_scale(self):
        rng = random.Random(2)
        p = sympy.nextprime(2**17)
        while p % 4 != 3:
            p = sympy.nextprime(p)
        C = CurveParams(p, rng.randrange(p), rng.randrange(p))
        self.assertEqual(ordercalc.count_points_bsgs(C), ordercalc.count_points_exhaustive(C))

        p = sympy.nextprime(2**40)
        while p % 4 != 3:
            p = sympy.nextprime(p)
        C = CurveParams(p, 2, 3)
        N = ordercalc.count_points_bsgs(C, rng_seed=5)
        cert = ordercalc.certify_order(C, N, trials=3)
        self.assertTrue(cert.certified)

    def test_unsupported(self):
        with self.assertRaises(UnsupportedModulus):
            ordercalc.count_points_bsgs(CurveParams(sympy.nextprime(2**56), 1, 1))

    def test_engine_dispatch(self):
        self.assertEqual(ordercalc.count_points(TOY, 'exhaustive'), 9)
        with self.assertRaises(InvalidArgument):
            ordercalc.count_points(TOY, 'external')


class PointOrderTest(absltest.TestCase):

    def test_examples(self):
        self.assertEqual(ordercalc.point_order(TOY, INFINITY, 9, bounded_factor(9)), 1)
        self.assertEqual(ordercalc.point_order(TOY, (0, 1), 9, bounded_factor(9)), 9)
        self.assertEqual(ec.scalar_mul(TOY, 3, (0, 1)), (2, 1))

    def test_not_a_multiple(self):
        with self.assertRaises(InvalidMultiple):
            ordercalc.point_order(TOY, (0, 1), 8, bounded_factor(8))

    def test_prime_order(self):
        kg = load_registry_entry('KG256r1').domain
        f = bounded_factor(kg.N, budget=1)
        self.assertTrue(f.complete)
        self.assertEqual(ordercalc.point_order(kg.curve, kg.G, kg.N, f), kg.N)

    def test_small_curves(self):
        rng = random.Random(3)
        for _ in range(20):
            p = sympy.randprime(100, 2000)
            if p % 4 != 3:
                continue
            C = CurveParams(p, rng.randrange(p), rng.randrange(p))
            if not ec.discriminant(C):
                continue
            N = ordercalc.count_points_exhaustive(C)
            P = ec.random_point(C, rng)
            k = ordercalc.point_order(C, P, N, bounded_factor(N))
            self.assertIs(ec.scalar_mul(C, k, P), INFINITY)
            for q in sympy.primefactors(k):
                self.assertIsNot(ec.scalar_mul(C, k // q, P), INFINITY)


class CertifyTest(absltest.TestCase):

    def test_toy(self):
        cert = ordercalc.certify_order(TOY, 9, trials=3)
        self.assertTrue(cert.certified)
        self.assertTrue(cert.hasse_ok)

        # 8*(0,1) != O since ord((0,1)) = 9, and every affine point has order 3 or 9
        cert = ordercalc.certify_order(TOY, 8, trials=3)
        self.assertTrue(cert.failed)
        self.assertFalse(cert.certified)
        self.assertFalse(cert.uniqueness_ok)

    def test_outside_hasse(self):
        cert = ordercalc.certify_order(TOY, 12, trials=1)
        self.assertFalse(cert.hasse_ok)
        self.assertFalse(cert.certified)

    def test_registry_curves(self):
        for name in ('KG256r1', 'KG384r1'):
            kg = load_registry_entry(name).domain
            cert = ordercalc.certify_order(kg.curve, kg.N, trials=5)
            self.assertTrue(cert.certified, name)
            self.assertTrue(cert.uniqueness_ok, name)
            self.assertLen(cert.witness_points, 5)
            for P in cert.witness_points:
                self.assertIs(ec.scalar_mul(kg.curve, kg.N, P), INFINITY)

    def test_wrong_claim(self):
        kg = load_registry_entry('KG256r1').domain
        cert = ordercalc.certify_order(kg.curve, kg.N + 2, trials=2)
        self.assertTrue(cert.hasse_ok)
        self.assertTrue(cert.failed)

    def test_trials_required(self):
        with self.assertRaises(InvalidArgument):
            ordercalc.certify_order(TOY, 9, trials=0)


if __name__ == '__main__':
    absltest.main()
