"""Tests for trustcurve.validate.rho."""
from absl.testing import absltest

from trustcurve.errors import InvalidArgument
from trustcurve.registry import load_registry_entry
from trustcurve.validate import rho


class RhoCostTest(absltest.TestCase):

    def test_examples(self):
        self.assertAlmostEqual(rho.rho_cost_log2(2**200), 99.825, places=3)
        self.assertAlmostEqual(rho.parallel_rho_cost_log2(2**100), 50.326, places=3)
        self.assertAlmostEqual(rho.parallel_rho_cost_log2(2**256, 2**20), 118.326, places=3)

    def test_registry_curves(self):
        self.assertAlmostEqual(rho.rho_cost_log2(load_registry_entry('KG256r1').domain.n), 127.8, delta=0.05)
        self.assertAlmostEqual(rho.rho_cost_log2(load_registry_entry('KG384r1').domain.n), 191.6, delta=0.05)

    def test_monotone(self):
        values = [rho.rho_cost_log2(n) for n in range(2, 2000)]
        self.assertTrue(all(a < b for a, b in zip(values, values[1:])))

    def test_joint(self):
        self.assertEqual(rho.joint_rho_log2(2**256, 2**256), rho.rho_cost_log2(2**256))
        joint = rho.joint_rho_log2(2**256, 2**160)
        self.assertAlmostEqual(joint, 79.825, places=3)
        self.assertLessEqual(joint, rho.rho_cost_log2(2**256))

    def test_invalid(self):
        with self.assertRaises(InvalidArgument):
            rho.rho_cost_log2(1)
        with self.assertRaises(InvalidArgument):
            rho.parallel_rho_cost_log2(2**10, 0)


if __name__ == '__main__':
    absltest.main()
