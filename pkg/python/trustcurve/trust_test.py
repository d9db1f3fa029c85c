"""Tests for trustcurve.trust."""
import dataclasses
import random

from absl.testing import absltest

from trustcurve import trust
from trustcurve.curve import CurveParams
from trustcurve.entropy import SeededEntropy
from trustcurve.errors import InvalidArgument
from trustcurve.generate import GeneratorConfig
from trustcurve.numeric import next_prime
from trustcurve.registry import load_registry_entry
from trustcurve.validate import Outcome, SecurityThresholds


def _record(purposes=trust.REQUIRED_PURPOSES, source_id='/dev/urandom', bits=256):
    return trust.SeedRecord(
        source_id=source_id,
        seed_commitment='00' * 32,
        seed_length_bits=bits,
        transcript=tuple(trust.TranscriptEntry(p, 32, 'cd' * 32) for p in purposes),
    )


def _pi():
    return next(c for c in trust.default_constants() if c.name == 'pi')


class TranscriptTest(absltest.TestCase):

    def test_serialize(self):
        entry = trust.TranscriptEntry('coefficient-a', 512, 'ab12')
        self.assertEqual(entry.serialize(), 'coefficient-a:512:ab12')
        self.assertEqual(trust.TranscriptEntry.parse(entry.serialize()), entry)
        with self.assertRaises(InvalidArgument):
            trust.TranscriptEntry.parse('prime:many:ab')
        with self.assertRaises(InvalidArgument):
            trust.TranscriptEntry.parse('prime:12')

    def test_seed_record(self):
        self.assertTrue(_record().complete)
        record = _record(purposes=('prime', 'coefficient-a'))
        self.assertEqual(record.missing_purposes, ['coefficient-b', 'base-point'])
        self.assertEqual(record.as_dict()['transcript'][0], 'prime:32:' + 'cd' * 32)


class T1Test(absltest.TestCase):

    def test_pass(self):
        self.assertIs(trust.check_t1(_record()).outcome, Outcome.PASS)

    def test_failures(self):
        self.assertIs(trust.check_t1(None).outcome, Outcome.FAIL)

        result = trust.check_t1(_record(source_id='/home/me/not-random'))
        self.assertIs(result.outcome, Outcome.FAIL)
        self.assertIn('allowed list', result.detail)

        result = trust.check_t1(_record(bits=128))
        self.assertIn('at least 256', result.detail)

        # a and b must be drawn independently
        result = trust.check_t1(_record(purposes=('prime', 'coefficient-a', 'base-point')))
        self.assertIs(result.outcome, Outcome.FAIL)
        self.assertIn('coefficient-b', result.detail)

    def test_policy(self):
        policy = trust.TrustPolicy(allowed_sources=('/dev/random',))
        self.assertIs(trust.check_t1(_record(), policy).outcome, Outcome.FAIL)
        self.assertIs(trust.check_t1(_record(source_id='/dev/random'), policy).outcome, Outcome.PASS)


class T2Test(absltest.TestCase):

    def test_registry_curve_passes(self):
        kg = load_registry_entry('KG256r1').domain
        result = trust.check_t2(kg.curve)
        self.assertIs(result.outcome, Outcome.PASS)
        self.assertEqual(result.screens, ())

    def test_a_minus_three(self):
        kg = load_registry_entry('KG256r1').domain
        result = trust.check_t2(CurveParams(kg.p, kg.p - 3, kg.curve.b))
        self.assertIs(result.outcome, Outcome.FAIL)
        self.assertIn('a = -3 (mod p)', result.screens)

    def test_special_prime(self):
        p = 2**255 - 19
        result = trust.check_t2(CurveParams(p, 486662, 1))
        self.assertIs(result.outcome, Outcome.FAIL)
        self.assertTrue(any('NAF weight' in s for s in result.screens))

    def test_random_primes_not_flagged(self):
        rng = random.Random(64)
        flagged = 0
        for _ in range(10**4):
            p = next_prime(rng.getrandbits(64) | 1 << 63)
            curve = CurveParams(p, rng.randrange(p), rng.randrange(p))
            flagged += any(s.startswith('special-form prime') for s in trust.check_t2(curve).screens)
        self.assertLess(flagged, 1)

    def test_known_constant(self):
        kg = load_registry_entry('KG256r1').domain
        b = _pi().candidates(255)[0]
        result = trust.check_t2(CurveParams(kg.p, kg.curve.a, b))
        self.assertIs(result.outcome, Outcome.FAIL)
        self.assertIn('known constant: b matches the expansion of pi', result.screens)

    def test_constants_file(self):
        kg = load_registry_entry('KG256r1').domain
        digits = format(kg.curve.a, 'x')
        path = self.create_tempfile(content=f'# local blacklist\nkg_a {digits}\n').full_path
        policy = trust.TrustPolicy.with_constants_file(path)
        self.assertLen(policy.constants, len(trust.default_constants()) + 1)
        result = trust.check_t2(kg.curve, policy)
        self.assertIn('known constant: a matches the expansion of kg_a', result.screens)

        bad = self.create_tempfile(content='only-a-name\n').full_path
        with self.assertRaises(InvalidArgument):
            trust.load_constants(bad)

    def test_constant_expansion(self):
        pi = _pi()
        self.assertEqual(pi.width, trust.EXPANSION_BITS)
        # 3.14159... = 0b11.001001000011111101...
        self.assertEqual(pi.candidates(8)[0], 0b11001001)
        self.assertEqual(pi.candidates(8)[1], 0b00100100)


class RigidityTest(absltest.TestCase):

    def test_outcomes(self):
        self.assertIs(trust.check_rigidity(_record()).outcome, Outcome.PASS)
        self.assertIs(trust.check_rigidity(fixture_source='/dev/random').outcome, Outcome.PASS)
        self.assertIs(trust.check_rigidity(_record(purposes=('prime',))).outcome, Outcome.UNKNOWN)
        self.assertIs(trust.check_rigidity().outcome, Outcome.UNKNOWN)


class T3Test(absltest.TestCase):

    def _config(self, tag='t3'):
        return GeneratorConfig(
            bits=24,
            thresholds=SecurityThresholds.desk(24),
            rng=SeededEntropy.from_passphrase(tag),
            trust_policy=trust.TrustPolicy(naf_limit=2),
        )

    def test_spread(self):
        result = trust.check_t3(self._config(), trials=3, tolerance_log2=1.0, workers=1)
        self.assertIs(result.outcome, Outcome.PASS, result.detail)
        self.assertLen(result.stats.rho_log2, 3)
        self.assertLen(result.stats.twist_rho_log2, 3)
        self.assertLessEqual(result.stats.spread, 1.0)
        for rho in result.stats.values:
            self.assertAlmostEqual(rho, 11.6, delta=0.4)

    def test_forty_bit_spread(self):
        config = GeneratorConfig(
            bits=40,
            thresholds=SecurityThresholds.desk(40),
            rng=SeededEntropy.from_passphrase('t3-forty'),
        )
        result = trust.check_t3(config, trials=3, workers=1)
        self.assertIs(result.outcome, Outcome.PASS, result.detail)
        self.assertLessEqual(result.stats.spread, 0.5)

    def test_tight_tolerance_fails(self):
        result = trust.check_t3(self._config(), trials=2, tolerance_log2=1e-9, workers=1)
        self.assertIs(result.outcome, Outcome.FAIL)

    def test_needs_two_trials(self):
        with self.assertRaises(InvalidArgument):
            trust.check_t3(self._config(), trials=1)

    def test_generation_failure_is_not_run(self):
        config = dataclasses.replace(self._config(), max_prime_retries=1, max_coefficient_retries=1,
                                     max_seed_restarts=0)
        result = trust.check_t3(config, trials=2, workers=1)
        if result.outcome is not Outcome.NOT_RUN:
            # a single draw can succeed; the report is then a regular one
            self.assertIsNotNone(result.stats)
        else:
            self.assertIn('generation failed', result.detail)


class TrustReportTest(absltest.TestCase):

    def test_trusted(self):
        t1 = trust.check_t1(_record())
        t2 = trust.T2Result(Outcome.PASS)
        report = trust.TrustReport(t1, t2, trust.T3Result(Outcome.PASS))
        self.assertTrue(report.trusted)
        self.assertFalse(trust.TrustReport(t1, t2, trust.T3Result(Outcome.NOT_RUN)).trusted)
        self.assertEqual(report.as_dict()['t2'], {'outcome': 'pass', 'screens': []})


if __name__ == '__main__':
    absltest.main()
