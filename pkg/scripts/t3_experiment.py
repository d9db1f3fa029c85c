import pandas as pd
from absl import app
from absl import flags

from trustcurve.entropy import make_source
from trustcurve.generate import GeneratorConfig
from trustcurve.trust import TrustPolicy, check_t3
from trustcurve.validate import SecurityThresholds


FLAGS = flags.FLAGS
flags.DEFINE_integer('bits', 32, 'field size in bits')
flags.DEFINE_integer('trials', 8, 'independent generator runs')
flags.DEFINE_float('tolerance', 0.5, 'accepted spread of the rho costs, in bits')
flags.DEFINE_integer('naf_limit', 6, 'NAF weight at or below which p counts as a special form')
flags.DEFINE_string('seed_source', 'os.urandom', 'entropy source')
flags.DEFINE_string('seed', None, 'seed passphrase, for a replayable batch')
flags.DEFINE_integer('workers', None, 'worker processes (default: one per core)')
flags.DEFINE_integer('timeout', None, 'seconds to wait for the whole batch')


def main(argv):
    config = GeneratorConfig(
        bits=FLAGS.bits,
        thresholds=SecurityThresholds.desk(FLAGS.bits),
        rng=make_source(FLAGS.seed_source, FLAGS.seed),
        trust_policy=TrustPolicy(naf_limit=FLAGS.naf_limit, t3_tolerance_log2=FLAGS.tolerance),
    )
    result = check_t3(config, FLAGS.trials, FLAGS.tolerance, workers=FLAGS.workers, timeout=FLAGS.timeout)

    print(f'T3: {result.outcome} ({result.detail})')
    if result.stats is not None:
        df = pd.DataFrame({'rho_log2': result.stats.rho_log2, 'twist_rho_log2': result.stats.twist_rho_log2})
        print(df.describe().to_string())


if __name__ == '__main__':
    app.run(main)
