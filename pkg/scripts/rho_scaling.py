import json

import pandas as pd
from absl import app
from absl import flags

from trustcurve.generate import prime_order_curve
from trustcurve.rholab import rho_experiment


FLAGS = flags.FLAGS
flags.DEFINE_list('bits', ['20', '24', '28'], 'field sizes to run the rho experiment on')
flags.DEFINE_integer('trials', 100, 'collisions per field size')
flags.DEFINE_enum('detector', 'brent', ['brent', 'table'], 'collision detector')
flags.DEFINE_integer('workers', None, 'worker processes (default: one per core)')
flags.DEFINE_string('seed', 'rho-scaling', 'seed passphrase for the curves and the walks')
flags.DEFINE_string('outfile', None, 'optional CSV file for the summary table')


def main(argv):
    rows = []
    for bits in map(int, FLAGS.bits):
        domain = prime_order_curve(bits, seed=f'{FLAGS.seed}-{bits}')
        print(f'{bits} bits: p={domain.p} a={domain.curve.a} b={domain.curve.b} n={domain.n}')

        stats = rho_experiment(domain, trials=FLAGS.trials, seed=FLAGS.seed, workers=FLAGS.workers,
                               detector=FLAGS.detector, progress=True)
        rows.append({'bits': bits, 'n': domain.n, **stats.as_dict()})

    df = pd.DataFrame(rows).set_index('bits')
    print(df.to_string())
    print(json.dumps({'mean_ratio': df['ratio'].mean()}))

    if FLAGS.outfile:
        df.to_csv(FLAGS.outfile)


if __name__ == '__main__':
    app.run(main)
