"""
Command line entry point.

    tcurve generate --bits 40 --seed_source shake256-seed --seed demo --out demo.curve
    tcurve verify KG256r1
    tcurve audit a.curve b.curve KG384r1
    tcurve rho --bits 20 --trials 100
    tcurve bench KG256r1 --trials 100
    tcurve registry list | show <name>

Exit codes: 0 safe, 1 weak (or generation gave up), 2 verdict unknown,
3 bad usage or malformed input.
"""
import json
import os
import sys

from absl import app
from absl import flags
from absl import logging

from .curvefile import CurveFile
from .ecdsa import bench
from .entropy import make_source
from .errors import CurveError, CurveFileError, GenerationFailure, InvalidArgument, Refused
from .generate import GeneratorConfig, generate, prime_order_curve
from .registry import list_registry, load_registry_entry
from .rholab import rho_experiment
from .trust import DEFAULT_ALLOWED_SOURCES, TrustPolicy
from .validate import Outcome, SecurityThresholds, audit_matrix, combine, full_audit


FLAGS = flags.FLAGS

flags.DEFINE_integer('bits', 40, 'field size in bits', lower_bound=16)
flags.DEFINE_enum('engine', 'bsgs', ['exhaustive', 'bsgs'], 'point counting engine used by generate')
flags.DEFINE_enum('profile', None, ['production', 'desk'],
                  'threshold profile (default: desk for generate, production for verify and audit)')
flags.DEFINE_string('seed_source', 'os.urandom', 'entropy source: os.urandom, /dev/urandom, /dev/random or shake256-seed')
flags.DEFINE_string('seed', None, 'seed passphrase for shake256-seed, and the sampling seed of the validators')
flags.DEFINE_string('out', None, 'output curve file for generate (default: stdout)')
flags.DEFINE_string('name', None, 'name written into generated curve files')
flags.DEFINE_integer('trials', None, 'trials for rho (default 100) and bench (default 10000)', lower_bound=1)
flags.DEFINE_integer('factor_budget', 256, 'factoring budget for embedding degree and CM discriminant', lower_bound=1)
flags.DEFINE_integer('order_trials', 3, 'random points used to certify a claimed group order', lower_bound=1)
flags.DEFINE_integer('workers', None, 'worker processes for rho and T3 (default: one per core)', lower_bound=1)
flags.DEFINE_integer('t3_trials', 0, 'independent reruns for the T3 strength spread (0 disables it)', lower_bound=0)
flags.DEFINE_list('allowed_sources', list(DEFAULT_ALLOWED_SOURCES), 'entropy sources accepted by T1')
flags.DEFINE_string('constants_file', None, 'extra "name hex" constants for the T2 screen')
flags.DEFINE_bool('json', False, 'print machine readable JSON instead of tables')


COMMANDS = ('generate', 'verify', 'audit', 'rho', 'bench', 'registry')

EXIT_SAFE = 0
EXIT_WEAK = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3

VERDICT_LINES = {
    Outcome.PASS: 'Cryptographically safe elliptic curve',
    Outcome.FAIL: 'Weak elliptic curve',
    Outcome.UNKNOWN: 'Verdict unknown: some checks could not be completed',
}


def exit_code(verdict):
    return {Outcome.PASS: EXIT_SAFE, Outcome.FAIL: EXIT_WEAK}.get(verdict, EXIT_UNKNOWN)


def _emit(payload, as_json, text):
    if as_json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(text)


def resolve_curve(target):
    """A curve file path, or the name of a built-in curve."""
    if os.path.exists(target):
        return CurveFile.load(target)
    if target in list_registry():
        return load_registry_entry(target).curve_file
    raise CurveFileError(f'{target}: no such file or registry curve', kind='missing')


def _verifier_thresholds(curve_file, profile, factor_budget):
    return SecurityThresholds.from_profile(profile or 'production', bits=curve_file.p.bit_length(),
                                           role='verifier', factor_budget=factor_budget)


def _audit(curve_file, profile, factor_budget, order_trials, seed):
    thresholds = _verifier_thresholds(curve_file, profile, factor_budget)
    return full_audit(
        curve_file.domain, thresholds,
        seed_record=curve_file.seed_record,
        fixture_source=curve_file.fixture_source,
        name=curve_file.name,
        claimed_D=curve_file.published_cm_discriminant,
        order_trials=order_trials,
        seed=seed,
    )


def cmd_generate(bits=40, engine='bsgs', profile=None, seed_source='os.urandom', seed=None, out=None, name=None,
                 t3_trials=0, allowed_sources=DEFAULT_ALLOWED_SOURCES, constants_file=None, factor_budget=256,
                 order_trials=3, as_json=False):
    thresholds = SecurityThresholds.from_profile(profile or 'desk', bits=bits, role='generator',
                                                 factor_budget=factor_budget)
    policy_args = dict(allowed_sources=tuple(allowed_sources))
    policy = TrustPolicy.with_constants_file(constants_file, **policy_args) if constants_file \
        else TrustPolicy(**policy_args)
    config = GeneratorConfig(
        bits=bits,
        thresholds=thresholds,
        order_engine=engine,
        rng=make_source(seed_source, seed),
        trust_policy=policy,
        t3_trials=t3_trials,
        order_trials=order_trials,
    )

    try:
        result = generate(config)
    except GenerationFailure as e:
        print(f'generation failed at stage {e.stage}: {e}', file=sys.stderr)
        return EXIT_WEAK

    curve_file = CurveFile.from_generation(name or f'gen{bits}', result)
    if out:
        curve_file.save(out)
        logging.info('wrote %s', out)

    payload = {
        'curve': curve_file.serialize(),
        'report': result.report.as_dict(),
        'trust': result.trust_report.as_dict(),
    }
    text = curve_file.serialize().rstrip('\n') if not out else result.report.to_frame().to_string()
    _emit(payload, as_json, text)
    return exit_code(result.report.verdict)


def cmd_verify(target, profile=None, factor_budget=256, order_trials=3, seed=0, as_json=False):
    curve_file = resolve_curve(target)
    audit = _audit(curve_file, profile, factor_budget, order_trials, seed)
    report = audit.report

    verdict = report.verdict
    text = '\n'.join([f'{curve_file.name} ({curve_file.provenance})', report.to_frame().to_string(), '',
                      *(f'note: {note}' for note in report.notes), VERDICT_LINES[verdict]])
    _emit({'name': curve_file.name, 'provenance': curve_file.provenance, **report.as_dict()}, as_json, text)
    return exit_code(verdict)


def cmd_audit(targets, profile=None, factor_budget=256, order_trials=3, seed=0, as_json=False):
    """
    Audits every target; unreadable files are reported and skipped. The exit
    code is 3 if any target could not be read, otherwise that of the worst
    verdict.
    """
    if not targets:
        print('audit needs at least one curve file or registry name', file=sys.stderr)
        return EXIT_USAGE

    audits, errors = [], {}
    for target in targets:
        try:
            curve_file = resolve_curve(target)
        except InvalidArgument as e:
            errors[target] = str(e)
            print(f'{target}: {e}', file=sys.stderr)
            continue
        audits.append(_audit(curve_file, profile, factor_budget, order_trials, seed))

    matrix = audit_matrix(audits)
    payload = {
        'matrix': {a.name: {k: str(v.outcome) for k, v in a.rows.items()} for a in audits},
        'details': {a.name: {k: v.detail for k, v in a.rows.items()} for a in audits},
        'errors': errors,
    }
    _emit(payload, as_json, matrix.to_string())

    if errors:
        return EXIT_USAGE
    return exit_code(combine(a.rows['safeCurve'].outcome for a in audits))


def cmd_rho(bits=20, trials=100, seed=0, workers=None, as_json=False):
    domain = prime_order_curve(bits, seed=seed)
    stats = rho_experiment(domain, trials=trials, seed=seed, workers=workers, progress=not as_json)
    payload = {'p': domain.p, 'a': domain.curve.a, 'b': domain.curve.b, 'n': domain.n, **stats.as_dict()}
    text = '\n'.join(f'{k:>16}: {v}' for k, v in payload.items())
    _emit(payload, as_json, text)
    return EXIT_SAFE


def cmd_bench(target, trials=10000, as_json=False):
    curve_file = resolve_curve(target)
    if not curve_file.has_order:
        raise CurveFileError(f'{curve_file.name} has no group order; ECDSA needs n', kind='order')
    report = bench(curve_file.domain, trials=trials, name=curve_file.name)
    _emit(report.as_dict(), as_json, report.to_frame().to_string())
    return EXIT_SAFE


def cmd_registry(args, as_json=False):
    action = args[0] if args else 'list'
    if action == 'list':
        names = list_registry()
        entries = [load_registry_entry(name) for name in names]
        payload = {e.name: e.provenance for e in entries}
        _emit(payload, as_json, '\n'.join(f'{e.name:<16}{e.provenance}' for e in entries))
        return EXIT_SAFE
    if action == 'show' and len(args) == 2:
        entry = load_registry_entry(args[1])
        _emit({'name': entry.name, 'text': entry.text}, as_json, entry.text.rstrip('\n'))
        return EXIT_SAFE
    raise InvalidArgument('usage: registry list | registry show <name>')


def dispatch(command, args):
    seed = FLAGS.seed if FLAGS.seed is not None else 0

    if command == 'generate':
        return cmd_generate(
            bits=FLAGS.bits, engine=FLAGS.engine, profile=FLAGS.profile, seed_source=FLAGS.seed_source,
            seed=FLAGS.seed, out=FLAGS.out, name=FLAGS.name, t3_trials=FLAGS.t3_trials,
            allowed_sources=FLAGS.allowed_sources, constants_file=FLAGS.constants_file,
            factor_budget=FLAGS.factor_budget, order_trials=FLAGS.order_trials, as_json=FLAGS.json,
        )
    if command == 'verify':
        if len(args) != 1:
            raise InvalidArgument('usage: verify <curve file or registry name>')
        return cmd_verify(args[0], FLAGS.profile, FLAGS.factor_budget, FLAGS.order_trials, seed, FLAGS.json)
    if command == 'audit':
        return cmd_audit(args, FLAGS.profile, FLAGS.factor_budget, FLAGS.order_trials, seed, FLAGS.json)
    if command == 'rho':
        return cmd_rho(20 if FLAGS['bits'].using_default_value else FLAGS.bits, FLAGS.trials or 100, seed, FLAGS.workers,
                       FLAGS.json)
    if command == 'bench':
        if len(args) != 1:
            raise InvalidArgument('usage: bench <curve file or registry name>')
        return cmd_bench(args[0], FLAGS.trials or 10000, FLAGS.json)
    if command == 'registry':
        return cmd_registry(args, FLAGS.json)
    raise InvalidArgument(f'unknown command {command!r}, expected one of {", ".join(COMMANDS)}')


def run(argv):
    """Runs a command and maps its errors onto exit codes."""
    if len(argv) < 2:
        print(__doc__, file=sys.stderr)
        return EXIT_USAGE
    try:
        return dispatch(argv[1], argv[2:])
    except GenerationFailure as e:
        print(f'generation failed at stage {e.stage}: {e}', file=sys.stderr)
        return EXIT_WEAK
    except (InvalidArgument, Refused) as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_USAGE
    except CurveError as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_WEAK


def parse_flags(argv):
    try:
        return FLAGS(argv)
    except flags.Error as e:
        print(f'error: {e}', file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _main(argv):
    return run(argv)


def main():
    app.run(_main, flags_parser=parse_flags)


if __name__ == '__main__':
    main()
