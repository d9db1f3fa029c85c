"""
Pollard rho on desk-scale curves, to check the 0.886 sqrt(n) cost model
empirically.

The walk runs on classes {P, -P}: every point is replaced by the
representative with the smaller y, which is the setting in which the
expected walk length up to the first repeated point is
sqrt(pi n / 4) ~ 0.886 sqrt(n).

Brent's detector (the default) needs a walk that is a function of the
current point, so short fruitless cycles are left deterministically, see
_CycleFreeWalk. The table detector remembers every point instead and
leaves a fruitless cycle by doubling wherever it notices one.
"""
import math
import random
from collections import deque
from dataclasses import dataclass

from absl import logging
from tqdm import tqdm

from .curve import INFINITY, _add, _mul
from .errors import Inconclusive, InvalidArgument, Refused
from .utils import Welford, pool_map
from .validate.rho import RHO_CONSTANT


MAX_ORDER = 2**40
DEFAULT_BUCKETS = 16
DETECTORS = ('brent', 'table')
# longest cycle of the plain walk that the Brent walk steps out of
SHORT_CYCLE_BOUND = 12


@dataclass(frozen=True)
class RhoTrialResult:
    k_recovered: int
    iterations: int
    restarts: int
    additions: int = 0


@dataclass(frozen=True)
class RhoStats:
    trials: int
    mean_iterations: float
    predicted: float
    ratio: float
    std: float = 0.0
    mean_restarts: float = 0.0
    mean_additions: float = 0.0

    def as_dict(self):
        return {
            'trials': self.trials,
            'mean_iterations': self.mean_iterations,
            'predicted': self.predicted,
            'ratio': self.ratio,
            'std': self.std,
            'mean_restarts': self.mean_restarts,
            'mean_additions': self.mean_additions,
        }


def predicted_iterations(n):
    return RHO_CONSTANT * math.sqrt(n)


class _Walk:
    """Additive walk on classes {P, -P}. States are (X, a, b) with X = aG + bQ in canonical form."""

    def __init__(self, domain, Q, buckets, rng):
        self.curve = domain.curve
        self.n = domain.n
        self.G, self.Q = domain.G, Q
        self.rng = rng

        self.steps = []
        while len(self.steps) < buckets:
            c, d = rng.randrange(self.n), rng.randrange(self.n)
            R = self._combine(c, d)
            if R is not INFINITY:
                self.steps.append((R, c, d))


    def _combine(self, c, d):
        return _add(self.curve, _mul(self.curve, c, self.G), _mul(self.curve, d, self.Q))


    def _canonical(self, X, a, b):
        if X is INFINITY:
            return X, a, b
        x, y = X
        p = self.curve.p
        if y > p - y:
            return (x, p - y), -a % self.n, -b % self.n
        return X, a, b


    def start(self):
        """Fresh random start aG + bQ."""
        while True:
            a, b = self.rng.randrange(self.n), self.rng.randrange(self.n)
            X = self._combine(a, b)
            if X is not INFINITY:
                return self._canonical(X, a, b)


    def step(self, state):
        X, a, b = state
        R, c, d = self.steps[X[0] % len(self.steps)]
        return self._canonical(_add(self.curve, X, R), (a + c) % self.n, (b + d) % self.n)


    def double(self, state):
        X, a, b = state
        return self._canonical(_add(self.curve, X, X), 2 * a % self.n, 2 * b % self.n)


class _Degenerate(Exception):
    """The walk produced aG + bQ = O."""

    def __init__(self, state, additions):
        super().__init__(state)
        self.state = state
        self.additions = additions


class _CycleFreeWalk:
    """
    Iterates the map X -> step(X), except that a point lying on a cycle of
    `step` of length at most SHORT_CYCLE_BOUND moves to twice the smallest
    point of that cycle. The map depends on X alone, so Brent's detector
    applies to it.

    The next SHORT_CYCLE_BOUND states are kept in a window; a move costs one
    addition, leaving a cycle costs SHORT_CYCLE_BOUND + 1.
    """

    def __init__(self, walk, state):
        self.walk = walk
        self.additions = 0
        self._fill(state)


    def _fill(self, state):
        self.state = state
        self.ahead = deque()
        last = state
        for _ in range(SHORT_CYCLE_BOUND):
            last = self._next(last)
            self.ahead.append(last)


    def _next(self, state):
        following = self.walk.step(state)
        self.additions += 1
        if following[0] is INFINITY:
            raise _Degenerate(following, self.additions)
        return following


    def advance(self):
        X = self.state[0]
        for length, s in enumerate(self.ahead, 1):
            if s[0] == X:
                break
        else:
            self.state = self.ahead.popleft()
            self.ahead.append(self._next(self.ahead[-1]))
            return

        cycle = [self.state] + [self.ahead[i] for i in range(length - 1)]
        escaped = self.walk.double(min(cycle, key=lambda s: s[0]))
        self.additions += 1
        if escaped[0] is INFINITY:
            raise _Degenerate(escaped, self.additions)
        self._fill(escaped)


def _solve(n, a1, b1, a2, b2):
    """k with a1 + b1 k = a2 + b2 k (mod n), or None for a useless collision."""
    db = (b1 - b2) % n
    if db == 0:
        return None
    return (a2 - a1) * pow(db, -1, n) % n


def _check(domain, Q, k):
    return _mul(domain.curve, k, domain.G) == Q


def _solve_table(domain, Q, walk, max_iterations):
    seen = {}
    iterations = restarts = 0
    state = walk.start()
    while iterations < max_iterations:
        X, a, b = state
        if X is INFINITY:
            # aG + bQ = O
            k = _solve(domain.n, a, b, 0, 0)
            if k is not None and _check(domain, Q, k):
                return RhoTrialResult(k, iterations, restarts, iterations)
            state = walk.start()
            restarts += 1
            continue

        if X[0] in seen:
            k = _solve(domain.n, a, b, *seen[X[0]])
            if k is not None and _check(domain, Q, k):
                return RhoTrialResult(k, iterations, restarts, iterations)
            # no k: leave by doubling
            state = walk.double(state)
            iterations += 1
            restarts += 1
            continue

        seen[X[0]] = a, b
        state = walk.step(state)
        iterations += 1
    raise Inconclusive(f'no collision within {max_iterations} iterations')


def _brent_cycle(walk, start, budget):
    """
    (mu, lam, first, second, additions) for the sequence from `start`:
    `first` and `second` are the states at steps mu and mu + lam, the first
    repeated point reached along two different paths.
    """
    hare = _CycleFreeWalk(walk, start)
    tortoise = start
    power = lam = 1
    hare.advance()
    while hare.state[0] != tortoise[0]:
        if hare.additions > budget:
            raise Inconclusive(f'no cycle within {budget} additions')
        if power == lam:
            tortoise = hare.state
            power *= 2
            lam = 0
        hare.advance()
        lam += 1

    first, second = _CycleFreeWalk(walk, start), _CycleFreeWalk(walk, start)
    for _ in range(lam):
        second.advance()
    mu = 0
    while first.state[0] != second.state[0]:
        first.advance()
        second.advance()
        mu += 1
    return mu, lam, first.state, second.state, hare.additions + first.additions + second.additions


def _solve_brent(domain, Q, walk, max_iterations):
    iterations = restarts = additions = 0
    while additions < max_iterations:
        try:
            mu, lam, first, second, spent = _brent_cycle(walk, walk.start(), max_iterations - additions)
        except _Degenerate as e:
            _, a, b = e.state
            k = _solve(domain.n, a, b, 0, 0)
            additions += e.additions
            iterations += e.additions
        else:
            k = _solve(domain.n, *first[1:], *second[1:])
            additions += spent
            iterations += mu + lam

        if k is not None and _check(domain, Q, k):
            return RhoTrialResult(k, iterations, restarts, additions)
        logging.debug('useless collision after %d additions, restarting the walk', additions)
        restarts += 1
    raise Inconclusive(f'no cycle within {max_iterations} additions')


def solve_ecdlp(domain, Q, seed=0, buckets=DEFAULT_BUCKETS, detector='brent', max_iterations=None):
    """
    Finds k with k G = Q by Pollard rho.

    `iterations` is the length of the walk up to its first repeated point:
    the additions until a collision with the table detector, mu + lambda
    with Brent's. `additions` also counts what Brent's detector spends on
    overshooting the cycle, locating its start and looking ahead for short
    cycles. `max_iterations` bounds the additions. A collision that yields
    no k restarts the walk from a fresh seed point with Brent's detector and
    escapes by doubling with the table; both count as restarts.
    """
    n = domain.n
    if n > MAX_ORDER:
        raise Refused(f'rho is only run for n <= 2^{MAX_ORDER.bit_length() - 1}, got a {n.bit_length()}-bit n')
    if detector not in DETECTORS:
        raise InvalidArgument(f'unknown detector {detector!r}, expected one of {DETECTORS}')
    if buckets < 2:
        raise InvalidArgument('the walk needs at least two buckets')

    if Q is INFINITY:
        return RhoTrialResult(0, 0, 0)

    max_iterations = max_iterations or int(100 * math.sqrt(n)) + 1000
    walk = _Walk(domain, Q, buckets, random.Random(seed))
    if detector == 'table':
        return _solve_table(domain, Q, walk, max_iterations)
    return _solve_brent(domain, Q, walk, max_iterations)


def _rho_trial(domain, seed, i, buckets, detector):
    rng = random.Random(f'{seed}:{i}')
    k = rng.randrange(1, domain.n)
    Q = _mul(domain.curve, k, domain.G)
    result = solve_ecdlp(domain, Q, seed=f'{seed}:{i}:walk', buckets=buckets, detector=detector)
    if result.k_recovered != k:
        raise Inconclusive(f'trial {i}: recovered {result.k_recovered}, expected {k}')
    return result


def rho_experiment(domain, trials=100, seed=0, workers=None, buckets=DEFAULT_BUCKETS, detector='brent',
                   progress=False):
    if trials < 30:
        raise InvalidArgument(f'an experiment needs at least 30 trials, got {trials}')

    args = [(domain, seed, i, buckets, detector) for i in range(trials)]
    results = pool_map(_rho_trial, args, workers)

    iterations, restarts, additions = Welford(), Welford(), Welford()
    for res in tqdm(results, disable=not progress, desc='rho trials'):
        iterations.update(res.iterations)
        restarts.update(res.restarts)
        additions.update(res.additions)

    predicted = predicted_iterations(domain.n)
    stats = RhoStats(
        trials=trials,
        mean_iterations=iterations.mean,
        predicted=predicted,
        ratio=iterations.mean / predicted,
        std=iterations.std,
        mean_restarts=restarts.mean,
        mean_additions=additions.mean,
    )
    logging.info('rho on a %d-bit n: walk length %.1f on average, model %.1f (ratio %.3f), %.1f additions in all',
                 domain.n.bit_length(), stats.mean_iterations, predicted, stats.ratio, stats.mean_additions)
    return stats
