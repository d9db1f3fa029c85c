"""
Multiplicative-transfer screens: MOV degree bound and the embedding degree
k = ord_n(p).
"""
from absl import logging

from ..errors import InvalidArgument
from ..numeric import DEFAULT_FACTOR_BUDGET, TRIAL_DIVISION_BOUND, bounded_factor
from .base import ExactOrder, LowerBoundOnly, Outcome


EMBEDDING_NOTE_DEGREE = 20


def check_mov(p, n, bound=100):
    """pass iff p^i != 1 (mod n) for all 1 <= i <= bound."""
    x = 1
    for _ in range(bound):
        x = x * p % n
        if x == 1:
            return Outcome.FAIL
    return Outcome.PASS


def _strip(base, k, n, primes):
    # k is a multiple of ord_n(base)
    for q in primes:
        while k % q == 0 and pow(base, k // q, n) == 1:
            k //= q
    return k


def embedding_degree(p, n, budget=DEFAULT_FACTOR_BUDGET, mov_bound=0):
    """
    Exact order of p modulo the prime n when n - 1 factors far enough,
    otherwise a verified lower bound.

    With n - 1 = S * U, S the factored part: if p^S = 1 the order divides S
    and is found by stripping. Otherwise k = ord(p^U) * gcd(k, U) and every
    prime factor of U exceeds the trial-division bound.
    """
    if p % n == 0:
        raise InvalidArgument('embedding degree needs p != 0 (mod n)')

    f = bounded_factor(n - 1, budget)
    S = f.factored_part
    if f.complete or pow(p, S, n) == 1:
        return ExactOrder(_strip(p, S, n, f.primes))

    U = f.unfactored_cofactor
    m = _strip(pow(p, U, n), S, n, f.primes)
    bound = max(m * (TRIAL_DIVISION_BOUND + 1), mov_bound + 1)
    logging.debug('embedding degree: n - 1 only partially factored, k >= %d', bound)
    return LowerBoundOnly(bound)


def embedding_outcome(evidence, n, denominator):
    """Criterion k >= (n - 1) / denominator."""
    if isinstance(evidence, ExactOrder):
        ok = evidence.value * denominator >= n - 1
        return Outcome.PASS if ok else Outcome.FAIL
    if evidence.bound * denominator >= n - 1:
        return Outcome.PASS
    return Outcome.UNKNOWN


def describe_embedding(evidence, denominator):
    if isinstance(evidence, ExactOrder):
        text = f'k = {evidence.value}'
        if evidence.value >= EMBEDDING_NOTE_DEGREE:
            text += f' (k >= {EMBEDDING_NOTE_DEGREE})'
    else:
        text = f'k >= {evidence.bound} (n - 1 not fully factored)'
    return f'{text}, required k >= (n - 1)/{denominator}'
