import math
from dataclasses import dataclass
from typing import Optional

from absl import logging

from ..errors import NotOrdinary
from ..numeric import DEFAULT_FACTOR_BUDGET, bounded_factor, is_probable_prime, isqrt, small_primes


@dataclass(frozen=True)
class CmDiscriminantResult:
    D: Optional[int]
    square_part: Optional[int]
    complete: bool
    method: str = 'factored'

    @property
    def log2_abs(self):
        return math.log2(-self.D) if self.D else None


def _fundamental(d):
    return d % 4 in (0, 1)


def _odd_squarefree_screen(m):
    """
    False when q^2 divides m for a trial-division prime q or when the
    remaining cofactor is a perfect square, True otherwise.
    """
    for q in small_primes()[1:]:
        if q * q > m:
            break
        if m % q == 0:
            m //= q
            if m % q == 0:
                return False
    if m == 1 or is_probable_prime(m):
        return True
    r = isqrt(m)
    return r * r != m


def _plausibly_fundamental(D):
    """D = 1 (mod 4) with odd part squarefree, or D = 4m with m = 2, 3 (mod 4)."""
    if D >= 0 or not _fundamental(D):
        return False
    m = -D
    if D % 4 == 0:
        m //= 4
        if -m % 4 not in (2, 3):
            return False
        if m % 2 == 0:
            m //= 2
    return _odd_squarefree_screen(m)


def _check_claim(v, D):
    """s with D * s^2 = v, or None."""
    if not _plausibly_fundamental(D) or v % D:
        return None
    s2 = v // D
    s = isqrt(s2)
    return s if s > 0 and s * s == s2 else None


def cm_discriminant(p, t, budget=DEFAULT_FACTOR_BUDGET, claimed_D=None):
    """
    Fundamental discriminant D < 0 with t^2 - 4p = D s^2.

    `claimed_D` is meant for published curves only. It is accepted when it
    divides t^2 - 4p with a square quotient and passes the fundamental
    screen: congruence class, no square of a trial-division prime and no
    square cofactor. Squarefreeness beyond that rests on the publisher.
    Otherwise t^2 - 4p is factored within `budget`; an incomplete
    factorisation leaves D unknown.
    """
    v = t * t - 4 * p
    if t % p == 0:
        raise NotOrdinary(f't = {t} = 0 (mod p): supersingular curve')
    if v >= 0:
        raise NotOrdinary(f't^2 - 4p = {v} >= 0: not an ordinary curve')

    if claimed_D is not None:
        s = _check_claim(v, claimed_D)
        if s is not None:
            return CmDiscriminantResult(claimed_D, s, True, method='claimed')
        logging.warning('claimed CM discriminant %d is not a fundamental divisor of t^2 - 4p', claimed_D)

    f = bounded_factor(-v, budget)
    if not f.complete:
        return CmDiscriminantResult(None, None, False)

    core, s = 1, 1
    for q, e in f.found_factors:
        if e % 2:
            core *= q
        s *= q**(e // 2)

    d = -core
    if _fundamental(d):
        return CmDiscriminantResult(d, s, True)
    # v = t^2 (mod 4) forces s even here
    return CmDiscriminantResult(4 * d, s // 2, True)
