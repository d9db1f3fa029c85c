"""
Curve and point orders at desk scale, and certification of externally
supplied orders for curves too large to count.

Engines:
  exhaustive   numpy-vectorised character sum, p < 2^20
  bsgs         baby-step/giant-step on E and its quadratic twist, p < 2^56
  external     the order is supplied by the caller and only certified
"""
import math
import random
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from absl import logging

from .curve import (INFINITY, Point, _add, _mul, hasse_interval, in_hasse_interval, quadratic_twist,
                    random_point)
from .errors import Inconclusive, InvalidArgument, InvalidMultiple, TooLarge, UnsupportedModulus
from .numeric import bounded_factor, is_probable_prime, isqrt


EXHAUSTIVE_LIMIT = 2**20
BSGS_LIMIT = 2**56
BSGS_POINT_BUDGET = 16
# below this, E and its twist can both leave several candidates in the Hasse interval
BSGS_MIN_FIELD = 2**10
ENGINES = ('exhaustive', 'bsgs', 'external')


@dataclass(frozen=True)
class OrderCertificate:
    N: int
    method: str
    witness_points: Tuple[Point, ...]
    hasse_ok: bool
    uniqueness_ok: bool
    failed: bool = False

    @property
    def certified(self):
        return self.hasse_ok and not self.failed


    @property
    def detail(self):
        if not self.hasse_ok:
            return f'N = {self.N} lies outside the Hasse interval'
        if self.failed:
            return f'a witness point is not annihilated by N = {self.N}'
        how = 'unique in the Hasse interval' if self.uniqueness_ok else 'uniqueness not established'
        return f'{self.method} order, {len(self.witness_points)} witness point(s), {how}'


def count_points_exhaustive(curve):
    p = curve.p
    if p >= EXHAUSTIVE_LIMIT:
        raise TooLarge(f'exhaustive counting is limited to p < 2^20, got a {p.bit_length()}-bit prime')

    r = np.arange(p, dtype=np.int64)
    # roots[v] = number of y with y^2 = v (mod p)
    roots = np.bincount(r * r % p, minlength=p)
    rhs = (r * r % p * r + curve.a * r + curve.b) % p
    return int(1 + roots[rhs].sum())


def point_order(curve, P, N, factorization):
    """Exact order of P by stripping prime factors from the multiple N."""
    if P is INFINITY:
        return 1
    if _mul(curve, N, P) is not INFINITY:
        raise InvalidMultiple(f'{N} is not a multiple of the order of {P}')
    if not factorization.complete:
        raise Inconclusive(f'factorisation of {N} is incomplete')

    m = N
    for q, e in factorization.found_factors:
        for _ in range(e):
            if _mul(curve, m // q, P) is INFINITY:
                m //= q
            else:
                break
    return m


def _order_from_multiple(curve, P, m):
    if is_probable_prime(m):
        return m
    return point_order(curve, P, m, bounded_factor(m))


def _bsgs_multiple(curve, P, lo, hi):
    """Some m in [lo, hi] with m*P = O, or the exact order if it is smaller than the baby-step table."""
    s = isqrt(hi - lo + 1) + 1

    baby = {}
    R = INFINITY
    for j in range(s):
        if j and R is INFINITY:
            return j, True
        baby.setdefault(R, j)
        R = _add(curve, R, P)

    step = _mul(curve, s, P)
    R = _mul(curve, lo, P)
    for i in range(s + 1):
        # (lo + i*s)*P = j*P  =>  (lo + i*s - j)*P = O
        j = baby.get(R)
        if j is not None:
            m = lo + i * s - j
            if lo <= m <= hi and m > 0:
                return m, False
        R = _add(curve, R, step)
    raise Inconclusive('baby-step/giant-step found no multiple in the Hasse interval')


def _crt(r1, m1, r2, m2):
    g = math.gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    l = m1 // g * m2
    k = (r2 - r1) // g * pow(m1 // g, -1, m2 // g) % (m2 // g) if m2 // g > 1 else 0
    return (r1 + m1 * k) % l, l


def _candidates(lo, hi, residue, modulus):
    first = lo + (residue - lo) % modulus
    if first > hi:
        return 0, None
    return (hi - first) // modulus + 1, first


def count_points_bsgs(curve, rng_seed=0):
    """
    Group order by accumulating point orders on E and on its quadratic twist
    (#E + #E' = 2p + 2) until a single candidate is left in the Hasse interval.
    Fields below BSGS_MIN_FIELD are counted exhaustively.
    """
    p = curve.p
    if p >= BSGS_LIMIT:
        raise UnsupportedModulus(f'baby-step/giant-step is limited to p < 2^56, got a {p.bit_length()}-bit prime')
    if p < BSGS_MIN_FIELD:
        return count_points_exhaustive(curve)

    rng = random.Random(rng_seed)
    E_twist = quadratic_twist(curve)
    lo, hi = hasse_interval(p)
    L, L_twist = 1, 1

    for i in range(BSGS_POINT_BUDGET):
        on_twist = i % 2 == 1
        C = E_twist if on_twist else curve
        P = random_point(C, rng)
        m, exact = _bsgs_multiple(C, P, lo, hi)
        order = m if exact else _order_from_multiple(C, P, m)
        if on_twist:
            L_twist = L_twist * order // math.gcd(L_twist, order)
        else:
            L = L * order // math.gcd(L, order)

        # N = 0 (mod L) and 2p + 2 - N = 0 (mod L_twist)
        solution = _crt(0, L, (2 * p + 2) % L_twist, L_twist)
        if solution is None:
            raise Inconclusive('inconsistent point orders on E and its twist')
        count, first = _candidates(lo, hi, *solution)
        if count == 1:
            logging.debug('bsgs: order %d of p=%d settled after %d points', first, p, i + 1)
            return first

    raise Inconclusive(f'order still ambiguous after {BSGS_POINT_BUDGET} points')


def count_points(curve, engine, rng_seed=0):
    if engine == 'exhaustive':
        return count_points_exhaustive(curve)
    if engine == 'bsgs':
        return count_points_bsgs(curve, rng_seed)
    raise InvalidArgument(f'engine {engine!r} cannot compute orders')


def _largest_certified_factor(N, budget):
    if is_probable_prime(N):
        return N
    factorization = bounded_factor(N, budget)
    primes = factorization.primes
    return max(primes) if primes else None


def certify_order(curve, claimed_N, trials=5, seed=0, method='external', budget=2**6):
    """
    Checks Hasse membership and N*P = O on `trials` random points. Uniqueness
    holds when a prime q | N with q > 4 sqrt(p) is witnessed in some ord(P):
    the Hasse interval then contains a single multiple of q.
    """
    if trials < 1:
        raise InvalidArgument('at least one trial is required')
    p = curve.p
    hasse_ok = in_hasse_interval(p, claimed_N)

    rng = random.Random(seed)
    q = _largest_certified_factor(claimed_N, budget) if hasse_ok else None
    large = q is not None and q * q > 16 * p

    witnesses = []
    failed = False
    uniqueness_ok = False
    for _ in range(trials):
        P = random_point(curve, rng)
        witnesses.append(P)
        if _mul(curve, claimed_N, P) is not INFINITY:
            failed = True
            continue
        if large and _mul(curve, claimed_N // q, P) is not INFINITY:
            uniqueness_ok = True

    return OrderCertificate(
        N=claimed_N,
        method=method,
        witness_points=tuple(witnesses),
        hasse_ok=hasse_ok,
        uniqueness_ok=uniqueness_ok and not failed,
        failed=failed,
    )
