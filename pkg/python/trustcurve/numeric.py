"""
Integer and modular arithmetic substrate: primality, modular square roots,
Jacobi symbols and budget-bounded factorisation.

Everything here is a pure function of its arguments. Randomised routines
derive their randomness from an explicit seed so that results are
reproducible.
"""
import math
import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from .errors import InvalidArgument, InsufficientCertificate, UnsupportedModulus


MILLER_RABIN_ROUNDS = 64
DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
TRIAL_DIVISION_BOUND = 10**6

# one effort unit = one batch of rho steps
RHO_BATCH = 2**12
DEFAULT_FACTOR_BUDGET = 2**20


@lru_cache(maxsize=None)
def small_primes(limit=TRIAL_DIVISION_BOUND):
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i*i::i] = False
    return tuple(int(q) for q in np.nonzero(sieve)[0])


def mod_pow(base, exponent, modulus):
    if modulus < 1:
        raise InvalidArgument(f'modulus must be positive, got {modulus}')
    if exponent < 0:
        raise InvalidArgument('exponent must be non-negative')
    return pow(base, exponent, modulus)


def isqrt(n):
    if n < 0:
        raise InvalidArgument('isqrt of a negative number')
    return math.isqrt(n)


def iroot(n, k):
    """Largest r with r**k <= n."""
    if n < 0 or k < 1:
        raise InvalidArgument('iroot needs n >= 0 and k >= 1')
    if n < 2 or k == 1:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x**(k - 1)) // k
        if y >= x:
            return x
        x = y


def is_probable_prime(n, rounds=MILLER_RABIN_ROUNDS):
    """
    Miller-Rabin. Deterministic below 2^64 (fixed witness set), otherwise
    `rounds` random witnesses drawn from a generator seeded with n itself.
    """
    if rounds < 1:
        raise InvalidArgument('at least one Miller-Rabin round is required')
    if n < 2:
        return False
    for q in DETERMINISTIC_BASES:
        if n == q:
            return True
        if n % q == 0:
            return False

    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1

    if n < 2**64:
        bases = DETERMINISTIC_BASES
    else:
        rng = random.Random(n)
        bases = [rng.randrange(2, n - 1) for _ in range(rounds)]

    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n):
    """Smallest probable prime >= n."""
    if n <= 2:
        return 2
    n |= 1
    while not is_probable_prime(n):
        n += 2
    return n


def jacobi(a, n):
    if n < 1 or n % 2 == 0:
        raise InvalidArgument(f'Jacobi symbol needs an odd positive modulus, got {n}')
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod(a, p):
    """
    Principal square root a^((p+1)/4) for p = 3 (mod 4), or None for
    non-residues. The other root is p - y.
    """
    if p % 4 != 3:
        raise UnsupportedModulus(f'square roots are only supported for p = 3 (mod 4), got p mod 4 = {p % 4}')
    a %= p
    y = pow(a, (p + 1) // 4, p)
    if y * y % p != a:
        return None
    return y


def naf(k):
    """Non-adjacent form of k >= 0, least significant digit first."""
    digits = []
    while k > 0:
        if k % 2:
            d = 2 - (k % 4)
            k -= d
        else:
            d = 0
        digits.append(d)
        k //= 2
    return digits


def naf_weight(k):
    return sum(1 for d in naf(k) if d)


class PrimeModulus(int):
    """An odd probable prime used as a field order (its bit length is `l`)."""

    def __new__(cls, value, check=True):
        value = int(value)
        if check and (value < 3 or not is_probable_prime(value)):
            raise InvalidArgument(f'{value} is not an odd prime')
        return super(PrimeModulus, cls).__new__(cls, value)


    @property
    def bits(self):
        return self.bit_length()


@dataclass(frozen=True)
class PartialFactorization:
    target: int
    found_factors: Tuple[Tuple[int, int], ...]
    unfactored_cofactor: int = 1

    def __post_init__(self):
        if self.unfactored_cofactor < 1:
            raise InvalidArgument('unfactored cofactor must be >= 1')
        if self.factored_part * self.unfactored_cofactor != self.target:
            raise InvalidArgument('factors do not multiply back to the target')


    @property
    def complete(self):
        return self.unfactored_cofactor == 1


    @property
    def factored_part(self):
        F = 1
        for q, e in self.found_factors:
            F *= q**e
        return F


    @property
    def primes(self):
        return tuple(q for q, _ in self.found_factors)


    def as_dict(self):
        return dict(self.found_factors)


@dataclass(frozen=True)
class PocklingtonCertificate:
    n: int
    factored_part: PartialFactorization
    witness: int


def verify_pocklington(cert):
    n, a = cert.n, cert.witness
    if n < 3 or cert.factored_part.target != n - 1:
        return False

    F = cert.factored_part.factored_part
    if F * F <= n:
        raise InsufficientCertificate(f'factored part {F} does not exceed sqrt({n})')

    if pow(a, n - 1, n) != 1:
        return False
    for q in cert.factored_part.primes:
        if not is_probable_prime(q):
            return False
        if math.gcd(pow(a, (n - 1) // q, n) - 1, n) != 1:
            return False
    return True


def pocklington_certificate(n, budget=DEFAULT_FACTOR_BUDGET, max_witness=1000):
    """Builds a certificate for n, or None when n - 1 does not factor far enough."""
    if n < 5 or n % 2 == 0:
        return None
    factorization = bounded_factor(n - 1, budget)
    F = factorization.factored_part
    if F * F <= n:
        return None

    for a in range(2, min(max_witness, n - 1)):
        cert = PocklingtonCertificate(n, factorization, a)
        if verify_pocklington(cert):
            return cert
    return None


def _perfect_power(c):
    # all prime factors of c exceed the trial bound, which caps the exponent
    max_k = c.bit_length() // (TRIAL_DIVISION_BOUND.bit_length() - 1) + 1
    for k in small_primes(max(max_k, 2)):
        if k > max_k:
            break
        r = iroot(c, k)
        if r > 1 and r**k == c:
            return r, k
    return c, 1


def _pollard_pm1(n, bound):
    a = 2
    for i, q in enumerate(small_primes(bound)):
        qe = q
        while qe * q <= bound:
            qe *= q
        a = pow(a, qe, n)
        if i % 512 == 511:
            g = math.gcd(a - 1, n)
            if 1 < g < n:
                return g
            if g == n:
                return None
    g = math.gcd(a - 1, n)
    return g if 1 < g < n else None


def _brent_rho(n, max_steps, rng):
    """Brent's variant of Pollard rho with batched gcds. Returns (factor or None, steps)."""
    steps = 0
    while steps < max_steps:
        y, c = rng.randrange(1, n), rng.randrange(1, n)
        g = r = q = 1
        x = ys = y
        while g == 1 and steps < max_steps:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            steps += r
            k = 0
            while k < r and g == 1:
                ys = y
                batch = min(RHO_BATCH, r - k)
                for _ in range(batch):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += batch
                steps += batch
            r *= 2

        if g == n:
            # batch overshot, replay it one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g, steps
    return None, steps


def _split(c, budget, rng):
    """Tries to split composite c within `budget` effort units. Returns (factor or None, units spent)."""
    if budget <= 0:
        return None, 0

    # short rho run first: small composites split long before p-1 pays off
    quick = min(budget * RHO_BATCH // 4, 8 * iroot(c, 4) + RHO_BATCH)
    d, steps = _brent_rho(c, quick, rng)
    spent = -(-steps // RHO_BATCH)
    if d:
        return d, spent

    pm1_bound = min(TRIAL_DIVISION_BOUND, max(1000, budget * RHO_BATCH // 8))
    spent += max(1, (pm1_bound * 3 // 2) // RHO_BATCH)
    d = _pollard_pm1(c, pm1_bound)
    if d or spent >= budget:
        return d, spent

    d, steps = _brent_rho(c, (budget - spent) * RHO_BATCH, rng)
    spent += -(-steps // RHO_BATCH)
    return d, spent


def bounded_factor(n, budget=DEFAULT_FACTOR_BUDGET, seed=0):
    """
    Trial division up to TRIAL_DIVISION_BOUND, then Pollard p-1 and Brent-rho
    until `budget` effort units are spent. Deterministic for fixed (budget, seed).
    """
    if n < 1:
        raise InvalidArgument(f'cannot factor {n}')

    factors = Counter()
    m = n
    exhausted = True
    for q in small_primes():
        if q * q > m:
            exhausted = False
            break
        if m % q == 0:
            while m % q == 0:
                m //= q
                factors[q] += 1

    pending = []
    if m > 1:
        if not exhausted:
            factors[m] += 1
        else:
            pending.append(m)

    rng = random.Random(seed)
    remaining = budget
    unfactored = 1
    while pending:
        c = pending.pop()
        if c == 1:
            continue
        if is_probable_prime(c):
            factors[c] += 1
            continue
        root, k = _perfect_power(c)
        if k > 1:
            pending.extend([root] * k)
            continue

        d, spent = _split(c, remaining, rng)
        remaining -= spent
        if d is None:
            unfactored *= c
        else:
            pending.extend([d, c // d])

    for q in list(factors):
        while unfactored % q == 0:
            unfactored //= q
            factors[q] += 1

    return PartialFactorization(n, tuple(sorted(factors.items())), unfactored)


def multiplicative_order(a, n, factorization):
    """Order of a modulo n, given the complete factorisation of a multiple of it."""
    if not factorization.complete:
        raise InvalidArgument('multiplicative order needs a complete factorisation')
    k = factorization.target
    if pow(a, k, n) != 1:
        raise InvalidArgument(f'{a}^{k} != 1 (mod {n})')
    for q, _ in factorization.found_factors:
        while k % q == 0 and pow(a, k // q, n) == 1:
            k //= q
    return k
