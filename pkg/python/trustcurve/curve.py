"""
Short Weierstrass curves y^2 = x^3 + ax + b over F_p in affine coordinates.

Points are `(x, y)` tuples and the point at infinity is `INFINITY` (None).
Nothing in this module is constant time: it is a parameter-engineering tool,
not a production signer.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

from sympy.ntheory.residue_ntheory import sqrt_mod as sympy_sqrt_mod

from .errors import InvalidArgument, InvalidOrder, InvalidPoint
from .numeric import isqrt, jacobi, sqrt_mod


INFINITY = None
Point = Optional[Tuple[int, int]]


@dataclass(frozen=True)
class CurveParams:
    p: int
    a: int
    b: int

    def __post_init__(self):
        if self.p < 5 or self.p % 2 == 0:
            raise InvalidArgument(f'field order must be an odd prime > 3, got {self.p}')
        if not (0 <= self.a < self.p and 0 <= self.b < self.p):
            raise InvalidArgument('coefficients must be reduced modulo p')


    def rhs(self, x):
        return (x * x * x + self.a * x + self.b) % self.p


@dataclass(frozen=True)
class DomainParams:
    curve: CurveParams
    G: Point
    N: int
    n: int
    h: int

    @property
    def p(self):
        return self.curve.p


def discriminant(curve):
    p = curve.p
    return (4 * pow(curve.a, 3, p) + 27 * curve.b * curve.b) % p


def is_on_curve(curve, P):
    if P is INFINITY:
        return True
    x, y = P
    if not (0 <= x < curve.p and 0 <= y < curve.p):
        return False
    return y * y % curve.p == curve.rhs(x)


def hasse_interval(p):
    """Integer bounds of [p + 1 - 2 sqrt(p), p + 1 + 2 sqrt(p)]."""
    width = isqrt(4 * p)
    return p + 1 - width, p + 1 + width


def in_hasse_interval(p, N):
    t = p + 1 - N
    return t * t <= 4 * p


def negate(curve, P):
    if P is INFINITY:
        return INFINITY
    return P[0], (-P[1]) % curve.p


def _add(curve, P, Q):
    if P is INFINITY:
        return Q
    if Q is INFINITY:
        return P

    p = curve.p
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return INFINITY
        lam = (3 * x1 * x1 + curve.a) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p

    x3 = (lam * lam - x1 - x2) % p
    y3 = (lam * (x1 - x3) - y1) % p
    return x3, y3


def _mul(curve, k, P):
    R = INFINITY
    while k:
        if k & 1:
            R = _add(curve, R, P)
        P = _add(curve, P, P)
        k >>= 1
    return R


def add(curve, P, Q):
    if not is_on_curve(curve, P) or not is_on_curve(curve, Q):
        raise InvalidPoint('addition of a point that is not on the curve')
    return _add(curve, P, Q)


def scalar_mul(curve, k, P):
    if k < 0:
        raise InvalidArgument('scalar must be non-negative')
    if not is_on_curve(curve, P):
        raise InvalidPoint(f'{P} is not on the curve')
    return _mul(curve, k, P)


def smallest_non_residue(p):
    c = 2
    while jacobi(c, p) != -1:
        c += 1
    return c


def twist(curve, c):
    p = curve.p
    if c % p == 0:
        raise InvalidArgument('twist factor must be non-zero modulo p')
    c2 = c * c % p
    return CurveParams(p, curve.a * c2 % p, curve.b * c2 * c % p)


def quadratic_twist(curve):
    """The twist by the smallest quadratic non-residue mod p."""
    return twist(curve, smallest_non_residue(curve.p))


def twist_order(p, N):
    if not in_hasse_interval(p, N):
        raise InvalidOrder(f'{N} is outside the Hasse interval of p = {p}')
    return 2 * p + 2 - N


def field_sqrt(v, p):
    if p % 4 == 3:
        return sqrt_mod(v, p)
    # supplied curves and toy fields may have p = 1 (mod 4)
    y = sympy_sqrt_mod(v, p)
    return None if y is None else int(y)


def random_point(curve, rng, max_tries=1000):
    """Uniform-ish affine point from a `random.Random`."""
    p = curve.p
    for _ in range(max_tries):
        x = rng.randrange(p)
        y = field_sqrt(curve.rhs(x), p)
        if y is None:
            continue
        if rng.getrandbits(1):
            y = (-y) % p
        return x, y
    raise InvalidArgument(f'no point found after {max_tries} draws')
