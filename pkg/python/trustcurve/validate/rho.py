"""Pollard-rho cost model: about 0.886 sqrt(n) additions on one processor."""
import math

from ..errors import InvalidArgument


RHO_CONSTANT = 0.886


def rho_cost_log2(n):
    if n < 2:
        raise InvalidArgument(f'rho cost needs n >= 2, got {n}')
    return math.log2(RHO_CONSTANT) + 0.5 * math.log2(n)


def parallel_rho_cost_log2(n, r=1):
    """log2 of sqrt(pi n) / sqrt(2 r), the expected steps with r processors."""
    if n < 2 or r < 1:
        raise InvalidArgument('parallel rho cost needs n >= 2 and r >= 1')
    return 0.5 * (math.log2(math.pi) + math.log2(n)) - 0.5 * (1 + math.log2(r))


def joint_rho_log2(n, n_twist):
    # no joint model is defined anywhere; the weaker of the two sides stands in
    return min(rho_cost_log2(n), rho_cost_log2(n_twist))
