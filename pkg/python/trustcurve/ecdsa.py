"""
ECDSA over a domain (E, G, n), plus a keygen/sign/verify benchmark.

Message digests are integers supplied by the caller. Nothing here is
constant time.
"""
import os
import secrets
import time
from dataclasses import dataclass
from typing import Dict, Optional

import pandas as pd
from absl import logging

from .curve import INFINITY, _add, _mul, is_on_curve
from .errors import CurveError, InvalidArgument, Refused
from .utils import Welford


TEST_NONCE_ENV = 'TRUSTCURVE_TEST_NONCES'
MAX_NONCE_DRAWS = 100
OPERATIONS = ('keygen', 'sign', 'verify')
OPERATION_LABELS = {
    'keygen': 'Key pair generation',
    'sign': 'Signing',
    'verify': 'Verification',
}


@dataclass(frozen=True)
class KeyPair:
    d: int
    P_pub: tuple


@dataclass(frozen=True)
class Signature:
    r: int
    s: int


class SystemNonces:

    def nonce(self, n):
        return secrets.randbelow(n - 1) + 1


class EntropyNonces:
    """Nonces drawn from an EntropySource, logged under the 'nonce' purpose."""

    def __init__(self, source):
        self.source = source


    def nonce(self, n):
        return self.source.randbelow(n - 1, 'nonce') + 1


class FixedNonceSource:
    """Always the same nonce. Only for tests: needs TRUSTCURVE_TEST_NONCES=1."""

    def __init__(self, k):
        if os.environ.get(TEST_NONCE_ENV) != '1':
            raise Refused(f'fixed nonces leak the private key; set {TEST_NONCE_ENV}=1 to use them in tests')
        self.k = k


    def nonce(self, n):
        return self.k % n


def keypair_from_secret(domain, d):
    if not 1 <= d < domain.n:
        raise InvalidArgument('private key must lie in [1, n-1]')
    return KeyPair(d, _mul(domain.curve, d, domain.G))


def keygen(domain, rng=None):
    """Uniform d in [1, n-1]; `rng` is an EntropySource, else the OS CSPRNG is used."""
    n = domain.n
    d = rng.randbelow(n - 1, 'private-key') + 1 if rng is not None else secrets.randbelow(n - 1) + 1
    return keypair_from_secret(domain, d)


def sign(domain, d, z, nonce_source=None):
    n = domain.n
    if not 1 <= d < n:
        raise InvalidArgument('private key must lie in [1, n-1]')
    nonce_source = nonce_source or SystemNonces()
    z %= n

    for _ in range(MAX_NONCE_DRAWS):
        k = nonce_source.nonce(n)
        if k == 0:
            continue
        R = _mul(domain.curve, k, domain.G)
        r = R[0] % n
        if r == 0:
            continue
        s = pow(k, -1, n) * (z + r * d) % n
        if s == 0:
            continue
        return Signature(r, s)
    raise InvalidArgument(f'no usable nonce in {MAX_NONCE_DRAWS} draws')


def verify(domain, P_pub, z, sig):
    """False on any malformed input rather than an exception."""
    n, curve = domain.n, domain.curve
    try:
        r, s = int(sig.r), int(sig.s)
    except (AttributeError, TypeError, ValueError):
        return False
    if not (1 <= r < n and 1 <= s < n):
        return False
    if P_pub is INFINITY or not is_on_curve(curve, P_pub):
        return False

    w = pow(s, -1, n)
    u1, u2 = z % n * w % n, r * w % n
    X = _add(curve, _mul(curve, u1, domain.G), _mul(curve, u2, P_pub))
    if X is INFINITY:
        return False
    return X[0] % n == r


def cpu_mhz(path='/proc/cpuinfo'):
    """Nominal clock of the first core, or None where the kernel does not report one."""
    try:
        with open(path) as f:
            for line in f:
                if line.lower().startswith('cpu mhz'):
                    return float(line.split(':', 1)[1])
    except (OSError, ValueError):
        pass
    return None


@dataclass
class BenchReport:
    name: str
    trials: int
    seconds: Dict[str, float]
    cycles: Dict[str, Optional[float]]
    cycles_estimated: bool = True
    mhz: Optional[float] = None


    def to_frame(self):
        """One row per curve, (operation, metric) columns."""
        columns = pd.MultiIndex.from_product([[OPERATION_LABELS[op] for op in OPERATIONS],
                                              ['Time (s)', 'CPU cycles']])
        row = []
        for op in OPERATIONS:
            row += [self.seconds[op], self.cycles[op]]
        return pd.DataFrame([row], index=pd.Index([self.name], name='curve'), columns=columns)


    def as_dict(self):
        return {
            'name': self.name,
            'trials': self.trials,
            'seconds': dict(self.seconds),
            'cycles': dict(self.cycles),
            'cycles_estimated': self.cycles_estimated,
            'mhz': self.mhz,
        }


def bench(domain, trials=10000, name='curve', rng=None):
    """
    Mean wall time and cycle count of keygen, sign and verify over `trials`
    rounds. Cycles are CPU time times the nominal clock, so always estimates.
    """
    if trials < 1:
        raise InvalidArgument('at least one trial is required')

    wall = {op: Welford() for op in OPERATIONS}
    cpu = {op: Welford() for op in OPERATIONS}
    nonces = EntropyNonces(rng) if rng is not None else SystemNonces()

    def timed(op, fn, *args):
        w0, c0 = time.perf_counter(), time.process_time()
        out = fn(*args)
        wall[op].update(time.perf_counter() - w0)
        cpu[op].update(time.process_time() - c0)
        return out

    for _ in range(trials):
        z = secrets.randbelow(domain.n)
        key = timed('keygen', keygen, domain, rng)
        sig = timed('sign', sign, domain, key.d, z, nonces)
        ok = timed('verify', verify, domain, key.P_pub, z, sig)
        if not ok:
            raise CurveError('signature failed to verify during the benchmark')

    mhz = cpu_mhz()
    if mhz is None:
        logging.warning('no CPU clock available, cycle counts are not reported')
    cycles = {op: cpu[op].mean * mhz * 1e6 if mhz else None for op in OPERATIONS}

    return BenchReport(
        name=name,
        trials=trials,
        seconds={op: wall[op].mean for op in OPERATIONS},
        cycles=cycles,
        cycles_estimated=True,
        mhz=mhz,
    )
