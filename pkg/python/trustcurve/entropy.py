"""
Entropy sources for curve generation.

Every draw is tagged with a purpose ('prime', 'coefficient-a', ...) and
logged, so the seed record of an emitted curve shows which parameter each
bit went into. Draw i is SHAKE-256(seed | purpose | i); replaying the same
seed reproduces every parameter.
"""
import abc
import datetime
import hashlib
import secrets

from .errors import ConfigurationError, InvalidArgument
from .trust import SeedRecord, TranscriptEntry


SEED_BYTES = 32
DEFAULT_SOURCE = 'shake256-seed'


def _commit(data):
    return hashlib.sha256(data).hexdigest()


class EntropySource(abc.ABC):

    @abc.abstractmethod
    def next_bits(self, count, purpose):
        """`count` fresh random bits as a non-negative integer below 2^count."""


    @abc.abstractmethod
    def provenance(self):
        """The SeedRecord for everything drawn since the last (re)seed."""


    @abc.abstractmethod
    def reseed(self):
        pass


    @abc.abstractmethod
    def spawn(self, index):
        """An independent source for parallel trial `index`."""


    def randbelow(self, bound, purpose):
        if bound < 1:
            raise InvalidArgument(f'bound must be positive, got {bound}')
        k = bound.bit_length()
        while True:
            v = self.next_bits(k, purpose)
            if v < bound:
                return v


class SeededEntropy(EntropySource):
    """
    Deterministic expansion of a seed. The transcript keeps one entry per
    purpose (bits drawn, chained SHA-256 commitment over the outputs), while
    `events` keeps the full ordered list of draws.
    """

    def __init__(self, seed, source_id=DEFAULT_SOURCE, acquired_at=None):
        if not seed:
            raise InvalidArgument('empty seed')
        self.source_id = source_id
        self.acquired_at = acquired_at
        self._set_seed(bytes(seed))


    @classmethod
    def from_passphrase(cls, text, source_id=DEFAULT_SOURCE):
        """Test-mode seed: a replayable stream named by a string."""
        return cls(hashlib.sha256(str(text).encode()).digest(), source_id)


    def _set_seed(self, seed):
        self._seed = seed
        self._counter = 0
        self._commitments = {}
        self._bits = {}
        self.events = []


    def next_bits(self, count, purpose):
        if count < 1:
            raise InvalidArgument(f'bit count must be positive, got {count}')

        shake = hashlib.shake_256(self._seed + purpose.encode() + self._counter.to_bytes(8, 'big'))
        chunk = shake.digest((count + 7) // 8)
        self._counter += 1

        prev = self._commitments.get(purpose, '')
        self._commitments[purpose] = _commit(prev.encode() + chunk)
        self._bits[purpose] = self._bits.get(purpose, 0) + count
        self.events.append((purpose, count))

        return int.from_bytes(chunk, 'big') >> (8 * len(chunk) - count)


    def provenance(self):
        transcript = tuple(TranscriptEntry(p, self._bits[p], c) for p, c in self._commitments.items())
        return SeedRecord(
            source_id=self.source_id,
            seed_commitment=_commit(self._seed),
            seed_length_bits=8 * len(self._seed),
            acquired_at=self.acquired_at,
            transcript=transcript,
        )


    def reseed(self):
        self._set_seed(hashlib.shake_256(self._seed + b'reseed').digest(len(self._seed)))


    def spawn(self, index):
        seed = hashlib.shake_256(self._seed + b'spawn' + index.to_bytes(8, 'big')).digest(len(self._seed))
        return SeededEntropy(seed, self.source_id, self.acquired_at)


class OsEntropy(SeededEntropy):
    """Seed harvested from the operating system, either a device path or os.urandom."""

    def __init__(self, path=None, nbytes=SEED_BYTES):
        self.path = path
        self.nbytes = nbytes
        super(OsEntropy, self).__init__(self._harvest(), source_id=path or 'os.urandom', acquired_at=self._now())


    @staticmethod
    def _now():
        return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec='seconds')


    def _harvest(self):
        if self.path is None:
            return secrets.token_bytes(self.nbytes)
        try:
            with open(self.path, 'rb') as f:
                seed = f.read(self.nbytes)
        except OSError as e:
            raise InvalidArgument(f'cannot read a seed from {self.path}: {e}')
        if len(seed) < self.nbytes:
            raise InvalidArgument(f'{self.path} returned {len(seed)} of {self.nbytes} bytes')
        return seed


    def reseed(self):
        self.acquired_at = self._now()
        self._set_seed(self._harvest())


    def spawn(self, index):
        return OsEntropy(self.path, self.nbytes)


def make_source(seed_source, seed=None):
    """
    `seed` (a test passphrase) selects the replayable stream; otherwise the
    seed is harvested from `seed_source` ('os.urandom' or a device path).
    """
    if seed is not None:
        return SeededEntropy.from_passphrase(seed)
    if seed_source == DEFAULT_SOURCE:
        raise ConfigurationError(f'{DEFAULT_SOURCE} needs a seed passphrase')
    if seed_source in (None, 'os.urandom'):
        return OsEntropy()
    return OsEntropy(seed_source)
