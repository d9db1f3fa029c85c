"""
Curve parameter files: one `key = value` pair per line, integers in decimal.

    name = KG256r1
    provenance = paper-fixture
    p = ...
    a = ...
    ...
    transcript = prime:1536:9f86d0...

`transcript` is the only key that may repeat. N, n and h are given
together or not at all (the published trial curves come without an order).
"""
import dataclasses
from dataclasses import dataclass
from typing import Optional, Tuple

from absl import logging

from .curve import CurveParams, DomainParams, is_on_curve
from .errors import CurveFileError, InvalidArgument, NotShortWeierstrass
from .trust import SeedRecord, TranscriptEntry


PROVENANCES = ('paper-fixture', 'user-supplied', 'generated')
SHAPE = 'short-weierstrass'

KEY_ORDER = (
    'name', 'provenance', 'shape',
    'p', 'a', 'b', 'N', 'n', 'h', 'Gx', 'Gy',
    'twist_N', 'cm_discriminant',
    'seed_source', 'seed_length_bits', 'seed_commitment', 'acquired_at', 'transcript',
)
REQUIRED = ('name', 'p', 'a', 'b', 'Gx', 'Gy')
ORDER_KEYS = ('N', 'n', 'h')
UNSIGNED = ('p', 'a', 'b', 'N', 'n', 'h', 'Gx', 'Gy', 'twist_N', 'seed_length_bits')


@dataclass(frozen=True)
class CurveFile:
    name: str
    p: int
    a: int
    b: int
    Gx: int
    Gy: int
    N: Optional[int] = None
    n: Optional[int] = None
    h: Optional[int] = None
    twist_N: Optional[int] = None
    cm_discriminant: Optional[int] = None
    provenance: str = 'user-supplied'
    shape: Optional[str] = None
    seed_source: Optional[str] = None
    seed_length_bits: Optional[int] = None
    seed_commitment: Optional[str] = None
    acquired_at: Optional[str] = None
    transcript: Tuple[TranscriptEntry, ...] = ()


    @property
    def curve(self):
        return CurveParams(self.p, self.a, self.b)


    @property
    def domain(self):
        return DomainParams(self.curve, (self.Gx, self.Gy), self.N, self.n, self.h)


    @property
    def has_order(self):
        return self.N is not None


    @property
    def seed_record(self):
        """The generator's seed record, if the file carries one."""
        if self.seed_commitment is None:
            return None
        return SeedRecord(
            source_id=self.seed_source or '',
            seed_commitment=self.seed_commitment,
            seed_length_bits=self.seed_length_bits or 0,
            acquired_at=self.acquired_at,
            transcript=self.transcript,
        )


    @property
    def fixture_source(self):
        """Declared seed source of a published fixture, which has no transcript of its own."""
        if self.provenance == 'paper-fixture' and self.seed_commitment is None:
            return self.seed_source
        return None


    @property
    def published_cm_discriminant(self):
        """CM discriminant as published with a registry curve. Other files have theirs recomputed."""
        return self.cm_discriminant if self.provenance == 'paper-fixture' else None


    def serialize(self):
        lines = []
        for key in KEY_ORDER:
            value = getattr(self, key)
            if key == 'transcript':
                lines += [f'transcript = {e.serialize()}' for e in value]
            elif value is not None:
                lines.append(f'{key} = {value}')
        return '\n'.join(lines) + '\n'


    def save(self, path):
        with open(path, 'w') as f:
            f.write(self.serialize())


    @classmethod
    def from_generation(cls, name, result):
        record = result.seed_record
        domain = result.domain
        return cls(
            name=name,
            p=domain.p, a=domain.curve.a, b=domain.curve.b,
            Gx=domain.G[0], Gy=domain.G[1],
            N=domain.N, n=domain.n, h=domain.h,
            twist_N=result.report.twist_order,
            cm_discriminant=result.report.cm_discriminant,
            provenance='generated',
            seed_source=record.source_id,
            seed_length_bits=record.seed_length_bits,
            seed_commitment=record.seed_commitment,
            acquired_at=record.acquired_at,
            transcript=record.transcript,
        )


    @classmethod
    def parse(cls, text, fixture=False):
        """
        Parses and checks a curve file. Only the registry passes
        `fixture=True`; any other file claiming to be a published fixture is
        downgraded to user-supplied.
        """
        fields = {}
        transcript = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith('#'):
                continue
            key, sep, value = (s.strip() for s in line.partition('='))
            if not sep or not value:
                raise CurveFileError(f'line {lineno}: expected "key = value"')
            if key not in KEY_ORDER:
                raise CurveFileError(f'line {lineno}: unknown key {key!r}')

            if key == 'transcript':
                try:
                    transcript.append(TranscriptEntry.parse(value))
                except InvalidArgument as e:
                    raise CurveFileError(f'line {lineno}: {e}')
                continue
            if key in fields:
                raise CurveFileError(f'line {lineno}: duplicate key {key!r}')
            fields[key] = _convert(key, value, lineno)

        missing = [k for k in REQUIRED if k not in fields]
        if missing:
            raise CurveFileError(f'missing keys: {", ".join(missing)}')

        shape = fields.get('shape')
        if shape is not None and shape != SHAPE:
            raise NotShortWeierstrass(f'Not Short Weierstrass elliptic curve: shape {shape!r}')

        present = [k for k in ORDER_KEYS if k in fields]
        if present and len(present) != len(ORDER_KEYS):
            raise CurveFileError('N, n and h must be given together', kind='order')

        provenance = fields.get('provenance', 'user-supplied')
        if provenance not in PROVENANCES:
            raise CurveFileError(f'unknown provenance {provenance!r}')
        if provenance == 'paper-fixture' and not fixture:
            logging.warning('%s claims to be a published fixture; treating it as user-supplied', fields['name'])
            fields['provenance'] = 'user-supplied'

        curve_file = cls(transcript=tuple(transcript), **fields)
        curve_file.check()
        return curve_file


    @classmethod
    def load(cls, path):
        with open(path) as f:
            return cls.parse(f.read())


    def check(self):
        try:
            curve = self.curve
        except InvalidArgument as e:
            raise CurveFileError(str(e))

        G = (self.Gx, self.Gy)
        if not is_on_curve(curve, G):
            raise CurveFileError(f'Incorrect base point: G is not on {self.name}', kind='base-point')
        if self.has_order:
            if self.h * self.n != self.N:
                raise CurveFileError(f'h*n = {self.h * self.n} does not match N = {self.N}', kind='order')
            if self.twist_N is not None and self.N + self.twist_N != 2 * self.p + 2:
                raise CurveFileError('N + twist_N != 2p + 2', kind='order')


    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


def _convert(key, value, lineno):
    if key in UNSIGNED:
        if not (value.isascii() and value.isdigit()):
            raise CurveFileError(f'line {lineno}: {key} must be a non-negative decimal integer')
        return int(value)
    if key == 'cm_discriminant':
        try:
            return int(value)
        except ValueError:
            raise CurveFileError(f'line {lineno}: cm_discriminant must be a decimal integer')
    return value
