import dataclasses
from dataclasses import dataclass
from typing import FrozenSet

from ..errors import ConfigurationError
from ..numeric import DEFAULT_FACTOR_BUDGET


ROLES = ('generator', 'verifier')
PROFILES = ('production', 'desk')

GENERATOR_COFACTORS = frozenset({1})
VERIFIER_COFACTORS = frozenset({1, 2, 4})


@dataclass(frozen=True)
class SecurityThresholds:
    rho_min_log2: float = 100.0
    disc_min_log2: float = 100.0
    embed_ratio_denominator: int = 100
    allowed_cofactors: FrozenSet[int] = GENERATOR_COFACTORS
    mov_degree_bound: int = 100
    factor_budget: int = DEFAULT_FACTOR_BUDGET
    role: str = 'generator'
    profile: str = 'production'

    def __post_init__(self):
        object.__setattr__(self, 'allowed_cofactors', frozenset(self.allowed_cofactors))

        if self.role not in ROLES:
            raise ConfigurationError(f'unknown role {self.role!r}')
        if self.rho_min_log2 <= 0 or self.disc_min_log2 <= 0:
            raise ConfigurationError('log2 thresholds must be positive')
        if self.embed_ratio_denominator < 1 or self.mov_degree_bound < 1 or self.factor_budget < 1:
            raise ConfigurationError('embedding ratio, MOV bound and factoring budget must be positive')
        if not self.allowed_cofactors or min(self.allowed_cofactors) < 1:
            raise ConfigurationError('allowed cofactors must be a non-empty set of positive integers')


    @classmethod
    def production(cls, role='generator', **overrides):
        cofactors = GENERATOR_COFACTORS if role == 'generator' else VERIFIER_COFACTORS
        return cls(allowed_cofactors=cofactors, role=role, profile='production', **overrides)


    @classmethod
    def desk(cls, bits, role='generator', **overrides):
        """Thresholds scaled to an l-bit field so the pipeline can be exercised below 200 bits."""
        if bits < 16:
            raise ConfigurationError(f'desk profile needs at least 16 bits, got {bits}')
        cofactors = GENERATOR_COFACTORS if role == 'generator' else VERIFIER_COFACTORS
        return cls(
            rho_min_log2=bits / 2 - 5,
            disc_min_log2=min(100, bits - 10),
            allowed_cofactors=cofactors,
            role=role,
            profile='desk',
            **overrides,
        )


    @classmethod
    def from_profile(cls, profile, bits=None, role='generator', **overrides):
        if profile == 'production':
            return cls.production(role, **overrides)
        if profile == 'desk':
            if bits is None:
                raise ConfigurationError('the desk profile needs the field size in bits')
            return cls.desk(bits, role, **overrides)
        raise ConfigurationError(f'unknown profile {profile!r}, expected one of {PROFILES}')


    def replace(self, **changes):
        return dataclasses.replace(self, **changes)
