"""Logistic-map sub-key generator.

States are 64-bit binary fractions held as Python ints (``value / 2**64``);
every operation is exact integer arithmetic so the generated schedule is
identical on every platform.  No floating point is used in this module.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .diffusion import DiffusionKey
from .errors import BakerRequiresPow2N, DegenerateMasterKey, DegenerateState
from .lattice_maps import BakerKey, CatKey, MapKind, StandardKey

FRAC_BITS = 64
ONE = 1 << FRAC_BITS
MASK = ONE - 1
THREE_QUARTERS = 3 << (FRAC_BITS - 2)
FIXED_POINTS = frozenset({0, THREE_QUARTERS})
REMEDY = 0x5851F42D4C957F2D

DEFAULT_T = 100
DEFAULT_S = 32
STANDARD_K_RANGE = 50001


@dataclass(frozen=True)
class MasterKey:
    k1_frac: int
    k2_frac: int

    def __post_init__(self) -> None:
        for name in ("k1_frac", "k2_frac"):
            val = getattr(self, name)
            if not 0 <= val < ONE:
                raise DegenerateMasterKey(f"{name} must be a 64-bit fraction")
            if val in FIXED_POINTS:
                raise DegenerateMasterKey(f"{name} sits on a fixed point of the logistic map")

    @classmethod
    def from_hex(cls, text: str) -> "MasterKey":
        text = text.strip().lower().removeprefix("0x")
        if len(text) != 32:
            raise DegenerateMasterKey("master key must be exactly 32 hex characters")
        try:
            value = int(text, 16)
        except ValueError as exc:
            raise DegenerateMasterKey(f"master key is not hex: {text!r}") from exc
        return cls(value >> 64, value & MASK)

    def to_hex(self) -> str:
        return f"{self.k1_frac:016x}{self.k2_frac:016x}"


@dataclass(frozen=True)
class GeneratorState:
    x1: int
    x2: int
    t: int = 0

    @classmethod
    def from_master(cls, master: MasterKey) -> "GeneratorState":
        return cls(master.k1_frac, master.k2_frac, 0)


@dataclass(frozen=True)
class SubKeyPair:
    x1: int
    x2: int


def logistic_step(x: int) -> int:
    """One step of f(x) = 4x(1-x) on a 64-bit fraction.

    f(1/2) = 1 is not representable; it saturates to ``1 - 2**-64``.
    """
    y = (x * (ONE - x)) >> (FRAC_BITS - 2)
    return min(y, MASK)


def logistic_iterate(x: int, T: int) -> int:
    if not 0 <= x < ONE:
        raise ValueError("state must be a fraction in [0, 1)")
    for _ in range(T):
        x = logistic_step(x)
    return x


def to_fraction(value: float) -> int:
    """Convenience for tests and the CLI; exact for dyadic rationals."""
    return min(int(value * ONE), MASK)


def extract_bits(x: int, S: int) -> int:
    """Sum of bit_j * 2**j where bit_j is the j-th most significant fractional bit."""
    top = x >> (FRAC_BITS - S)
    out = 0
    for j in range(S):
        out |= ((top >> (S - 1 - j)) & 1) << j
    return out


def _remediate(x: int, t: int) -> int:
    if x not in FIXED_POINTS:
        return x
    x = (REMEDY ^ t) & MASK
    if x in FIXED_POINTS:
        raise DegenerateState(f"remediation degenerated at t={t}")
    return x


def next_subkeys(state: GeneratorState, T: int = DEFAULT_T, S: int = DEFAULT_S) -> tuple[SubKeyPair, GeneratorState]:
    if not 1 <= S <= FRAC_BITS:
        raise ValueError("sub-key length S must be in [1, 64]")
    t = state.t + 1
    x1 = logistic_iterate((state.x1 + state.x2) >> 1, T)
    x2 = logistic_iterate(abs(state.x1 - state.x2) >> 1, T)
    x1 = _remediate(x1, t)
    x2 = _remediate(x2, t)
    return SubKeyPair(extract_bits(x1, S), extract_bits(x2, S)), GeneratorState(x1, x2, t)


def generate_subkeys(master: MasterKey, count: int, T: int = DEFAULT_T, S: int = DEFAULT_S) -> list[SubKeyPair]:
    state = GeneratorState.from_master(master)
    pairs = []
    for _ in range(count):
        pair, state = next_subkeys(state, T, S)
        pairs.append(pair)
    return pairs


def baker_strips_from_bits(bits: int, S: int, n: int) -> tuple[int, ...]:
    """Power-of-two strip widths summing to ``n``, drawn 3 bits at a time.

    The S-bit stream is read LSB first and wraps around when exhausted.
    """
    if n < 2 or n & (n - 1):
        raise BakerRequiresPow2N(f"Baker sub-keys need N a power of two, got {n}")
    strips = []
    remaining = n
    pos = 0
    while remaining:
        b = 0
        for i in range(3):
            b |= ((bits >> ((pos + i) % S)) & 1) << i
        pos = (pos + 3) % S
        # remaining stays even, so floor(log2) >= 1
        width = 1 << (1 + b % (remaining.bit_length() - 1))
        width = min(width, remaining)
        strips.append(width)
        remaining -= width
    return tuple(strips)


def subkeys_to_round_keys(pairs, cfg, S: int = DEFAULT_S):
    """Map raw sub-key pairs onto (confusion, diffusion) keys for ``cfg``."""
    from .cipher import RoundKeys

    groups = cfg.groups
    if len(pairs) < groups:
        raise ValueError(f"need {groups} sub-key pairs, got {len(pairs)}")
    confusion, diffusion = [], []
    for pair in pairs[:groups]:
        if cfg.map_kind is MapKind.CAT:
            key = CatKey(pair.x1 % cfg.n_side, pair.x2 % cfg.n_side)
            if key.u == 0 and key.v == 0:
                warnings.warn("derived Cat key is the identity map (u = v = 0)", stacklevel=2)
        elif cfg.map_kind is MapKind.STANDARD:
            key = StandardKey(pair.x1 % STANDARD_K_RANGE)
        else:
            key = BakerKey(baker_strips_from_bits(pair.x1, S, cfg.n_side))
        confusion.append(key)
        diffusion.append(DiffusionKey(pair.x2 % cfg.levels))
    return RoundKeys(tuple(confusion), tuple(diffusion))
