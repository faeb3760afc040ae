"""Confusion/diffusion cipher: n rounds of permute-then-diffuse.

Keys are grouped: round ``r`` uses group ``r // n0``.  SameKey is the single
group case (n0 = n), PerRound gives every round its own group (n0 = 1).
Within a group the permutation table is built once and reused.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .diffusion import DiffusionKey, DiffusionKind, diffuse, round_scan_order, scan_indices, undiffuse
from .errors import ConfigKeyMismatch, SizeMismatch
from .image import Image
from .keygen import DEFAULT_S, DEFAULT_T, MasterKey, generate_subkeys, subkeys_to_round_keys
from .lattice_maps import BakerKey, MapKey, MapKind, Permutation, build_permutation


class Schedule(enum.Enum):
    SAME_KEY = "same"
    PER_ROUND = "per-round"
    GROUPED = "grouped"


@dataclass(frozen=True)
class CipherConfig:
    map_kind: MapKind
    diffusion_kind: DiffusionKind
    n: int = 1
    n0: Optional[int] = None
    schedule: Schedule = Schedule.SAME_KEY
    scan_hardening: bool = False
    n_side: int = 256
    levels: int = 256

    def __post_init__(self) -> None:
        object.__setattr__(self, "map_kind", MapKind(self.map_kind))
        object.__setattr__(self, "diffusion_kind", DiffusionKind(self.diffusion_kind))
        object.__setattr__(self, "schedule", Schedule(self.schedule))
        if self.n < 1:
            raise ValueError("iteration count n must be >= 1")
        if self.n_side < 2 or self.levels < 2:
            raise ValueError("need N >= 2 and L >= 2")
        implied = {Schedule.SAME_KEY: self.n, Schedule.PER_ROUND: 1}.get(self.schedule)
        if self.n0 is None:
            if implied is None:
                raise ValueError("grouped schedule needs n0")
            object.__setattr__(self, "n0", implied)
        elif implied is not None and self.n0 != implied:
            raise ValueError(f"{self.schedule.value} schedule implies n0={implied}, got {self.n0}")
        if not 1 <= self.n0 <= self.n or self.n % self.n0:
            raise ValueError(f"n0={self.n0} must divide n={self.n}")

    @property
    def groups(self) -> int:
        return self.n // self.n0


@dataclass(frozen=True)
class RoundKeys:
    confusion_keys: tuple
    diffusion_keys: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "confusion_keys", tuple(self.confusion_keys))
        object.__setattr__(
            self,
            "diffusion_keys",
            tuple(k if isinstance(k, DiffusionKey) else DiffusionKey(int(k)) for k in self.diffusion_keys),
        )

    @classmethod
    def single(cls, confusion: MapKey, diffusion, groups: int = 1) -> "RoundKeys":
        """The same key pair for every group."""
        return cls((confusion,) * groups, (diffusion,) * groups)


@dataclass
class CipherStats:
    """Per-call instrumentation; pass one in to observe table builds."""

    permutations_built: int = 0
    rounds: int = 0
    scan_orders: list = field(default_factory=list)


def check_keys(cfg: CipherConfig, keys: RoundKeys) -> None:
    g = cfg.groups
    if len(keys.confusion_keys) != g or len(keys.diffusion_keys) != g:
        raise ConfigKeyMismatch(
            f"config needs {g} key groups, got {len(keys.confusion_keys)}/{len(keys.diffusion_keys)}"
        )
    for key in keys.confusion_keys:
        if MapKind.of(key) is not cfg.map_kind:
            raise ConfigKeyMismatch(f"{type(key).__name__} given for a {cfg.map_kind.value} config")
        if isinstance(key, BakerKey):
            key.check_size(cfg.n_side)
    for dk in keys.diffusion_keys:
        if not 0 <= dk.q_init < cfg.levels:
            raise ConfigKeyMismatch(f"diffusion key {dk.q_init} outside [0, {cfg.levels - 1}]")


def _check_image(img: Image, cfg: CipherConfig) -> None:
    if img.n != cfg.n_side or img.levels != cfg.levels:
        raise SizeMismatch(
            f"image is {img.n}x{img.n}/L={img.levels}, config expects {cfg.n_side}x{cfg.n_side}/L={cfg.levels}"
        )


def _group_tables(cfg: CipherConfig, keys: RoundKeys, stats: Optional[CipherStats]) -> list[Permutation]:
    tables = []
    for key in keys.confusion_keys:
        tables.append(build_permutation(key, cfg.n_side))
        if stats is not None:
            stats.permutations_built += 1
    return tables


def encrypt(img: Image, cfg: CipherConfig, keys: RoundKeys, stats: Optional[CipherStats] = None) -> Image:
    _check_image(img, cfg)
    check_keys(cfg, keys)
    tables = _group_tables(cfg, keys, stats)
    flat = img.flat().copy()
    for r in range(cfg.n):
        g = r // cfg.n0
        permuted = np.empty_like(flat)
        permuted[tables[g].forward] = flat
        order = round_scan_order(r, cfg.scan_hardening)
        seq = scan_indices(order, cfg.n_side)
        permuted[seq] = diffuse(cfg.diffusion_kind, permuted[seq], keys.diffusion_keys[g], cfg.levels)
        flat = permuted
        if stats is not None:
            stats.rounds += 1
            stats.scan_orders.append(order)
    return Image.from_flat(flat, cfg.n_side, cfg.levels)


def decrypt(img: Image, cfg: CipherConfig, keys: RoundKeys, stats: Optional[CipherStats] = None) -> Image:
    _check_image(img, cfg)
    check_keys(cfg, keys)
    tables = _group_tables(cfg, keys, stats)
    flat = img.flat().copy()
    for r in reversed(range(cfg.n)):
        g = r // cfg.n0
        order = round_scan_order(r, cfg.scan_hardening)
        seq = scan_indices(order, cfg.n_side)
        flat[seq] = undiffuse(cfg.diffusion_kind, flat[seq], keys.diffusion_keys[g], cfg.levels)
        flat = flat[tables[g].forward]
        if stats is not None:
            stats.rounds += 1
            stats.scan_orders.append(order)
    return Image.from_flat(flat, cfg.n_side, cfg.levels)


def derive_round_keys(master: MasterKey, cfg: CipherConfig, T: int = DEFAULT_T, S: int = DEFAULT_S) -> RoundKeys:
    """Expand a master key into one (confusion, diffusion) pair per group."""
    pairs = generate_subkeys(master, cfg.groups, T, S)
    return subkeys_to_round_keys(pairs, cfg, S)


def corner_law(p0: int, q_init: int, n: int, levels: int, kind: DiffusionKind) -> int:
    """Ciphertext value at (0,0) after n unhardened rounds with one diffusion key."""
    step = q_init if DiffusionKind(kind) is DiffusionKind.ADD else q_init * q_init
    return (p0 + n * step) % levels
