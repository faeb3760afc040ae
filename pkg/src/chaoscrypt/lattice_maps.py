"""Discretized Standard, Cat and Baker maps on the N x N lattice.

Each map is an exact integer bijection.  ``build_permutation`` materializes a
map as forward/inverse lookup tables over lattice indices ``y * N + x`` so the
confusion stage of the cipher reduces to a single gather per round.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Union

import numpy as np

from .errors import InvalidBakerKey, NotBijective, SizeMismatch
from .image import Image


class Point(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class StandardKey:
    k: int

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError("standard map parameter k must be >= 0")


@dataclass(frozen=True)
class CatKey:
    u: int
    v: int

    def reduced(self, n: int) -> "CatKey":
        return CatKey(self.u % n, self.v % n)


@dataclass(frozen=True)
class BakerKey:
    """Strip widths k_1..k_t; they must sum to N and each must divide N."""

    strips: tuple[int, ...]

    def __post_init__(self) -> None:
        strips = tuple(int(s) for s in self.strips)
        object.__setattr__(self, "strips", strips)
        if not strips or any(s <= 0 for s in strips):
            raise InvalidBakerKey("strip widths must be positive")
        n = sum(strips)
        bad = [s for s in strips if n % s]
        if bad:
            raise InvalidBakerKey(f"strip widths {bad} do not divide N={n}")

    @property
    def n(self) -> int:
        return sum(self.strips)

    def check_size(self, n: int) -> None:
        if self.n != n:
            raise InvalidBakerKey(f"strip widths sum to {self.n}, expected N={n}")


MapKey = Union[StandardKey, CatKey, BakerKey]


class MapKind(enum.Enum):
    STANDARD = "standard"
    CAT = "cat"
    BAKER = "baker"

    @classmethod
    def of(cls, key: MapKey) -> "MapKind":
        if isinstance(key, StandardKey):
            return cls.STANDARD
        if isinstance(key, CatKey):
            return cls.CAT
        if isinstance(key, BakerKey):
            return cls.BAKER
        raise TypeError(f"unsupported key type {type(key).__name__}")


def _check_point(p: Point, n: int) -> None:
    if n < 2:
        raise ValueError("lattice size N must be >= 2")
    if not (0 <= p[0] < n and 0 <= p[1] < n):
        raise ValueError(f"point {tuple(p)} outside the {n}x{n} lattice")


def _round_half_away(v: float) -> int:
    return int(math.copysign(math.floor(abs(v) + 0.5), v))


@lru_cache(maxsize=256)
def _standard_offsets_cached(k: int, n: int) -> tuple[int, ...]:
    return tuple(_round_half_away(k * math.sin(2.0 * math.pi * x / n)) for x in range(n))


def standard_offsets(k: int, n: int) -> np.ndarray:
    """Integer shifts ``round(k * sin(2*pi*x'/N))`` for every column x'.

    Only N sine evaluations are needed per key; both the scalar step and the
    table builder read this one list so they can never disagree.
    """
    return np.array(_standard_offsets_cached(int(k), int(n)), dtype=np.int64)


def standard_step(p: Point, key: StandardKey, n: int) -> Point:
    _check_point(p, n)
    x1 = (p[0] + p[1]) % n
    y1 = (p[1] + _standard_offsets_cached(key.k, n)[x1]) % n
    return Point(x1, y1)


def cat_step(p: Point, key: CatKey, n: int) -> Point:
    _check_point(p, n)
    x, y = p
    u, v = key.u, key.v
    return Point((x + u * y) % n, (v * x + (u * v + 1) * y) % n)


def baker_step(p: Point, key: BakerKey, n: int) -> Point:
    _check_point(p, n)
    key.check_size(n)
    x, y = p
    start = 0
    for k in key.strips:
        if start <= x < start + k:
            s = n // k
            return Point(s * (x - start) + y % s, y // s + start)
        start += k
    raise AssertionError("unreachable: strips cover [0, N)")


def step(p: Point, key: MapKey, n: int) -> Point:
    """Dispatch one map iteration on the key's type."""
    if isinstance(key, StandardKey):
        return standard_step(p, key, n)
    if isinstance(key, CatKey):
        return cat_step(p, key, n)
    if isinstance(key, BakerKey):
        return baker_step(p, key, n)
    raise TypeError(f"unsupported key type {type(key).__name__}")


def _map_arrays(key: MapKey, n: int) -> tuple[np.ndarray, np.ndarray]:
    y, x = np.divmod(np.arange(n * n, dtype=np.int64), n)
    if isinstance(key, StandardKey):
        x1 = (x + y) % n
        y1 = (y + standard_offsets(key.k, n)[x1]) % n
    elif isinstance(key, CatKey):
        u, v = key.u % n, key.v % n
        x1 = (x + u * y) % n
        y1 = (v * x + (u * v + 1) * y) % n
    elif isinstance(key, BakerKey):
        key.check_size(n)
        widths = np.asarray(key.strips, dtype=np.int64)
        starts = np.concatenate(([0], np.cumsum(widths)[:-1]))
        strip_of = np.repeat(np.arange(len(widths)), widths)[x]
        s = n // widths[strip_of]
        start = starts[strip_of]
        x1 = s * (x - start) + y % s
        y1 = y // s + start
    else:
        raise TypeError(f"unsupported key type {type(key).__name__}")
    return x1, y1


@dataclass(frozen=True, eq=False)
class Permutation:
    """Bijection on lattice indices: pixel at ``i`` moves to ``forward[i]``."""

    size: int
    forward: np.ndarray
    inverse: np.ndarray

    @classmethod
    def from_forward(cls, forward, size: int) -> "Permutation":
        fwd = np.asarray(forward, dtype=np.int64).copy()
        total = size * size
        if fwd.shape != (total,) or fwd.min(initial=0) < 0 or fwd.max(initial=0) >= total:
            raise NotBijective("forward table has the wrong shape or range")
        if np.bincount(fwd, minlength=total).max(initial=0) > 1:
            raise NotBijective("forward table has collisions")
        inv = np.empty_like(fwd)
        inv[fwd] = np.arange(total, dtype=np.int64)
        fwd.setflags(write=False)
        inv.setflags(write=False)
        return cls(size, fwd, inv)

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls.from_forward(np.arange(size * size), size)

    def invert(self) -> "Permutation":
        return Permutation(self.size, self.inverse, self.forward)

    def then(self, other: "Permutation") -> "Permutation":
        """Apply ``self`` first, then ``other``."""
        if other.size != self.size:
            raise SizeMismatch("permutations of different lattice sizes")
        return Permutation.from_forward(other.forward[self.forward], self.size)

    def power(self, m: int) -> "Permutation":
        if m < 0:
            return self.invert().power(-m)
        out = Permutation.identity(self.size)
        for _ in range(m):
            out = out.then(self)
        return out

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.forward, np.arange(self.forward.size)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.size == other.size and np.array_equal(self.forward, other.forward)

    def __repr__(self) -> str:
        return f"Permutation(size={self.size})"


def build_permutation(key: MapKey, n: int) -> Permutation:
    if n < 2:
        raise ValueError("lattice size N must be >= 2")
    x1, y1 = _map_arrays(key, n)
    return Permutation.from_forward(y1 * n + x1, n)


def invert(perm: Permutation) -> Permutation:
    return perm.invert()


def apply_permutation(img: Image, perm: Permutation) -> Image:
    if img.n != perm.size:
        raise SizeMismatch(f"image is {img.n}x{img.n}, permutation is for N={perm.size}")
    out = np.empty(img.n * img.n, dtype=np.int64)
    out[perm.forward] = img.flat()
    return Image.from_flat(out, img.n, img.levels)


def idx(p: Point, n: int) -> int:
    return p[1] * n + p[0]


def point(i: int, n: int) -> Point:
    y, x = divmod(i, n)
    return Point(x, y)


def write_permutation_csv(perm: Permutation, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["src_index", "dst_index"])
        for src, dst in enumerate(perm.forward.tolist()):
            w.writerow([src, dst])
