"""Pixel diffusion recurrences and the scan orders they run over.

Both recurrences chain each output value into the next one, starting from
the diffusion key ``q_init``:

    add:  Q[i] = (P[i] + Q[i-1])     mod L
    pow:  Q[i] = (P[i] + Q[i-1]**2)  mod L
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import PixelOutOfRange
from .lattice_maps import Point


@dataclass(frozen=True)
class DiffusionKey:
    q_init: int

    def __post_init__(self) -> None:
        if self.q_init < 0:
            raise ValueError("q_init must be >= 0")

    def __int__(self) -> int:
        return self.q_init


class DiffusionKind(enum.Enum):
    ADD = "add"
    POW = "pow"


class ScanOrder(enum.IntEnum):
    """Row-major rasters starting from each corner of the lattice."""

    RASTER_TL = 0
    RASTER_TR = 1
    RASTER_BL = 2
    RASTER_BR = 3


def scan_indices(order: ScanOrder, n: int) -> np.ndarray:
    """Lattice indices ``y * N + x`` in visiting order."""
    grid = np.arange(n * n, dtype=np.int64).reshape(n, n)
    order = ScanOrder(order)
    if order in (ScanOrder.RASTER_TR, ScanOrder.RASTER_BR):
        grid = grid[:, ::-1]
    if order in (ScanOrder.RASTER_BL, ScanOrder.RASTER_BR):
        grid = grid[::-1, :]
    return grid.reshape(-1)


def scan_sequence(order: ScanOrder, n: int) -> list[Point]:
    if n < 1:
        raise ValueError("N must be >= 1")
    return [Point(int(i % n), int(i // n)) for i in scan_indices(order, n)]


def round_scan_order(round_index: int, hardened: bool) -> ScanOrder:
    if not hardened:
        return ScanOrder.RASTER_TL
    return ScanOrder(round_index % 4)


def _prepare(values, key, levels: int) -> tuple[np.ndarray, int]:
    if levels < 2:
        raise ValueError("L must be >= 2")
    arr = np.asarray(values, dtype=np.int64).reshape(-1)
    if arr.size and (arr.min() < 0 or arr.max() >= levels):
        raise PixelOutOfRange(f"pixel values must lie in [0, {levels - 1}]")
    q = int(key)
    if not 0 <= q < levels:
        raise PixelOutOfRange(f"diffusion key {q} outside [0, {levels - 1}]")
    return arr, q


def diffuse_add(pixels, key, levels: int) -> np.ndarray:
    arr, q = _prepare(pixels, key, levels)
    # partial sums stay far below 2**63 for any N, L <= 2**16
    return (np.cumsum(arr) + q) % levels


def undiffuse_add(cipher, key, levels: int) -> np.ndarray:
    arr, q = _prepare(cipher, key, levels)
    prev = np.concatenate(([q], arr[:-1]))
    return (arr - prev) % levels


def diffuse_pow(pixels, key, levels: int) -> np.ndarray:
    arr, q = _prepare(pixels, key, levels)
    out = []
    append = out.append
    prev = q
    for p in arr.tolist():
        prev = (p + prev * prev) % levels
        append(prev)
    return np.array(out, dtype=np.int64)


def undiffuse_pow(cipher, key, levels: int) -> np.ndarray:
    arr, q = _prepare(cipher, key, levels)
    prev = np.concatenate(([q], arr[:-1]))
    return (arr - prev * prev) % levels


def diffuse(kind: DiffusionKind, pixels, key, levels: int) -> np.ndarray:
    if DiffusionKind(kind) is DiffusionKind.ADD:
        return diffuse_add(pixels, key, levels)
    return diffuse_pow(pixels, key, levels)


def undiffuse(kind: DiffusionKind, cipher, key, levels: int) -> np.ndarray:
    if DiffusionKind(kind) is DiffusionKind.ADD:
        return undiffuse_add(cipher, key, levels)
    return undiffuse_pow(cipher, key, levels)
