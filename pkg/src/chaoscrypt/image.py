"""Square gray-level image container used by every stage of the cipher."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PixelOutOfRange, SizeMismatch


@dataclass(frozen=True, eq=False)
class Image:
    """An N x N raster of gray levels in ``[0, levels - 1]``.

    ``pixels[y, x]`` holds the value at lattice point ``(x, y)``, so the
    row-major flattening matches the lattice index ``y * N + x``.
    """

    pixels: np.ndarray
    levels: int = 256

    def __post_init__(self) -> None:
        px = np.array(self.pixels, dtype=np.int64)
        if px.ndim != 2 or px.shape[0] != px.shape[1]:
            raise SizeMismatch(f"image must be square, got shape {px.shape}")
        if self.levels < 2:
            raise ValueError("levels must be >= 2")
        if px.size and (px.min() < 0 or px.max() >= self.levels):
            raise PixelOutOfRange(f"pixel values must lie in [0, {self.levels - 1}]")
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @property
    def n(self) -> int:
        return self.pixels.shape[0]

    def flat(self) -> np.ndarray:
        return self.pixels.reshape(-1)

    @classmethod
    def from_flat(cls, values, n: int, levels: int = 256) -> "Image":
        return cls(np.asarray(values, dtype=np.int64).reshape(n, n), levels)

    @classmethod
    def random(cls, n: int, levels: int = 256, seed: int = 0) -> "Image":
        """Seeded uniform test image (stand-in for non-redistributable test photos)."""
        rng = np.random.default_rng(seed)
        return cls(rng.integers(0, levels, size=(n, n), dtype=np.int64), levels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Image):
            return NotImplemented
        return self.levels == other.levels and np.array_equal(self.pixels, other.pixels)

    def __hash__(self) -> int:
        return hash((self.levels, self.pixels.tobytes()))

    def __repr__(self) -> str:
        return f"Image(n={self.n}, levels={self.levels})"
