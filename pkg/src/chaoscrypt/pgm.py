"""Binary (P5) PGM reader/writer for square 8-bit gray images."""

from __future__ import annotations

import numpy as np

from .errors import MalformedHeader, NonSquareImage, UnsupportedMaxval
from .image import Image

_WHITESPACE = b" \t\r\n\v\f"


def _tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """Read ``count`` header tokens, skipping '#' comments; return the raster offset."""
    tokens = []
    i = 0
    while len(tokens) < count:
        if i >= len(data):
            raise MalformedHeader("truncated header")
        c = data[i : i + 1]
        if c in _WHITESPACE:
            i += 1
        elif c == b"#":
            while i < len(data) and data[i : i + 1] not in (b"\n", b"\r"):
                i += 1
        else:
            start = i
            while i < len(data) and data[i : i + 1] not in _WHITESPACE and data[i : i + 1] != b"#":
                i += 1
            tokens.append(data[start:i])
    # exactly one whitespace byte separates maxval from the raster
    if i >= len(data) or data[i : i + 1] not in _WHITESPACE:
        raise MalformedHeader("missing whitespace after maxval")
    return tokens, i + 1


def decode_pgm(data: bytes) -> Image:
    if not data.startswith(b"P5"):
        raise MalformedHeader(f"expected binary PGM magic 'P5', got {data[:2]!r}")
    tokens, offset = _tokens(data, 4)
    if tokens[0] != b"P5":
        raise MalformedHeader(f"bad magic token {tokens[0]!r}")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError as exc:
        raise MalformedHeader(f"non-numeric header field in {tokens!r}") from exc
    if width <= 0 or height <= 0:
        raise MalformedHeader("image dimensions must be positive")
    if not 0 < maxval <= 255:
        raise UnsupportedMaxval(f"only 8-bit PGM is supported, maxval={maxval}")
    if width != height:
        raise NonSquareImage(f"image is {width}x{height}")
    raster = data[offset : offset + width * height]
    if len(raster) != width * height:
        raise MalformedHeader(f"raster has {len(raster)} bytes, expected {width * height}")
    pixels = np.frombuffer(raster, dtype=np.uint8).reshape(height, width)
    if pixels.max(initial=0) > maxval:
        raise MalformedHeader("pixel value exceeds maxval")
    return Image(pixels, maxval + 1)


def encode_pgm(img: Image) -> bytes:
    if img.levels > 256:
        raise UnsupportedMaxval(f"cannot store L={img.levels} in an 8-bit PGM")
    header = f"P5\n{img.n} {img.n}\n{img.levels - 1}\n".encode("ascii")
    return header + img.pixels.astype(np.uint8).tobytes()


def read_pgm(path) -> Image:
    with open(path, "rb") as fh:
        return decode_pgm(fh.read())


def write_pgm(path, img: Image) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_pgm(img))
