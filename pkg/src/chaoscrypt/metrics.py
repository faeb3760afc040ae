"""Security metrics, sweep drivers and key-space / complexity reports.

Percentages:

* Cdr: share of ciphertext pixels that change when the confusion key moves
  one step either way, averaged over both neighbours.
* Adc: mean distance between the images of originally adjacent pixels,
  divided by N and expressed in percent.  The identity scores 100/N.
* Pcr: share of pixels changed by a one-bit plaintext flip after n
  diffusion-only rounds (denominator N**2, so the range is 0..100).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .cipher import CipherConfig, Schedule
from .diffusion import DiffusionKind, diffuse
from .errors import InvalidKeyPerturbation, SizeMismatch
from .image import Image
from .keygen import STANDARD_K_RANGE
from .lattice_maps import BakerKey, CatKey, MapKey, MapKind, Permutation, StandardKey, apply_permutation, build_permutation

STANDARD_SWEEP = tuple(range(0, 50001, 500))


@dataclass
class MetricSeries:
    label: str
    rows: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    def add(self, sweep_value, percent: float) -> None:
        if not 0.0 <= percent <= 100.0:
            raise ValueError(f"percentage {percent} out of range")
        self.rows.append((sweep_value, float(percent)))
        self.rows.sort(key=lambda r: r[0])

    @property
    def values(self) -> list[float]:
        return [p for _, p in self.rows]

    def mean(self) -> float:
        return float(np.mean(self.values)) if self.rows else math.nan


def _same_shape(*imgs: Image) -> None:
    shapes = {(im.n, im.levels) for im in imgs}
    if len(shapes) != 1:
        raise SizeMismatch(f"images differ in size or gray levels: {sorted(shapes)}")


def diff_count(a: Image, b: Image) -> int:
    """Number of positions where the two images differ."""
    _same_shape(a, b)
    return int(np.count_nonzero(a.pixels != b.pixels))


def cdr(y: Image, y1: Image, y2: Image) -> float:
    _same_shape(y, y1, y2)
    return (diff_count(y, y1) + diff_count(y, y2)) / (2 * y.n * y.n) * 100.0


def pcr(y: Image, yp: Image) -> float:
    _same_shape(y, yp)
    return diff_count(y, yp) / (y.n * y.n) * 100.0


# --- key families and perturbations -----------------------------------------

def sweep_value(key: MapKey, n: int) -> int:
    """Scalar position of a key on a sweep axis."""
    if isinstance(key, StandardKey):
        return key.k
    if isinstance(key, CatKey):
        return (key.u % n) * n + key.v % n
    strips = key.strips
    return strips.index(max(strips))


def _swap(strips: Sequence[int], i: int, j: int) -> BakerKey:
    s = list(strips)
    s[i], s[j] = s[j], s[i]
    return BakerKey(tuple(s))


def perturb_key(key: MapKey, n: int, cat_axis: str = "v") -> tuple[MapKey, MapKey]:
    """Return the (K - dK, K + dK) neighbours used by the Cdr experiment.

    Standard moves k by one; Cat moves u or v by one modulo N; Baker slides
    its widest strip one position left and right by swapping it with the
    adjacent strip.
    """
    if isinstance(key, StandardKey):
        if key.k == 0:
            raise InvalidKeyPerturbation("k - 1 is negative")
        return StandardKey(key.k - 1), StandardKey(key.k + 1)
    if isinstance(key, CatKey):
        if cat_axis == "u":
            return CatKey((key.u - 1) % n, key.v % n), CatKey((key.u + 1) % n, key.v % n)
        return CatKey(key.u % n, (key.v - 1) % n), CatKey(key.u % n, (key.v + 1) % n)
    strips = key.strips
    j = strips.index(max(strips))
    if j == 0 or j == len(strips) - 1:
        raise InvalidKeyPerturbation(f"widest strip at edge position {j} has only one neighbour")
    minus, plus = _swap(strips, j - 1, j), _swap(strips, j, j + 1)
    if minus == key or plus == key:
        raise InvalidKeyPerturbation("swap with an equal-width neighbour leaves the key unchanged")
    return minus, plus


def standard_family(ks: Iterable[int] = STANDARD_SWEEP) -> list[StandardKey]:
    return [StandardKey(k) for k in ks]


def cat_family(n: int, per_axis: int = 16) -> list[CatKey]:
    """Evenly spaced (u, v) subgrid; for N = 256 the axis is 0, 17, ..., 255."""
    step = max(1, (n - 1) // (per_axis - 1))
    axis = list(range(0, n, step))[:per_axis]
    return [CatKey(u, v) for u in axis for v in axis]


def baker_family(n: int, background: Sequence[int] = (2, 4, 8), wide: Optional[int] = None) -> list[BakerKey]:
    """One wide strip slid across a repeating background of narrow strips.

    Neighbouring members differ by one adjacent swap, which is exactly the
    perturbation ``perturb_key`` applies.  N must be a power of two >= 16.
    """
    if n < 16 or n & (n - 1):
        raise ValueError("baker_family needs N a power of two >= 16")
    wide = wide or n // 8
    rest = n - wide
    fill: list[int] = []
    i = 0
    while rest:
        w = background[i % len(background)]
        if w > rest:
            w = 1 << (rest.bit_length() - 1)
        fill.append(w)
        rest -= w
        i += 1
    return [BakerKey(tuple(fill[:j] + [wide] + fill[j:])) for j in range(len(fill) + 1)]


def default_family(map_kind: MapKind, n: int) -> list:
    kind = MapKind(map_kind)
    if kind is MapKind.STANDARD:
        return standard_family()
    if kind is MapKind.CAT:
        return cat_family(n)
    return baker_family(n)


# --- Cdr ----------------------------------------------------------------------

def _check_family(map_kind: MapKind, family: Sequence[MapKey]) -> None:
    kind = MapKind(map_kind)
    for key in family:
        if MapKind.of(key) is not kind:
            raise ValueError(f"{key!r} is not a {kind.value} key")


def cdr_sweep(
    map_kind: MapKind,
    key_family: Sequence[MapKey],
    n_range: Iterable[int],
    n: int,
    image: Optional[Image] = None,
    seed: int = 0,
    cat_axis: str = "v",
) -> list[MetricSeries]:
    """Confusion-only Cdr for each key and iteration count; one series per n."""
    _check_family(map_kind, key_family)
    n_values = sorted(set(n_range))
    if image is None:
        image = Image.random(n, seed=seed)
    series = {m: MetricSeries(f"cdr n={m}") for m in n_values}
    for key in key_family:
        sv = sweep_value(key, n)
        try:
            minus, plus = perturb_key(key, n, cat_axis)
        except InvalidKeyPerturbation as exc:
            for s in series.values():
                s.skipped.append((sv, str(exc)))
            continue
        perms = [build_permutation(k, n) for k in (key, minus, plus)]
        imgs = [image] * 3
        done = 0
        for m in n_values:
            while done < m:
                imgs = [apply_permutation(im, p) for im, p in zip(imgs, perms)]
                done += 1
            series[m].add(sv, cdr(*imgs))
    return [series[m] for m in n_values]


# --- Adc ----------------------------------------------------------------------

def adc(perm: Permutation, n: Optional[int] = None) -> float:
    n = perm.size if n is None else n
    if n < 2 or n != perm.size:
        raise SizeMismatch("adc needs N >= 2 matching the permutation")
    ys, xs = np.divmod(perm.forward, n)
    # rows of X/Y are the original y, columns the original x
    X = xs.reshape(n, n).astype(np.float64)
    Y = ys.reshape(n, n).astype(np.float64)

    def dist(a, b):
        return np.hypot(X[a] - X[b], Y[a] - Y[b])

    tl = (slice(0, -1), slice(0, -1))
    tr = (slice(0, -1), slice(1, None))
    bl = (slice(1, None), slice(0, -1))
    br = (slice(1, None), slice(1, None))
    per_cell = (dist(tl, tr) + dist(tl, bl) + dist(tr, br) + dist(bl, br)) / 4.0
    return float(per_cell.sum() / (n - 1) ** 2 / n * 100.0)


def adc_sweep(map_kind: MapKind, key_family: Sequence[MapKey], n_range: Iterable[int], n: int) -> list[MetricSeries]:
    _check_family(map_kind, key_family)
    n_values = sorted(set(n_range))
    series = {m: MetricSeries(f"adc n={m}") for m in n_values}
    for key in key_family:
        base = build_permutation(key, n)
        current = Permutation.identity(n)
        done = 0
        for m in n_values:
            while done < m:
                current = current.then(base)
                done += 1
            series[m].add(sweep_value(key, n), adc(current))
    return [series[m] for m in n_values]


# --- Pcr ----------------------------------------------------------------------

def pcr_curve(
    img: Image,
    diffusion_kind: DiffusionKind,
    key,
    n_max: int,
    flip_index: int = 0,
    bit: Optional[int] = 0,
) -> MetricSeries:
    """Pcr after 1..n_max diffusion-only rounds for a one-bit plaintext flip.

    ``flip_index`` is a position in the raster scan; ``bit=None`` leaves the
    plaintext unchanged (harness self-check).
    """
    flat = img.flat().copy()
    if not 0 <= flip_index < flat.size:
        raise ValueError("flip position outside the image")
    other = flat.copy()
    if bit is not None:
        other[flip_index] ^= 1 << bit
        if other[flip_index] >= img.levels:
            raise ValueError(f"flipping bit {bit} leaves [0, L-1]")
    series = MetricSeries(f"pcr {DiffusionKind(diffusion_kind).value}")
    size = img.n * img.n
    for m in range(1, n_max + 1):
        flat = diffuse(diffusion_kind, flat, key, img.levels)
        other = diffuse(diffusion_kind, other, key, img.levels)
        series.add(m, np.count_nonzero(flat != other) / size * 100.0)
    return series


# --- reports ------------------------------------------------------------------

@dataclass(frozen=True)
class KeySpaceReport:
    map_kind: MapKind
    mode: Schedule
    n: int
    log2_parameter_space: float
    log2_total_key_space: float
    log2_swept_parameter_space: Optional[float] = None


def log2_parameter_space(map_kind: MapKind, n: int) -> float:
    kind = MapKind(map_kind)
    if kind is MapKind.CAT:
        return math.log2(n * n)
    if kind is MapKind.BAKER:
        return float(n - 1)
    return math.lgamma(n * n + 1) / math.log(2)


def keyspace_report(map_kind: MapKind, n: int, levels: int, iterations: int, mode: Schedule, n0: Optional[int] = None) -> KeySpaceReport:
    """Key space in bits: parameter space times diffusion space, per key group."""
    if n < 1 or levels < 1 or iterations < 1:
        raise ValueError("N, L and n must be >= 1")
    kind, mode = MapKind(map_kind), Schedule(mode)
    param = log2_parameter_space(kind, n)
    once = param + math.log2(levels)
    if mode is Schedule.SAME_KEY:
        groups = 1
    elif mode is Schedule.PER_ROUND:
        groups = iterations
    else:
        if not n0 or iterations % n0:
            raise ValueError("grouped mode needs n0 dividing n")
        groups = iterations // n0
    swept = math.log2(STANDARD_K_RANGE) if kind is MapKind.STANDARD else None
    return KeySpaceReport(kind, mode, iterations, param, groups * once, swept)


# (additions, multiplications) per pixel, in units of a and b
MAP_COST = {MapKind.CAT: (2, 3), MapKind.BAKER: (2, 2), MapKind.STANDARD: (2, 4)}
DIFFUSION_COST = {DiffusionKind.ADD: (1, 1), DiffusionKind.POW: (1, 2)}


@dataclass(frozen=True)
class ComplexityReport:
    """Operation counts as coefficients of N**2 * a (additions) and N**2 * b."""

    map_cost: tuple[int, int]
    diffusion_cost: tuple[int, int]
    confusion_passes: int
    diffusion_passes: int

    @property
    def additions(self) -> int:
        return self.confusion_passes * self.map_cost[0] + self.diffusion_passes * self.diffusion_cost[0]

    @property
    def multiplications(self) -> int:
        return self.confusion_passes * self.map_cost[1] + self.diffusion_passes * self.diffusion_cost[1]

    def counts(self, n: int) -> tuple[int, int]:
        return self.additions * n * n, self.multiplications * n * n

    def __le__(self, other: "ComplexityReport") -> bool:
        return self.additions <= other.additions and self.multiplications <= other.multiplications


def complexity_report(cfg: CipherConfig) -> ComplexityReport:
    # the confusion table is computed once per key group, diffusion runs every round
    return ComplexityReport(
        MAP_COST[cfg.map_kind],
        DIFFUSION_COST[cfg.diffusion_kind],
        cfg.groups,
        cfg.n,
    )


def write_series_csv(series: MetricSeries, path, metric: str, map_name: str, n: int, levels: int, seed) -> None:
    lines = [f"# metric={metric} map={map_name} N={n} L={levels} seed={seed}", "sweep_value,percent"]
    for sv, pct in series.rows:
        lines.append(f"{sv},{pct:.6f}")
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
