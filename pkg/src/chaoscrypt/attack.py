"""Known-plaintext recovery of the diffusion key through the (0,0) fixed point.

All three maps fix the corner pixel, and the unhardened raster scan visits it
first, so after n same-key rounds the corner ciphertext is

    add:  Q0n = (P0 + n * q)    mod L
    pow:  Q0n = (P0 + n * q**2) mod L

and q can be solved for directly from one known plaintext/ciphertext pair.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .cipher import CipherConfig, Schedule
from .diffusion import DiffusionKind
from .errors import AttackInapplicable, SizeMismatch
from .image import Image
from .lattice_maps import MapKey, Point, step


@dataclass(frozen=True)
class AttackInput:
    p0: int
    q0n: int
    n: int
    levels: int
    diffusion_kind: DiffusionKind

    def __post_init__(self) -> None:
        object.__setattr__(self, "diffusion_kind", DiffusionKind(self.diffusion_kind))
        if self.n < 1:
            raise ValueError("iteration count n must be >= 1")
        if self.levels < 2:
            raise ValueError("L must be >= 2")
        if not (0 <= self.p0 < self.levels and 0 <= self.q0n < self.levels):
            raise ValueError("corner pixels must lie in [0, L-1]")


@dataclass(frozen=True)
class CandidateSet:
    candidates: tuple[int, ...]
    attempts: int

    def __contains__(self, q: object) -> bool:
        return q in self.candidates

    def __len__(self) -> int:
        return len(self.candidates)


@dataclass(frozen=True)
class AttackReport:
    attack_input: AttackInput
    result: CandidateSet

    @property
    def reduction_factor(self) -> float:
        """How many times smaller the diffusion-key search space became."""
        if not self.result.candidates:
            return math.inf
        return self.attack_input.levels / len(self.result.candidates)


def recover_key_add(inp: AttackInput) -> CandidateSet:
    L, n = inp.levels, inp.n
    target = (inp.q0n - inp.p0) % L
    found = []
    for k in range(n):
        num = k * L + target
        if num % n == 0 and num // n < L:
            found.append(num // n)
    return CandidateSet(tuple(sorted(found)), n)


def recover_key_pow(inp: AttackInput) -> CandidateSet:
    # n * q**2 can reach n * (L-1)**2, so k must run well past n - 1
    L, n = inp.levels, inp.n
    target = (inp.q0n - inp.p0) % L
    k_max = n * (L - 1) ** 2 // L
    found = set()
    attempts = 0
    for k in range(k_max + 1):
        attempts += 1
        num = k * L + target
        if num % n:
            continue
        sq = num // n
        root = math.isqrt(sq)
        if root * root == sq and root < L:
            found.add(root)
    return CandidateSet(tuple(sorted(found)), attempts)


def recover_key(inp: AttackInput) -> CandidateSet:
    if inp.diffusion_kind is DiffusionKind.ADD:
        return recover_key_add(inp)
    return recover_key_pow(inp)


def brute_force_oracle(inp: AttackInput) -> CandidateSet:
    """Run the corner recurrence forward for every key in [0, L-1]."""
    L = inp.levels
    keys = np.arange(L, dtype=np.int64)
    feed = keys if inp.diffusion_kind is DiffusionKind.ADD else keys * keys
    corner = np.full(L, inp.p0, dtype=np.int64)
    for _ in range(inp.n):
        corner = (corner + feed) % L
    return CandidateSet(tuple(int(q) for q in np.flatnonzero(corner == inp.q0n)), L)


def corner_attack(plain: Image, cipher: Image, cfg: CipherConfig, force: bool = False) -> AttackReport:
    """Recover the diffusion key candidates from one plaintext/ciphertext pair.

    Raises AttackInapplicable for hardened or multi-key configurations unless
    ``force`` is set, in which case the closed form is applied regardless.
    """
    if not force:
        if cfg.scan_hardening:
            raise AttackInapplicable("scan-order hardening moves the corner pixel out of first position")
        if cfg.schedule is not Schedule.SAME_KEY and cfg.groups != 1:
            raise AttackInapplicable("diffusion keys differ between rounds")
    if plain.n != cipher.n or plain.levels != cipher.levels:
        raise SizeMismatch("plaintext and ciphertext shapes differ")
    inp = AttackInput(
        p0=int(plain.pixels[0, 0]),
        q0n=int(cipher.pixels[0, 0]),
        n=cfg.n,
        levels=cfg.levels,
        diffusion_kind=cfg.diffusion_kind,
    )
    return AttackReport(inp, recover_key(inp))


def verify_candidate(inp: AttackInput, q: int) -> bool:
    feed = q if inp.diffusion_kind is DiffusionKind.ADD else q * q
    return (inp.p0 + inp.n * feed) % inp.levels == inp.q0n


def fixed_point_audit(key: MapKey, n: int, max_iter: int) -> bool:
    p = Point(0, 0)
    for _ in range(max_iter):
        p = step(p, key, n)
        if p != (0, 0):
            return False
    return True


def write_attack_csv(report: AttackReport, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["candidate", "verified"])
        for q in report.result.candidates:
            w.writerow([q, str(verify_candidate(report.attack_input, q)).lower()])
