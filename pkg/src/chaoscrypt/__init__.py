"""Workbench for a chaos-based confusion/diffusion image cipher and its cryptanalysis."""

from .attack import corner_attack
from .cipher import CipherConfig, CipherStats, RoundKeys, Schedule, decrypt, derive_round_keys, encrypt
from .diffusion import DiffusionKey, DiffusionKind, ScanOrder
from .image import Image
from .keygen import MasterKey
from .lattice_maps import BakerKey, CatKey, MapKind, Permutation, Point, StandardKey, build_permutation

__version__ = "0.1.0"

__all__ = [
    "BakerKey",
    "CatKey",
    "CipherConfig",
    "CipherStats",
    "DiffusionKey",
    "DiffusionKind",
    "Image",
    "MapKind",
    "MasterKey",
    "Permutation",
    "Point",
    "RoundKeys",
    "ScanOrder",
    "Schedule",
    "StandardKey",
    "build_permutation",
    "corner_attack",
    "decrypt",
    "derive_round_keys",
    "encrypt",
]
