"""Command line front end.

    chaoscrypt encrypt --map cat --diffusion pow --n 6 --master-key HEX --in a.pgm --out b.pgm
    chaoscrypt decrypt ...same flags... --in b.pgm --out a2.pgm
    chaoscrypt attack --plain a.pgm --cipher b.pgm --n 6 --diffusion pow
    chaoscrypt metric cdr|adc|pcr [sweep flags] [--csv out.csv]
    chaoscrypt keyspace --map baker --size 256 --levels 256 --n 4 --mode per-round
    chaoscrypt complexity --map cat --diffusion add --n 8 --n0 2 --schedule grouped
    chaoscrypt keygen --master-key HEX --count 4
    chaoscrypt gen-image --seed 1 --size 64 --out plain.pgm

Exit status: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import attack, metrics
from .cipher import CipherConfig, RoundKeys, Schedule, decrypt, derive_round_keys, encrypt
from .diffusion import DiffusionKey, DiffusionKind
from .errors import ChaosCryptError
from .image import Image
from .keygen import DEFAULT_S, DEFAULT_T, MasterKey, generate_subkeys
from .lattice_maps import BakerKey, CatKey, MapKey, MapKind, StandardKey
from .pgm import read_pgm, write_pgm

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2

MAPS = [m.value for m in MapKind]
DIFFUSIONS = [d.value for d in DiffusionKind]
SCHEDULES = [s.value for s in Schedule]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit(2); 2 is reserved for data errors
        raise UsageError(f"{self.prog}: {message}")


def parse_confusion_key(text: str, kind: MapKind) -> MapKey:
    try:
        parts = [int(p) for p in text.replace(" ", "").split(",") if p]
    except ValueError:
        raise UsageError(f"--confusion-key: not a comma-separated integer list: {text!r}")
    if kind is MapKind.STANDARD and len(parts) == 1:
        return StandardKey(parts[0])
    if kind is MapKind.CAT and len(parts) == 2:
        return CatKey(*parts)
    if kind is MapKind.BAKER and parts:
        return BakerKey(tuple(parts))
    raise UsageError(f"--confusion-key: {text!r} does not fit the {kind.value} map")


def _add_cipher_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--map", choices=MAPS, required=True)
    p.add_argument("--diffusion", choices=DIFFUSIONS, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--n0", type=int)
    p.add_argument("--schedule", choices=SCHEDULES, default=Schedule.SAME_KEY.value)
    p.add_argument("--harden", action="store_true", help="rotate the diffusion scan order every round")
    p.add_argument("--master-key", help="32 hex characters")
    p.add_argument("--confusion-key", help="k | u,v | k1,k2,...,kt")
    p.add_argument("--diffusion-key", type=int)
    p.add_argument("--T", type=int, default=DEFAULT_T)
    p.add_argument("--S", type=int, default=DEFAULT_S)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--in", dest="input")
    src.add_argument("--gen-image", type=int, metavar="SEED", help="use a seeded random image instead of --in")
    p.add_argument("--size", type=int, default=256, help="side of the --gen-image image")
    p.add_argument("--out", required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chaoscrypt", description="Chaos-based image cipher workbench")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name in ("encrypt", "decrypt"):
        _add_cipher_flags(sub.add_parser(name))

    p = sub.add_parser("attack", help="recover the diffusion key from the corner pixel")
    p.add_argument("--plain", required=True)
    p.add_argument("--cipher", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--diffusion", choices=DIFFUSIONS, required=True)
    p.add_argument("--csv")

    p = sub.add_parser("metric", help="Cdr / Adc / Pcr sweeps")
    p.add_argument("name", choices=["cdr", "adc", "pcr"])
    p.add_argument("--map", choices=MAPS, default=MapKind.CAT.value)
    p.add_argument("--diffusion", choices=DIFFUSIONS, default=DiffusionKind.POW.value)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int)
    p.add_argument("--size", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--q-init", type=int, default=7)
    p.add_argument("--bit", type=int, default=0)
    p.add_argument("--flip-index", type=int, default=0)
    p.add_argument("--csv", help="output path; cdr/adc write one file per n with an _n<k> suffix")

    p = sub.add_parser("keyspace")
    p.add_argument("--map", choices=MAPS, required=True)
    p.add_argument("--size", type=int, default=256)
    p.add_argument("--levels", type=int, default=256)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--mode", choices=SCHEDULES, default=Schedule.SAME_KEY.value)
    p.add_argument("--n0", type=int)

    p = sub.add_parser("complexity")
    p.add_argument("--map", choices=MAPS, required=True)
    p.add_argument("--diffusion", choices=DIFFUSIONS, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--n0", type=int)
    p.add_argument("--schedule", choices=SCHEDULES, default=Schedule.SAME_KEY.value)

    p = sub.add_parser("keygen")
    p.add_argument("--master-key", required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--T", type=int, default=DEFAULT_T)
    p.add_argument("--S", type=int, default=DEFAULT_S)

    p = sub.add_parser("gen-image")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int, default=256)
    p.add_argument("--out", required=True)
    return parser


def _config(args, n_side: int, levels: int) -> CipherConfig:
    try:
        return CipherConfig(
            MapKind(args.map),
            DiffusionKind(args.diffusion),
            n=args.n,
            n0=args.n0,
            schedule=Schedule(args.schedule),
            scan_hardening=args.harden,
            n_side=n_side,
            levels=levels,
        )
    except ValueError as exc:
        raise UsageError(f"--n/--n0/--schedule: {exc}")


def _round_keys(args, cfg: CipherConfig) -> RoundKeys:
    explicit = args.confusion_key is not None or args.diffusion_key is not None
    if args.master_key and explicit:
        raise UsageError("--master-key cannot be combined with --confusion-key/--diffusion-key")
    if args.master_key:
        return derive_round_keys(MasterKey.from_hex(args.master_key), cfg, args.T, args.S)
    if args.confusion_key is None or args.diffusion_key is None:
        raise UsageError("give --master-key or both --confusion-key and --diffusion-key")
    key = parse_confusion_key(args.confusion_key, cfg.map_kind)
    return RoundKeys.single(key, DiffusionKey(args.diffusion_key), cfg.groups)


def _cmd_cipher(args) -> int:
    img = Image.random(args.size, seed=args.gen_image) if args.input is None else read_pgm(args.input)
    cfg = _config(args, img.n, img.levels)
    keys = _round_keys(args, cfg)
    run = encrypt if args.command == "encrypt" else decrypt
    write_pgm(args.out, run(img, cfg, keys))
    return EXIT_OK


def _cmd_attack(args) -> int:
    plain, cipher = read_pgm(args.plain), read_pgm(args.cipher)
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    cfg = CipherConfig(MapKind.CAT, DiffusionKind(args.diffusion), n=args.n, n_side=plain.n, levels=plain.levels)
    report = attack.corner_attack(plain, cipher, cfg)
    res = report.result
    print("candidates:", " ".join(str(q) for q in res.candidates) or "(none)")
    print(f"attempts: {res.attempts}")
    print(f"reduction factor: {report.reduction_factor:g}x")
    if args.csv:
        attack.write_attack_csv(report, args.csv)
    return EXIT_OK


def _series_path(base: str, suffix: str) -> Path:
    path = Path(base)
    return path.with_name(f"{path.stem}_{suffix}{path.suffix or '.csv'}")


def _cmd_metric(args) -> int:
    n = args.size
    if args.name == "pcr":
        n_max = args.n_max or 20
        img = Image.random(n, seed=args.seed)
        series = metrics.pcr_curve(img, DiffusionKind(args.diffusion), args.q_init, n_max, args.flip_index, args.bit)
        for m, pct in series.rows:
            print(f"{m},{pct:.6f}")
        if args.csv:
            metrics.write_series_csv(series, args.csv, "pcr", "none", n, img.levels, args.seed)
        return EXIT_OK

    kind = MapKind(args.map)
    n_max = args.n_max or 6
    if not 0 <= args.n_min <= n_max:
        raise UsageError("--n-min must lie in [0, --n-max]")
    family = metrics.default_family(kind, n)
    n_range = range(args.n_min, n_max + 1)
    if args.name == "cdr":
        all_series = metrics.cdr_sweep(kind, family, n_range, n, seed=args.seed)
    else:
        all_series = metrics.adc_sweep(kind, family, n_range, n)
    for m, series in zip(n_range, all_series):
        vals = series.values
        print(f"n={m} keys={len(vals)} mean={series.mean():.4f} min={min(vals):.4f} max={max(vals):.4f}")
        if args.csv:
            metrics.write_series_csv(series, _series_path(args.csv, f"n{m}"), args.name, kind.value, n, 256, args.seed)
    return EXIT_OK


def _cmd_keyspace(args) -> int:
    try:
        rep = metrics.keyspace_report(MapKind(args.map), args.size, args.levels, args.n, Schedule(args.mode), args.n0)
    except ValueError as exc:
        raise UsageError(str(exc))
    print(f"map={rep.map_kind.value} mode={rep.mode.value} n={rep.n}")
    print(f"log2 parameter space: {rep.log2_parameter_space:.6f}")
    print(f"log2 key space: {rep.log2_total_key_space:.6f}")
    if rep.log2_swept_parameter_space is not None:
        print(f"log2 swept parameter range: {rep.log2_swept_parameter_space:.6f}")
    return EXIT_OK


def _cmd_complexity(args) -> int:
    try:
        cfg = CipherConfig(MapKind(args.map), DiffusionKind(args.diffusion), n=args.n, n0=args.n0, schedule=Schedule(args.schedule))
    except ValueError as exc:
        raise UsageError(str(exc))
    rep = metrics.complexity_report(cfg)
    print(f"confusion passes: {rep.confusion_passes}, diffusion passes: {rep.diffusion_passes}")
    print(f"additions: {rep.additions}*N^2*a")
    print(f"multiplications: {rep.multiplications}*N^2*b")
    return EXIT_OK


def _cmd_keygen(args) -> int:
    for t, pair in enumerate(generate_subkeys(MasterKey.from_hex(args.master_key), args.count, args.T, args.S), 1):
        width = (args.S + 3) // 4
        print(f"{t}: X1={pair.x1:0{width}x} X2={pair.x2:0{width}x}")
    return EXIT_OK


def _cmd_gen_image(args) -> int:
    write_pgm(args.out, Image.random(args.size, seed=args.seed))
    return EXIT_OK


COMMANDS = {
    "encrypt": _cmd_cipher,
    "decrypt": _cmd_cipher,
    "attack": _cmd_attack,
    "metric": _cmd_metric,
    "keyspace": _cmd_keyspace,
    "complexity": _cmd_complexity,
    "keygen": _cmd_keygen,
    "gen-image": _cmd_gen_image,
}


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ChaosCryptError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
