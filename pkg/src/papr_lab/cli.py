"""Command-line front end.

Subcommands:
  papr    per-frame PAPR experiment, emits a CCDF CSV
  ber     BER-vs-SNR sweep, emits a BER CSV
  ksweep  Table-style CRS(31,k) vs conventional RS(31,k) full-load sweep
  fec     encode/decode files of raw 16-byte frames (debugging aid)

Every option can also come from a flat `key = value` config file passed via
--config; explicit command-line flags override file values.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import harness
from .fec import bch, crs, rs

FRAME_BYTES = 16  # 128-bit frames on disk


def _parse_snr(text: str) -> tuple:
    """Accept either 'start:step:stop' (inclusive) or a comma list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"bad snr range {text!r}, expected start:step:stop")
        start, step, stop = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("snr step must be positive")
        n = int(np.floor((stop - start) / step + 1e-9)) + 1
        return tuple(start + i * step for i in range(n))
    return tuple(float(p) for p in text.split(","))


def _read_config_file(path: str) -> dict:
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, val = (s.strip() for s in line.split("=", 1))
            values[key.replace("-", "_")] = val
    return values


_BOOL_TRUE = {"1", "true", "yes", "on"}
_BOOL_FALSE = {"0", "false", "no", "off"}


def _coerce(key: str, val: str, template):
    if isinstance(template, bool):
        low = val.lower()
        if low in _BOOL_TRUE:
            return True
        if low in _BOOL_FALSE:
            return False
        raise ValueError(f"config key {key}: bad boolean {val!r}")
    if isinstance(template, int):
        return int(val)
    if isinstance(template, float):
        return float(val)
    return val


def _merge_config(args: argparse.Namespace, defaults: dict) -> dict:
    """defaults <- config file <- explicit CLI flags."""
    merged = dict(defaults)
    if getattr(args, "config", None):
        for key, val in _read_config_file(args.config).items():
            if key not in defaults:
                raise ValueError(f"unknown config key {key!r}")
            merged[key] = _coerce(key, val, defaults[key])
    for key in defaults:
        cli_val = getattr(args, key, None)
        if cli_val is not None:
            merged[key] = cli_val
    return merged


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--seed", type=int, dest="master_seed",
                   help="master RNG seed")
    p.add_argument("--workers", type=int, help="concurrent burst workers")
    p.add_argument("--frames-per-burst", type=int, dest="frames_per_burst")
    p.add_argument("--out", help="output CSV path")


_PAPR_DEFAULTS = dict(scheme="none", companding=False, mu=25.0, load="random",
                      frames=1000, master_seed=0, frames_per_burst=10,
                      workers=1, out="papr_ccdf.csv")

_BER_DEFAULTS = dict(scheme="none", companding=False, mu=25.0, channel="awgn",
                     snr="0:2:20", bits=1_000_000, master_seed=0,
                     frames_per_burst=10, workers=1, out="ber.csv")

_KSWEEP_DEFAULTS = dict(master_seed=0, frames_per_burst=10,
                        out="ksweep.csv")


def _cmd_papr(args: argparse.Namespace) -> int:
    cfg_vals = _merge_config(args, _PAPR_DEFAULTS)
    cfg = harness.SimConfig(
        scheme=cfg_vals["scheme"], companding=cfg_vals["companding"],
        mu=cfg_vals["mu"], load=cfg_vals["load"], frames=cfg_vals["frames"],
        master_seed=cfg_vals["master_seed"],
        frames_per_burst=cfg_vals["frames_per_burst"],
        workers=cfg_vals["workers"], out=cfg_vals["out"])
    result = harness.run_papr_experiment(cfg)
    if result.curve is None:
        raise harness.ConfigError(
            "too few frames for a CCDF; use --frames >= 100")
    harness.emit_ccdf_csv(result.curve, cfg.out)
    print(f"{result.scheme} load={result.load} compand={int(result.companding)}"
          f" max_papr_db={result.max_papr_db:.2f} -> {cfg.out}")
    return 0


def _cmd_ber(args: argparse.Namespace) -> int:
    cfg_vals = _merge_config(args, _BER_DEFAULTS)
    cfg = harness.SimConfig(
        scheme=cfg_vals["scheme"], companding=cfg_vals["companding"],
        mu=cfg_vals["mu"], channel=cfg_vals["channel"],
        snr_list_db=_parse_snr(cfg_vals["snr"]), bits=cfg_vals["bits"],
        master_seed=cfg_vals["master_seed"],
        frames_per_burst=cfg_vals["frames_per_burst"],
        workers=cfg_vals["workers"], out=cfg_vals["out"])
    records = harness.run_ber_sweep(cfg)
    harness.emit_ber_csv(records, cfg.out)
    for r in records:
        print(f"snr={r.snr_db:g} dB ber={r.ber:.3e} "
              f"({r.bits_error}/{r.bits_total})")
    print(f"-> {cfg.out}")
    return 0


def _cmd_ksweep(args: argparse.Namespace) -> int:
    cfg_vals = _merge_config(args, _KSWEEP_DEFAULTS)
    cfg = harness.SimConfig(load="full",
                            master_seed=cfg_vals["master_seed"],
                            frames_per_burst=cfg_vals["frames_per_burst"])
    rows = harness.run_crs_k_sweep(cfg=cfg)
    harness.emit_ksweep_csv(rows, cfg_vals["out"])
    for k, crs_db, rs_db in rows:
        print(f"k={k} crs={crs_db:.2f} dB rs={rs_db:.2f} dB")
    print(f"-> {cfg_vals['out']}")
    return 0


def _frame_to_bits(block: bytes) -> np.ndarray:
    return np.unpackbits(np.frombuffer(block, dtype=np.uint8))


def _bits_to_frame(bits: np.ndarray) -> bytes:
    padded = np.zeros(8 * FRAME_BYTES, dtype=np.uint8)
    padded[:bits.size] = bits
    return np.packbits(padded).tobytes()


def _cmd_fec(args: argparse.Namespace) -> int:
    scheme = harness.get_scheme(args.scheme)
    with open(args.infile, "rb") as fh:
        data = fh.read()
    if len(data) % FRAME_BYTES:
        raise ValueError(f"{args.infile}: size {len(data)} is not a multiple "
                         f"of the {FRAME_BYTES}-byte frame size")
    out_blocks = []
    for off in range(0, len(data), FRAME_BYTES):
        bits = _frame_to_bits(data[off:off + FRAME_BYTES])
        if args.mode == "encode":
            out_bits = scheme.encode(bits[:scheme.payload_bits])
        else:
            out_bits = scheme.decode(bits)
        out_blocks.append(_bits_to_frame(np.asarray(out_bits, dtype=np.uint8)))
    with open(args.outfile, "wb") as fh:
        fh.write(b"".join(out_blocks))
    print(f"{args.mode}d {len(out_blocks)} frame(s) with {args.scheme} "
          f"-> {args.outfile}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="papr-lab",
        description="FBMC-OQAM PAPR/BER experiments with BCH, punctured RS "
                    "and constrained RS coding plus mu-law companding")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("papr", help="PAPR experiment, emits CCDF CSV")
    p.add_argument("--scheme",
                   help="none | bch | rs2516 | crs31_<k>")
    p.add_argument("--compand", action="store_const", const=True,
                   dest="companding", default=None)
    p.add_argument("--mu", type=float)
    p.add_argument("--load", choices=("random", "full"))
    p.add_argument("--frames", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_papr)

    p = sub.add_parser("ber", help="BER-vs-SNR sweep, emits BER CSV")
    p.add_argument("--scheme")
    p.add_argument("--compand", action="store_const", const=True,
                   dest="companding", default=None)
    p.add_argument("--mu", type=float)
    p.add_argument("--channel",
                   choices=("awgn", "pedestrian_b", "vehicular_a"))
    p.add_argument("--snr", help="start:step:stop (inclusive) or comma list")
    p.add_argument("--bits", type=int, help="payload bits per SNR point")
    _add_common(p)
    p.set_defaults(func=_cmd_ber)

    p = sub.add_parser("ksweep",
                       help="CRS(31,k) vs conventional RS(31,k) full-load PAPR")
    _add_common(p)
    p.set_defaults(func=_cmd_ksweep)

    p = sub.add_parser("fec", help="encode/decode raw 16-byte frame files")
    p.add_argument("mode", choices=("encode", "decode"))
    p.add_argument("--scheme", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.set_defaults(func=_cmd_fec)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError,
            rs.DecodeFailure, crs.LayoutInfeasible) as ex:
        print(f"papr-lab: error: {ex}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
