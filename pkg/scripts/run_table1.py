#!/usr/bin/env python3
"""Full-load PAPR of CRS(31,k) vs conventional RS(31,k) framing for
k = 19, 21, ..., 29 (the encoder-output comparison table)."""
import argparse

from papr_lab import harness


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="table1.csv")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    cfg = harness.SimConfig(load="full", master_seed=args.seed)
    rows = harness.run_crs_k_sweep(cfg=cfg)
    harness.emit_ksweep_csv(rows, args.out)
    print(f"{'k':>3} {'crs_db':>8} {'rs_db':>8}")
    for k, crs_db, rs_db in rows:
        print(f"{k:>3} {crs_db:>8.2f} {rs_db:>8.2f}")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
