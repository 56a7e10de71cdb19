#!/usr/bin/env python3
"""Regenerate every scenario dataset into one directory.

Writes fig3b..fig7 and scaling-check CSVs with default settings, plus the
fig7 variants for each composite-pulse kind. Run from anywhere:

    python scripts/run_all_scenarios.py --out-dir out --seed 0
"""
import argparse
from pathlib import Path

from mwgates.config import SCENARIOS, resolve_config
from mwgates.scenarios import run_scenario, write_csv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="out", type=Path)
    parser.add_argument("--seed", default=0, type=int)
    parser.add_argument("--shots", default=0, type=int,
                        help="binomial shots per point (0 = exact populations)")
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    jobs = [(name, [], f"{name}.csv") for name in SCENARIOS]
    jobs += [
        ("fig7", [{"sequence": {"kind": "sk1"}}], "fig7_sk1.csv"),
        ("fig7", [{"sequence": {"kind": "bb1"}}], "fig7_bb1.csv"),
    ]
    for scenario, overrides, filename in jobs:
        cfg = resolve_config(scenario, overrides + [{"shots": args.shots}], seed=args.seed)
        result = run_scenario(cfg)
        path = args.out_dir / filename
        write_csv(result, path)
        print(f"wrote {path} ({len(result.rows)} rows)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
