"""Run the verification batch: export diagrams, query the engine, emit the
VolumeReport."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .engine import snappy_engine
from .jobs import build_jobs, run_jobs, write_report


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="pyverify")
    ap.add_argument("--g", type=int, default=1)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--n", type=int, nargs="+", default=[5, 10])
    ap.add_argument("--workdir", default="pyverify-work")
    ap.add_argument("--report", default="volume_report.json")
    ap.add_argument("--tolerance", type=float, default=1e-6)
    ap.add_argument("--parallelism", type=int, default=4)
    args = ap.parse_args(argv)

    engine = snappy_engine()
    if engine is None:
        print(
            "no geometry engine available (snappy is not installed); "
            "install the 'snappy' extra to run volumes",
            file=sys.stderr,
        )
        return 2
    jobs = build_jobs(
        args.workdir, g=args.g, seed=args.seed, n_values=tuple(args.n),
        tolerance=args.tolerance,
    )
    entries, errors = run_jobs(jobs, engine, parallelism=args.parallelism)
    path = write_report(args.report, entries, errors)
    print(f"wrote {path} with {len(entries)} entries")
    print(f"check it with: platforge volume-chain --report {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
