#!/usr/bin/env python3
"""Fixed bit-length grid experiment: semiprimes of 40, 50, and 60 bits built
from prime pairs five bits apart, both algorithms, per-number time budget,
then the full report.

At the default count of 10 semiprimes per group the 60-bit rows include
attempts that run into the budget; lower --timeout or --count for a quicker
pass.
"""

import argparse
import sys
import time
from pathlib import Path

from factorbench.bench import BenchConfig, run_bench, verify_outcomes, write_results_csv
from factorbench.primegen import DatasetSpec, FixedGroup, generate_dataset, write_dataset_csv
from factorbench.report import render_report


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="results/grid")
    parser.add_argument("--count", type=int, default=10, help="semiprimes per group")
    parser.add_argument("--sizes", default="40,50,60", help="product bit lengths")
    parser.add_argument("--timeout", type=float, default=180.0)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    groups = tuple(
        FixedGroup(args.count, pb, nb - pb, nb)
        for nb in sizes
        for pb in range(5, nb // 2 + 1, 5)
    )
    spec = DatasetSpec(seed=args.seed, groups=groups)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    dataset = generate_dataset(spec)
    write_dataset_csv(out_dir / "dataset.csv", dataset)
    print(f"{len(dataset)} semiprimes across {len(groups)} groups")

    total = len(dataset) * 2
    done = [0]
    start = time.monotonic()

    def progress(record):
        done[0] += 1
        o = record.outcome
        print(
            f"[{done[0]}/{total}] {time.monotonic() - start:7.1f}s "
            f"{o.algorithm:7s} n_bits={record.semiprime.n_bits} {o.status} "
            f"{o.elapsed_seconds:.3f}s",
            flush=True,
        )

    cfg = BenchConfig(
        budget_seconds=args.timeout, seed=args.seed, workers=args.workers
    )
    records = run_bench(dataset, cfg, progress=progress)
    violations = verify_outcomes(records)
    if violations:
        print("\n".join(violations), file=sys.stderr)
        return 1
    write_results_csv(out_dir / "results.csv", records)
    (out_dir / "report.md").write_text(render_report(records), encoding="utf-8")
    print(f"results and report written under {out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
