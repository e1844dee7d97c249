#!/usr/bin/env python3
"""Random bit-length corpus experiment: semiprimes with uniformly drawn
factor widths whose products stay below a cap (70 bits by default), both
algorithms timed head to head, scatter points exported for plotting.
"""

import argparse
import sys
import time
from pathlib import Path

from factorbench.bench import BenchConfig, run_bench, verify_outcomes, write_results_csv
from factorbench.primegen import DatasetSpec, RandomGroup, generate_dataset, write_dataset_csv
from factorbench.report import head_to_head, points_csv, render_report


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="results/random_corpus")
    parser.add_argument("--count", type=int, default=200, help="number of semiprimes")
    parser.add_argument("--max-bits", type=int, default=70)
    parser.add_argument("--timeout", type=float, default=180.0)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    spec = DatasetSpec(
        seed=args.seed, random_groups=(RandomGroup(args.count, args.max_bits),)
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    dataset = generate_dataset(spec)
    write_dataset_csv(out_dir / "dataset.csv", dataset)
    print(f"{len(dataset)} semiprimes up to {args.max_bits} bits")

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

    cfg = BenchConfig(budget_seconds=args.timeout, seed=args.seed, workers=args.workers)
    records = run_bench(dataset, cfg, progress=progress)
    violations = verify_outcomes(records)
    if violations:
        print("\n".join(violations), file=sys.stderr)
        return 1
    write_results_csv(out_dir / "results.csv", records)
    (out_dir / "report.md").write_text(render_report(records), encoding="utf-8")
    (out_dir / "points.csv").write_text(points_csv(records), encoding="utf-8")

    h2h = head_to_head(records)
    flagged = sum(1 for r in h2h.rows if r.qs_faster)
    print(f"sieve strictly faster on {flagged} of {len(h2h.rows)} paired products")
    print(f"results, report, and scatter points written under {out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
