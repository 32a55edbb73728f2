#!/usr/bin/env python3
"""Census of tetravalent edge-transitive Cayley graphs over all
hypothesis-(*) groups up to a given order.

Writes one JSON report per spec (JSONL) and prints a summary table.

Usage:
    python scripts/run_census.py --max-order 231 [--jobs 4] [--out census.jsonl]
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from metacirc.classify import classify_spec, report_to_json_dict
from metacirc.groups import iter_specs


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=231)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args()

    out = args.out.open("w") if args.out else None
    header = f"{'spec':>14} {'|G|':>5} {'n0':>3} {'cls':>3} {'phi/2':>5} {'claim':>5} {'aut orders':>24} flags"
    print(header)
    print("-" * len(header))
    t0 = time.time()
    for spec in iter_specs(args.max_order):
        report = classify_spec(spec, bound=args.max_order, jobs=args.jobs)
        payload = report_to_json_dict(report)
        if out:
            out.write(json.dumps(payload) + "\n")
        orders = ",".join(str(c.aut_order) for c in report.classes)
        flags = []
        if report.agreement_theorem2 is False:
            flags.append("count!")
        if any(not c.half and not c.arc for c in report.classes):
            flags.append("odd-transitivity!")
        if any(c.arc for c in report.classes):
            flags.append("arc-transitive-class")
        if report.findings:
            flags.append(f"{len(report.findings)} findings")
        print(
            f"({spec.m:>3},{spec.n:>3},{spec.r:>3}) {spec.order:>5} {spec.n0:>3} "
            f"{report.oracle_count:>3} {report.phi_n0_half:>5} {str(report.thm2_claim):>5} "
            f"{orders:>24} {' '.join(flags)}"
        )
    print(f"\ntotal: {time.time() - t0:.1f}s")
    if out:
        out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
