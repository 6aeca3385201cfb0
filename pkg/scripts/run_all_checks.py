#!/usr/bin/env python3
"""Run the full verification battery over the catalog and write the JSON
report; prints one line per type plus a strict-grid anomaly summary."""
import argparse
import sys
import time

from mckay import verify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--output", default="verification_report.json")
    ap.add_argument("--strict-theorem", action="store_true")
    args = ap.parse_args()

    t0 = time.monotonic()
    reports = []
    for triple in verify.CATALOG:
        rep = verify.verify_type(triple, strict_theorem=args.strict_theorem)
        reports.append(rep)
        strict = rep.get("theorem_strict")
        anom = len(strict["anomalies"]) if strict else 0
        print(f"{rep['type']:<4} order {rep['order']:<4} "
              f"{'PASS' if rep['pass'] else 'FAIL'}"
              f"{'' if not anom else f'  (specialization anomalies: {anom} cells)'}")
    with open(args.output, "w") as fh:
        fh.write(verify.report_to_json(reports) + "\n")
    print(f"\nreport: {args.output}  ({time.monotonic() - t0:.1f}s)")
    return 0 if all(r["pass"] for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
