"""Run every verification suite over the requested fields and print a one-line summary each."""

import argparse
import json
import sys

from sjlab.exact import field_from_tag
from sjlab.verify import SUITES, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fields", default="Q,F5", help="comma-separated field tags")
    ap.add_argument("--json", help="write all reports to this file")
    args = ap.parse_args()
    reports, ok = [], True
    for tag in args.fields.split(","):
        F = field_from_tag(tag)
        for sid in SUITES:
            rep = run_suite(sid, F, timing=True)
            reports.append(rep)
            ok &= rep["pass"]
            status = "pass" if rep["pass"] else "FAIL"
            extra = f" skipped={rep['skipped']}" if rep["skipped"] else ""
            print(f"{F.tag:6s} {sid:7s} {status} {rep['runtime_s']:7.2f}s{extra}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(reports, fh, indent=1)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
