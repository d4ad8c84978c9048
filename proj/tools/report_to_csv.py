#!/usr/bin/env python3
"""Convert a campaign report JSON file to CSV, one row per record.

Columns are the union of record keys in first-seen order, matching the CSV the
CLI emits with --csv: floats printed with 17 significant digits, booleans as
true/false, nested values as compact JSON.
"""

import argparse
import csv
import json
import sys


def cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, (dict, list)):
        return json.dumps(value, separators=(",", ":"))
    return value


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("report", help="report JSON produced by `bmt verify ... --out`")
    ap.add_argument("-o", "--output", default="-",
                    help="output CSV path (default: stdout)")
    args = ap.parse_args()

    with open(args.report) as fh:
        rep = json.load(fh)
    records = rep.get("records", [])

    columns = []
    for rec in records:
        for key in rec:
            if key not in columns:
                columns.append(key)

    out = sys.stdout if args.output == "-" else open(args.output, "w", newline="")
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(columns)
        for rec in records:
            writer.writerow([cell(rec.get(c)) for c in columns])
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    main()
