#!/usr/bin/env python3
"""Recompute AUC from probs.tsv by enumerating every positive/negative pair
and compare it with the value stored in report.json."""
import json
import sys


def pair_auc(rows):
    pos = [p for s, p in rows if s > 0]
    neg = [p for s, p in rows if s < 0]
    wins = 0.0
    for a in pos:
        for b in neg:
            wins += 1.0 if a > b else 0.5 if a == b else 0.0
    return 100.0 * wins / (len(pos) * len(neg))


def main(probs_path, report_path):
    rows = []
    with open(probs_path) as f:
        next(f)
        for line in f:
            _, _, sign, prob = line.split("\t")
            rows.append((int(sign), float(prob)))
    expected = pair_auc(rows)
    reported = json.load(open(report_path))["metrics"]["auc"]
    if abs(expected - reported) > 1e-9:
        print(f"AUC mismatch: pairs {expected!r} vs report {reported!r}")
        return 1
    print(f"AUC {reported:.6f} agrees with pair enumeration")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], sys.argv[2]))
