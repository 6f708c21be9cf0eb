"""Tiny CSV helper shared by the experiment scripts."""

import argparse
import csv
import sys


def parser(doc):
    p = argparse.ArgumentParser(description=doc)
    p.add_argument("--out", help="CSV output path (default stdout)")
    return p


def write(rows, header, out=None):
    fh = open(out, "w", newline="", encoding="utf-8") if out else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([format(v, ".17g") if isinstance(v, float) else v for v in row])
    finally:
        if out:
            fh.close()
