"""
Region map of the (lambda, lambda, mu) family
=============================================

Scan a grid of maps diag(lambda, lambda, mu), count the CP region, the
sufficient Kadison-Schwarz region and the crescent between them, and write
the CSV files that a plotting tool can draw directly.

Run from the repository root; files go to the current directory.
"""
from collections import Counter

from ksqubit.scan import boundary_curves, curves_to_csv, rows_to_csv, scan_llm

rows = scan_llm((-1, 1), (-1, 1), 81)
labels = Counter(r.ks_label for r in rows)
cp = sum(r.cp for r in rows)
crescent = sum(r.ks_label == "sufficient" and not r.cp for r in rows)
print(f"{len(rows)} maps: cp {cp}, crescent {crescent}, labels {dict(labels)}")

with open("llm_scan.csv", "w", newline="\n") as fh:
    fh.write(rows_to_csv(rows))
with open("llm_boundaries.csv", "w", newline="\n") as fh:
    fh.write(curves_to_csv(boundary_curves((-1, 1), 201)))

# a coarse text rendering: C = cp, s = sufficient only, ? = undetermined, . = violated
glyph = {"sufficient": "s", "undetermined": "?", "violated": "."}
coarse = scan_llm((-1, 1), (-1, 1), 21)
for i in range(20, -1, -1):
    line = coarse[i * 21:(i + 1) * 21]
    print("".join("C" if r.cp else glyph[r.ks_label] for r in line), f" lambda = {line[0].lambda1:+.1f}")
print("mu from -1 (left) to 1 (right)")
