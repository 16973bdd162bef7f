"""Print the single-qubit coherence walkthrough and save its distribution.

    python scripts/qubit_example.py [--p 0.75] [--out results/qubit]
"""
import argparse
from pathlib import Path

from kdquasi import demos

parser = argparse.ArgumentParser()
parser.add_argument("--p", type=float, default=0.75)
parser.add_argument("--out", default=None)
args = parser.parse_args()

text, dist = demos.qubit_demo(args.p)
print(text, end="")
if args.out:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.txt").write_text(text)
    dist.write_csv(out / "distribution.csv")
