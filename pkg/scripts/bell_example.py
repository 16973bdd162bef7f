"""Bell-state entanglement via the partial-transpose witness, plus a Werner sweep.

    python scripts/bell_example.py [--samples 200]
"""
import argparse

import numpy as np

from kdquasi import demos, quasiprob, witness
from kdquasi.errors import NotDetectedError

parser = argparse.ArgumentParser()
parser.add_argument("--samples", type=int, default=200)
args = parser.parse_args()

text, _ = demos.bell_demo(n_separable=args.samples)
print(text, end="")

print("\nWerner p, Tr[W rho], scale, witness event, total negativity")
for p in np.linspace(0.0, 1.0, 11):
    rho = demos.werner_state(p)
    try:
        w = witness.ppt_entanglement_witness(rho)
    except NotDetectedError:
        print(f"{p:.1f}  PPT (not detected)")
        continue
    ew = witness.extend_and_scale(w)
    _, dist = quasiprob.witness_distribution(rho, ew)
    print(f"{p:.1f}  {w.expectation(rho):+.6f}  {ew.scale:.4f}  {dist.all_zeros:+.6f}  "
          f"{quasiprob.total_negativity(dist):.6f}")
