"""Sweep the Bloch polar angle and compare the witness event with the distance
to the z-axis.  Writes a CSV with columns theta, distance, scale, event, ratio.

    python scripts/negativity_vs_distance.py [--n 25] [--out sweep.csv]
"""
import argparse
import csv
import sys

import numpy as np

from kdquasi import qcore, quasiprob, resources, witness

parser = argparse.ArgumentParser()
parser.add_argument("--n", type=int, default=25)
parser.add_argument("--phi", type=float, default=0.0)
parser.add_argument("--mix", type=float, default=0.0, help="white-noise weight mixed into the pure state")
parser.add_argument("--out", default=None)
args = parser.parse_args()

model = resources.qubit_z_axis()
fh = open(args.out, "w", newline="") if args.out else sys.stdout
w = csv.writer(fh)
w.writerow(["theta", "distance", "scale", "witness_event", "event_over_distance"])
for theta in np.linspace(0.05, np.pi - 0.05, args.n):
    psi = qcore.bloch_state(theta, args.phi)
    rho = (1 - args.mix) * qcore.ketbra(psi) + args.mix * np.eye(2) / 2
    _, dist = resources.closest_classical(rho, model)
    ew = witness.extend_and_scale(witness.geometric_witness(rho, model))
    _, qd = quasiprob.witness_distribution(rho, ew)
    w.writerow([f"{theta:.6f}", f"{dist:.12g}", f"{ew.scale:.12g}", f"{qd.all_zeros:.12g}",
                f"{qd.all_zeros / dist:.12g}"])
if args.out:
    fh.close()
