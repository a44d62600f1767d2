"""Best-response dynamics step counts on the creeping example as k grows.

Prints CSV: k, steps, converged, final welfare.
"""

import argparse
import csv
import sys

from dpg.core import social_welfare
from dpg.reductions import example2
from dpg.stability import best_response_dynamics


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ks", default="2,4,8,16,32,64")
    args = ap.parse_args()
    out = csv.writer(sys.stdout)
    out.writerow(["k", "steps", "converged", "sw"])
    for k in map(int, args.ks.split(",")):
        inst = example2(k)
        A, trace = best_response_dynamics(inst)
        out.writerow([k, trace.iterations, trace.converged, social_welfare(inst, A)])


if __name__ == "__main__":
    main()
