"""Empirical approximation ratios of greedy, greedy+LP and the path FPTAS.

Prints one CSV row per instance with each algorithm's welfare divided by
the exact optimum.
"""

import argparse
import csv
import random
import sys
from fractions import Fraction

from dpg.core import social_welfare
from dpg.generators import random_instance, random_path
from dpg.oracle import exact_optimum
from dpg.welfare import greedy_endpoints, order_of, ordered_lp, path_fptas


def ratio(sw, opt):
    return float(sw / opt) if opt else 1.0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--epsilon", default="1/5")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    eps = Fraction(args.epsilon)
    out = csv.writer(sys.stdout)
    out.writerow(["trial", "family", "n", "opt", "greedy", "greedy_lp", "fptas"])
    for t in range(args.trials):
        n = rng.randint(2, args.max_n)
        path = t % 2 == 1
        inst = random_path(rng, n) if path else random_instance(rng, n)
        _, opt = exact_optimum(inst)
        G = greedy_endpoints(inst)
        sw_g = social_welfare(inst, G)
        sw_lp = social_welfare(inst, ordered_lp(inst, order_of(G)))
        fp = ratio(social_welfare(inst, path_fptas(inst, eps)), opt) if path else ""
        out.writerow([t, "path" if path else "general", n, opt,
                      f"{ratio(sw_g, opt):.4f}", f"{ratio(sw_lp, opt):.4f}",
                      f"{fp:.4f}" if path else ""])


if __name__ == "__main__":
    main()
