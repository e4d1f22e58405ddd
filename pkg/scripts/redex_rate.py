"""Fraction of generated untyped terms that contain a core redex, per max_size."""
import argparse
import random

from distlam.harness.generators import gen_term
from distlam.harness.report import GenConfig
from distlam.rewrite import reducts


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 12, 16, 24])
    args = ap.parse_args()
    print("max_size  redex_rate  mean_size")
    for size in args.sizes:
        cfg = GenConfig(seed=args.seed, max_size=size)
        terms = [gen_term(cfg, random.Random(cfg.trial_seed(i))) for i in range(args.samples)]
        rate = sum(bool(reducts(t)) for t in terms) / len(terms)
        mean = sum(t.size for t in terms) / len(terms)
        print(f"{size:8d}  {rate:10.3f}  {mean:9.2f}")


if __name__ == "__main__":
    main()
