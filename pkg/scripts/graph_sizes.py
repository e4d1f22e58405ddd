"""Distribution of reduction-graph sizes and evaluation lengths for typed terms."""
import argparse
import random
from collections import Counter

from distlam.harness.generators import gen_typed_term
from distlam.harness.report import GenConfig
from distlam.rewrite import build_graph, longest_path


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--size", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = GenConfig(seed=args.seed, max_size=args.size, annotated=True)
    nodes, lengths = Counter(), Counter()
    for i in range(args.samples):
        _, t = gen_typed_term(cfg, random.Random(cfg.trial_seed(i)))
        g = build_graph(t)
        nodes[len(g.nodes)] += 1
        lengths[longest_path(g)] += 1
    print("graph nodes: count")
    for n in sorted(nodes):
        print(f"  {n:4d}: {nodes[n]}")
    print("longest path: count")
    for n in sorted(lengths, key=lambda x: (not isinstance(x, int), x if isinstance(x, int) else 0)):
        print(f"  {n}: {lengths[n]}")


if __name__ == "__main__":
    main()
