"""Run every property suite over a range of seeds and tabulate counts and timings."""
import argparse
from dataclasses import replace

from distlam.harness.report import GenConfig
from distlam.harness.suites import SUITES, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--size", type=int, default=12)
    ap.add_argument("--suite", choices=list(SUITES), nargs="*", default=list(SUITES))
    args = ap.parse_args()
    print(f"{'suite':22s} {'seed':>5s} {'attempted':>9s} {'passed':>8s} {'vacuous':>8s} "
          f"{'fail':>5s} {'time':>7s}")
    failures = 0
    for seed in args.seeds:
        cfg = replace(GenConfig(), seed=seed, trials=args.trials, max_size=args.size)
        for name in args.suite:
            r = run_suite(name, cfg)
            failures += len(r.counterexamples)
            print(f"{name:22s} {seed:5d} {r.attempted:9d} {r.passed:8d} {r.vacuous:8d} "
                  f"{len(r.counterexamples):5d} {r.wall_time:6.2f}s", flush=True)
            for c in r.counterexamples[:3]:
                print(f"    seed {c.seed}: {c.term} :: {c.details}")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
