"""Run the worked examples end to end: the catalog, the obstruction groups and the demos."""

import argparse
import sys

from cohomotopy.cli import run

RUNS = [
    ["catalog"],
    ["smith"],
    ["klein-demo"],
    ["torus-demo"],
    ["cylinder-demo"],
    ["swan-demo", "--n", "3"],
    ["swan-demo", "--n", "2"],
    ["swan-demo", "--n", "1"],
    ["chi"],
    ["mv-map"],
    ["mv-witness"],
]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true", help="pass --json through to every command")
    args = ap.parse_args(argv)
    failures = 0
    for cmd in RUNS:
        cmd = cmd + ["--seed", str(args.seed)] + (["--json"] if args.json else [])
        print(f"$ cohomotopy {' '.join(cmd)}", flush=True)
        code = run(cmd)
        print(f"[exit {code}]\n", flush=True)
        failures += code != 0
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
