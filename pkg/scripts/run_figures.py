"""Run every shipped figure configuration and print a verdict table.

Usage: python3 scripts/run_figures.py [--out DIR] [--threads N] [--figs 3 4 ...]
"""

import argparse
import json
import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from turing2 import cli

ROOT = Path(__file__).resolve().parents[1]


def run_one(fig: int, out: Path) -> tuple[int, int, dict]:
    dest = out / f"fig{fig}"
    code = cli.main(["simulate", "--config", str(ROOT / "configs" / "paper" / f"fig{fig}.json"),
                     "--out", str(dest), "--report-only"])
    rep = json.loads((dest / "verdict.json").read_text()) if code == 0 else {}
    return fig, code, rep


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="out/figures")
    ap.add_argument("--threads", type=int, default=int(os.environ.get("TURING2_THREADS", "1")))
    ap.add_argument("--figs", type=int, nargs="*", default=[3, 4, 5, 6, 7, 8, 9])
    args = ap.parse_args()
    out = Path(args.out)
    with ProcessPoolExecutor(max_workers=max(1, args.threads)) as pool:
        results = sorted(pool.map(run_one, args.figs, [out] * len(args.figs)))
    print(f"{'fig':>4} {'verdict':>14} {'sign':>5} {'corr v':>8} {'expected':>28} met")
    for fig, code, rep in results:
        if code:
            print(f"{fig:>4} exit code {code}")
            continue
        exp = rep.get("expectation", {})
        print(f"{fig:>4} {rep['verdict']:>14} {rep['sign']:>+5d} {rep['correlation']['v']:>8.4f} "
              f"{json.dumps(exp.get('expected')):>28} {exp.get('met')}")


if __name__ == "__main__":
    main()
