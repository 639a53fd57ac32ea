"""Equivalence fuzzing: run all five checkers on random pairs and count verdicts.

    python scripts/run_fuzz.py --n 3 4 --q 3 --pairs 5000 --seed 1
"""

import argparse
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import List

import numpy as np

from bitrades.checkers import check_all
from bitrades.hamming import Params, SignedPair


@dataclass
class FuzzConfig:
    ns: List[int] = field(default_factory=lambda: [3, 4])
    q: int = 3
    pairs: int = 5000
    seed: int = 0
    max_density: float = 0.4


def random_pair(params: Params, rng: np.random.Generator, density: float) -> SignedPair:
    u = rng.random(params.size)
    f = np.where(u < density / 2, 1, np.where(u < density, -1, 0))
    return SignedPair.from_function(params, f)


def run(cfg: FuzzConfig) -> int:
    rng = np.random.default_rng(cfg.seed)
    disagreements = 0
    for n in cfg.ns:
        params = Params(n, cfg.q)
        tally = Counter()
        t0 = time.monotonic()
        for _ in range(cfg.pairs):
            density = rng.uniform(0.0, cfg.max_density)
            report = check_all(random_pair(params, rng, density), strict=False)
            tally[report.status.value] += 1
            if not report.agreement:
                disagreements += 1
                print("DISAGREEMENT", {k: v.status.value for k, v in report.verdicts.items()})
        dt = time.monotonic() - t0
        print(f"H({n},{cfg.q}): {cfg.pairs} pairs in {dt:.1f}s, verdicts {dict(tally)}")
    print(f"disagreements: {disagreements}")
    return 1 if disagreements else 0


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--pairs", type=int, default=5000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-density", type=float, default=0.4)
    a = ap.parse_args()
    raise SystemExit(run(FuzzConfig(a.n, a.q, a.pairs, a.seed, a.max_density)))


if __name__ == "__main__":
    main()
