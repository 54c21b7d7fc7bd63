#!/usr/bin/env python3
"""Tabulate orbit dimensions over every placement of B_n and D_n.

Prints, per system, the number of placements, the distribution of
dimensions and whether the two formulas agree everywhere.
"""

from __future__ import annotations

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from orthorook import build_root_system, enumerate_placements
from orthorook.placement import dim_via_diagram, dim_via_weyl


@dataclass
class Config:
    min_rank: int = 2
    max_rank: int = 5
    families: str = "BD"


def sweep(cfg: Config) -> bool:
    all_ok = True
    for fam in cfg.families:
        for n in range(cfg.min_rank, cfg.max_rank + 1):
            start = time.perf_counter()
            S = build_root_system(fam, n)
            dims = Counter()
            ok = True
            for D in enumerate_placements(S):
                a, b = dim_via_diagram(D), dim_via_weyl(D)
                ok &= a == b
                dims[a] += 1
            all_ok &= ok
            spread = " ".join(f"{d}:{c}" for d, c in sorted(dims.items()))
            print(f"{S.name:4s} placements={sum(dims.values()):6d} agree={ok} "
                  f"max_dim={max(dims)} ({time.perf_counter() - start:.1f}s)  {spread}")
    return all_ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-rank", type=int, default=2)
    ap.add_argument("--max-rank", type=int, default=5)
    ap.add_argument("--families", default="BD")
    a = ap.parse_args()
    raise SystemExit(0 if sweep(Config(a.min_rank, a.max_rank, a.families)) else 1)
