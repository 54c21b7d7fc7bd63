#!/usr/bin/env python3
"""Check l(sigma) - l(sigma~) against the per-case prediction for every
placement, and count how often the short-root case has d > 0 (the cases
that tell 2(n + d) - 1 apart from 2(n + 2d) - 1).
"""

from __future__ import annotations

import argparse
from collections import Counter
from dataclasses import dataclass

from orthorook import build_root_system, enumerate_placements
from orthorook.mackey import length_step
from orthorook.weyl import involution_stats


@dataclass
class Config:
    max_rank: int = 5


def run(cfg: Config) -> bool:
    ok_all = True
    for fam in "BD":
        for n in range(2, cfg.max_rank + 1):
            S = build_root_system(fam, n)
            tally = Counter()
            alt_fail = 0
            for D in enumerate_placements(S):
                step = length_step(D)
                tally[step.case, step.ok] += 1
                ok_all &= step.ok
                if step.case == "short":
                    d = involution_stats(S, D.roots).d_stat
                    alt_fail += step.delta != 2 * (n + 2 * d) - 1
            cases = ", ".join(f"{c}:{'ok' if ok else 'BAD'}x{k}" for (c, ok), k in sorted(tally.items()))
            print(f"{S.name:3s} {cases}" + (f"  [2(n+2d)-1 fails on {alt_fail}]" if fam == "B" else ""))
    return ok_all


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-rank", type=int, default=5)
    raise SystemExit(0 if run(Config(ap.parse_args().max_rank)) else 1)
