#!/usr/bin/env python3
"""Print the two B6 worked examples: diagrams, statistics and dimensions."""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from orthorook import Mark, battleship, build_root_system, placement_from_tokens, render_diagram
from orthorook.placement import dim_via_diagram, stats


@dataclass
class Config:
    rank: int = 6
    placements: list[str] = field(default_factory=lambda: ["e1, e2+e6, e3+e5", "e1, e2+e5, e3-e6"])


def main(cfg: Config) -> None:
    S = build_root_system("B", cfg.rank)
    for text in cfg.placements:
        D = placement_from_tokens(S, text)
        st = stats(D)
        F = battleship(D)
        print(f"B{cfg.rank}  D = {{{text}}}")
        print(render_diagram(D))
        counts = {m.value: F.count(m) for m in Mark}
        print(f"marks {counts}")
        print(f"l = {st.length}  s = {st.support_size}  d = {st.d_stat}")
        print(f"dim by Weyl = {st.dim}  dim by diagram = {dim_via_diagram(D)}\n")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--placement", action="append", help="override the placements shown")
    args = ap.parse_args()
    cfg = Config() if not args.placement else Config(placements=args.placement)
    main(cfg)
