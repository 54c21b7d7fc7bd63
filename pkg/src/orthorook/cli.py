"""Command-line entry point: diagrams, dimensions, the placement atlas and
the verification suites.

Exit codes: 0 pass, 1 counterexample, 2 parse error, 3 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .ffalg import FieldTooSmall, MatrixModel, is_prime
from .placement import (
    Mark,
    PlacementError,
    RookPlacement,
    battleship,
    dim_via_diagram,
    enumerate_placements,
    placement_from_tokens,
    polarization_report,
    render_diagram,
    stats,
)
from .roots import Family, RootError, RootParseError, build_root_system

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INVALID = 0, 1, 2, 3
SCHEMA_VERSION = "1"
ATLAS_FIELDS = ["family", "rank", "placement", "l", "s", "d", "dim", "plus", "minus", "codim"]
SUITES = ("orbit", "polarization", "character", "mackey", "lengths")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class AtlasRow:
    family: str
    rank: int
    placement: str
    l: int
    s: int
    d: int
    dim: int
    plus: int
    minus: int
    codim: int

    @classmethod
    def from_placement(cls, placement: RookPlacement) -> AtlasRow:
        st = stats(placement)
        diagram = battleship(placement)
        minus = diagram.count(Mark.MINUS)
        return cls(
            family=placement.system.family.value,
            rank=placement.system.n,
            placement=";".join(placement.tokens),
            l=st.length,
            s=st.support_size,
            d=st.d_stat,
            dim=st.dim,
            plus=diagram.count(Mark.PLUS),
            minus=minus,
            codim=minus,
        )

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ATLAS_FIELDS}


# ---- helpers ------------------------------------------------------------------


def _system(args):
    try:
        return build_root_system(Family(args.family), args.rank)
    except (RootError, ValueError) as exc:
        raise CliError(EXIT_INVALID, str(exc)) from exc


def _placement(system, text: str) -> RookPlacement:
    try:
        return placement_from_tokens(system, text)
    except RootParseError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from exc
    except (PlacementError, RootError) as exc:
        raise CliError(EXIT_INVALID, f"{type(exc).__name__}: {exc}") from exc


def _prime(args, system) -> int:
    p = args.prime
    if p is None:
        p = max(system.m, 3)
        while not is_prime(p):
            p += 1
    if not is_prime(p) or p < system.m:
        raise CliError(EXIT_INVALID, f"need a prime >= {system.m}, got {p}")
    return p


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _atomic_write(path: str, text: str) -> None:
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".atlas-")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---- commands -----------------------------------------------------------------


def cmd_diagram(args) -> int:
    system = _system(args)
    placement = _placement(system, args.placement)
    sys.stdout.write(render_diagram(placement, args.format))
    return EXIT_OK


def cmd_dim(args) -> int:
    system = _system(args)
    placement = _placement(system, args.placement)
    st = stats(placement)
    by_diagram = dim_via_diagram(placement)
    record = {
        "schema_version": SCHEMA_VERSION,
        "family": system.family.value,
        "rank": system.n,
        "placement": placement.tokens,
        "l": st.length,
        "s": st.support_size,
        "d": st.d_stat,
        "dim_weyl": st.dim,
        "dim_diagram": by_diagram,
        "ok": st.dim == by_diagram,
    }
    if args.json:
        _emit(record)
    else:
        sys.stdout.write(
            f"dim {st.dim} (weyl) {by_diagram} (diagram)  l {st.length}  s {st.support_size}  d {st.d_stat}\n"
        )
    return EXIT_OK if record["ok"] else EXIT_FAIL


def cmd_atlas(args) -> int:
    if args.rank > args.max_rank:
        raise CliError(EXIT_INVALID, f"rank {args.rank} exceeds cap {args.max_rank}")
    system = _system(args)
    rows = [AtlasRow.from_placement(D) for D in enumerate_placements(system)]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=ATLAS_FIELDS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row.as_dict())
        text = buf.getvalue()
    else:
        text = json.dumps({"schema_version": SCHEMA_VERSION, "rows": [r.as_dict() for r in rows]}, indent=2) + "\n"
    if args.out:
        _atomic_write(args.out, text)
        print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    bad = [r for r in rows if not r.dim == r.plus + r.minus == 2 * r.codim]
    return EXIT_FAIL if bad else EXIT_OK


# ---- verification ---------------------------------------------------------------


def _xi_choices(placement: RookPlacement, p: int, mode: str):
    if mode == "ones" or not len(placement):
        yield {b: 1 for b in placement}
        return
    for values in itertools.product(range(1, p), repeat=len(placement)):
        yield dict(zip(placement.roots, values))


def _run_case(case: tuple) -> dict:
    """Worker body; takes only picklable values."""
    suite, family, rank, p, tokens, xi_values, sample, seed = case
    system = build_root_system(family, rank)
    placement = placement_from_tokens(system, tokens)
    xi = dict(zip(placement.roots, xi_values))
    if suite == "orbit":
        from .coadjoint import orbit_dimension_check

        return orbit_dimension_check(MatrixModel(system, p), placement, xi).to_json()
    if suite == "polarization":
        return polarization_report(placement).to_json()
    if suite == "character":
        from .characters import character_report

        rep = character_report(MatrixModel(system, p), placement, xi, sample=sample, seed=seed)
        rep["ok"] = bool(rep["matches_induced"] and rep["degree_ok"] and rep["inner_product"] in (None, "1"))
        return rep
    if suite == "mackey":
        from .mackey import mackey_verify

        mode = "full" if sample is None else "sampled"
        return mackey_verify(system, p, placement, xi, mode=mode, samples=sample or 0, seed=seed).to_json()
    if suite == "lengths":
        from .mackey import length_step

        st = length_step(placement)
        return {
            "family": family,
            "rank": rank,
            "placement": placement.tokens,
            "case": st.case,
            "l": st.length,
            "l_reduced": st.reduced_length,
            "predicted": st.predicted,
            "ok": st.ok,
        }
    raise ValueError(f"unknown suite {suite!r}")


def _cases(args, system, p):
    for placement in enumerate_placements(system):
        if args.suite in ("orbit", "character", "mackey"):
            for xi in _xi_choices(placement, p, args.xi):
                yield (args.suite, system.family.value, system.n, p, placement.tokens,
                       [xi[b] for b in placement], args.sample, args.seed)
        else:
            yield (args.suite, system.family.value, system.n, p, placement.tokens, [], None, args.seed)


def cmd_verify(args) -> int:
    system = _system(args)
    needs_field = args.suite in ("orbit", "character", "mackey")
    p = _prime(args, system) if needs_field else None
    cases = list(_cases(args, system, p))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_case, cases))
    else:
        results = [_run_case(c) for c in cases]
    failures = [r for r in results if not r["ok"]]
    report = {
        "schema_version": SCHEMA_VERSION,
        "suite": args.suite,
        "family": system.family.value,
        "rank": system.n,
        "p": p,
        "seed": args.seed,
        "sample": args.sample,
        "checked": len(results),
        "failures": len(failures),
        "first_counterexample": failures[0] if failures else None,
        "cases": results,
        "ok": not failures,
    }
    _emit(report)
    status = "PASS" if report["ok"] else "FAIL"
    print(f"{status} verify {args.suite} {system.name}"
          + (f" p={p}" if p else "") + f": {len(results) - len(failures)}/{len(results)} cases",
          file=sys.stderr)
    return EXIT_OK if report["ok"] else EXIT_FAIL


# ---- parser --------------------------------------------------------------------------


def _add_system(parser):
    parser.add_argument("--family", required=True, choices=[f.value for f in Family])
    parser.add_argument("--rank", required=True, type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orthorook", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagram", help="render the battleship diagram of a placement")
    _add_system(p)
    p.add_argument("--placement", default="", help='comma-separated roots, e.g. "e1, e2+e5"')
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("dim", help="orbit dimension by diagram and by Weyl statistics")
    _add_system(p)
    p.add_argument("--placement", default="")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("atlas", help="one row per placement")
    _add_system(p)
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--max-rank", type=int, default=8)
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    _add_system(p)
    p.add_argument("--prime", type=int)
    p.add_argument("--sample", type=int, help="check this many random elements instead of all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--xi", choices=["all", "ones"], default="all",
                   help="coefficient tuples per placement")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except FieldTooSmall as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
