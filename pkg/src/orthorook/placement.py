"""Orthogonal rook placements, the battleship marking, and orbit dimensions."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .roots import (
    Diff,
    Family,
    Short,
    Sum,
    Root,
    RootError,
    RootSystem,
    mirror_key,
    parse_root,
    parse_roots,
    root_system,
    singular_pairs,
)
from .weyl import InvolutionStats, involution_stats


class PlacementError(ValueError):
    pass


class NonOrthogonal(PlacementError):
    def __init__(self, a: Root, b: Root):
        super().__init__(f"roots {a} and {b} are not orthogonal")
        self.roots = (a, b)


class RowClash(PlacementError):
    def __init__(self, row: int):
        super().__init__(f"two roots in row {row}")
        self.row = row


class ColClash(PlacementError):
    def __init__(self, col: int):
        super().__init__(f"two roots in column {col}")
        self.col = col


class DuplicateRoot(PlacementError):
    pass


class MarkConflict(RuntimeError):
    def __init__(self, root: Root, old, new):
        super().__init__(f"root {root} marked {old.value} then {new.value}")
        self.root = root


class NotPlusMarked(ValueError):
    pass


class Mark(enum.Enum):
    CROSS = "x"
    PLUS = "+"
    MINUS = "-"
    DOT = "."


@dataclass(frozen=True)
class RookPlacement:
    system: RootSystem
    roots: tuple[Root, ...]  # ascending column

    def __iter__(self):
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    def __contains__(self, r: object) -> bool:
        return r in self.roots

    @property
    def tokens(self) -> list[str]:
        return [r.token for r in self.roots]

    @property
    def beta1(self) -> Root | None:
        return self.roots[0] if self.roots else None


def validate_placement(system: RootSystem, roots) -> RookPlacement:
    roots = list(roots)
    for r in roots:
        system.check(r)
    if len(set(roots)) != len(roots):
        raise DuplicateRoot("placement contains a repeated root")
    for k, a in enumerate(roots):
        for b in roots[k + 1:]:
            if a.dot(b) != 0:
                raise NonOrthogonal(a, b)
    for attr, exc in (("row", RowClash), ("col", ColClash)):
        seen = set()
        for r in sorted(roots, key=lambda r: mirror_key(getattr(r, attr))):
            v = getattr(r, attr)
            if v in seen:
                raise exc(v)
            seen.add(v)
    return RookPlacement(system, tuple(sorted(roots, key=lambda r: r.col)))


def placement_from_tokens(system: RootSystem, text: str | list[str]) -> RookPlacement:
    roots = parse_roots(text) if isinstance(text, str) else [parse_root(t) for t in text]
    return validate_placement(system, roots)


@dataclass(frozen=True)
class BattleshipDiagram:
    placement: RookPlacement
    marks: dict[Root, Mark]

    @property
    def system(self) -> RootSystem:
        return self.placement.system

    def count(self, mark: Mark) -> int:
        return sum(1 for v in self.marks.values() if v is mark)

    def __getitem__(self, r: Root) -> Mark:
        return self.marks[r]

    @cached_property
    def minus_roots(self) -> frozenset[Root]:
        return frozenset(r for r, v in self.marks.items() if v is Mark.MINUS)


def battleship(placement: RookPlacement) -> BattleshipDiagram:
    system = placement.system
    marks: dict[Root, Mark] = {b: Mark.CROSS for b in placement}

    def put(r: Root, mark: Mark):
        old = marks.get(r)
        if old is None:
            marks[r] = mark
        elif not (old is mark is Mark.PLUS):
            raise MarkConflict(r, old, mark)

    minus: set[Root] = set()
    for beta in placement:  # ascending column
        step = []
        for gamma, delta in singular_pairs(system, beta):
            if gamma in minus or delta in minus:
                continue
            put(gamma, Mark.PLUS)
            put(delta, Mark.MINUS)
            step.append(delta)
        minus.update(step)
    for r in system:
        marks.setdefault(r, Mark.DOT)
    return BattleshipDiagram(placement, marks)


def polarization_roots(placement: RookPlacement) -> frozenset[Root]:
    diagram = battleship(placement)
    return frozenset(r for r in placement.system if diagram[r] is not Mark.MINUS)


def plus_partner(placement: RookPlacement, gamma: Root) -> Root:
    diagram = battleship(placement)
    if diagram[gamma] is not Mark.PLUS:
        raise NotPlusMarked(f"{gamma} is marked {diagram[gamma].value}")
    system = placement.system
    hits = [d for d in system if system.add(gamma, d) in placement.roots]
    assert len(hits) == 1, f"{gamma} has partners {hits}"
    return hits[0]


def dim_via_diagram(placement: RookPlacement) -> int:
    diagram = battleship(placement)
    return diagram.count(Mark.PLUS) + diagram.count(Mark.MINUS)


def stats(placement: RookPlacement) -> InvolutionStats:
    return involution_stats(placement.system, placement.roots)


def dim_via_weyl(placement: RookPlacement) -> int:
    return stats(placement).dim


def enumerate_placements(system: RootSystem) -> Iterator[RookPlacement]:
    """All placements by size, then lexicographically in canonical root order."""
    roots = system.positive_roots

    def compatible(a: Root, b: Root) -> bool:
        return a.dot(b) == 0 and a.row != b.row and a.col != b.col

    ok = [[compatible(a, b) for b in roots] for a in roots]

    def extend(chosen: list[int], start: int, size: int):
        if len(chosen) == size:
            yield chosen
            return
        for k in range(start, len(roots)):
            if all(ok[c][k] for c in chosen):
                chosen.append(k)
                yield from extend(chosen, k + 1, size)
                chosen.pop()

    for size in range(0, system.n + 1):
        found = False
        for idx in extend([], 0, size):
            found = True
            picked = [roots[k] for k in idx]
            yield RookPlacement(system, tuple(sorted(picked, key=lambda r: r.col)))
        if not found:
            break


# ---- rendering ----------------------------------------------------------


def _cells(system: RootSystem, row: int) -> list[tuple[int, Root | None]]:
    """(column, root) cells drawn on one row of the staircase; None marks the 0."""
    out = []
    for c in range(1, system.n + 1):
        if row > 0:
            if c < row:
                out.append((c, _root_at(system, c, row)))
        elif row == 0:
            out.append((c, _root_at(system, c, row)))
        else:
            j = -row
            if c < j:
                out.append((c, _root_at(system, c, row)))
            elif c == j:
                out.append((c, None))
    return out


def _root_at(system: RootSystem, col: int, row: int) -> Root:
    if row > 0:
        return Diff(col, row)
    if row == 0:
        return Short(col)
    return Sum(col, -row)


def render_text(diagram: BattleshipDiagram) -> str:
    system = diagram.system
    w = max(len(str(system.n)), 1)
    lw = len(str(-system.n))
    lines = [" " * lw + "  " + " ".join(str(c).rjust(w) for c in range(1, system.n + 1))]
    for row in system.labels:
        cells = []
        for _, r in _cells(system, row):
            sym = "0" if r is None else diagram[r].value
            cells.append(sym.rjust(w))
        lines.append((str(row).rjust(lw) + "  " + " ".join(cells)).rstrip())
    return "\n".join(lines) + "\n"


def diagram_record(diagram: BattleshipDiagram) -> dict:
    placement = diagram.placement
    st = stats(placement)
    return {
        "family": placement.system.family.value,
        "rank": placement.system.n,
        "placement": placement.tokens,
        "marks": [
            {"root": r.token, "col": r.col, "row": r.row, "mark": diagram[r].value}
            for r in placement.system
        ],
        "dim_diagram": diagram.count(Mark.PLUS) + diagram.count(Mark.MINUS),
        "dim_weyl": st.dim,
        "l": st.length,
        "s": st.support_size,
        "d": st.d_stat,
    }


def render_diagram(placement: RookPlacement, format: str = "text") -> str:
    diagram = battleship(placement)
    if format == "text":
        return render_text(diagram)
    if format == "json":
        return json.dumps(diagram_record(diagram), indent=2) + "\n"
    raise ValueError(f"unknown format {format!r}")


def parse_diagram_json(text: str) -> BattleshipDiagram:
    rec = json.loads(text)
    system = root_system(Family(rec["family"]), rec["rank"])
    placement = validate_placement(system, [parse_root(t) for t in rec["placement"]])
    marks = {}
    for item in rec["marks"]:
        r = system.check(parse_root(item["root"]))
        if (r.col, r.row) != (item["col"], item["row"]):
            raise RootError(f"coordinates of {r} do not match record")
        marks[r] = Mark(item["mark"])
    if set(marks) != set(system.positive_roots):
        raise ValueError("marks do not cover every positive root")
    return BattleshipDiagram(placement, marks)


# ---- polarization checks ------------------------------------------------


@dataclass(frozen=True)
class PolarizationReport:
    placement: RookPlacement
    closed: bool
    isotropic: bool
    maximal: bool
    unique_partners: bool
    codim_matches: bool
    dims_agree: bool
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return (self.closed and self.isotropic and self.maximal
                and self.unique_partners and self.codim_matches and self.dims_agree)

    def to_json(self) -> dict:
        return {
            "family": self.placement.system.family.value,
            "rank": self.placement.system.n,
            "placement": self.placement.tokens,
            "closed": self.closed,
            "isotropic": self.isotropic,
            "maximal": self.maximal,
            "unique_partners": self.unique_partners,
            "codim_matches": self.codim_matches,
            "dims_agree": self.dims_agree,
            "witness": self.witness,
            "ok": self.ok,
        }


def polarization_report(placement: RookPlacement) -> PolarizationReport:
    """Root-level closure, isotropy, maximality and partner uniqueness of P."""
    system = placement.system
    diagram = battleship(placement)
    P = [r for r in system if diagram[r] is not Mark.MINUS]
    excluded = [r for r in system if diagram[r] is Mark.MINUS]
    D = set(placement.roots)
    witness = None

    def note(msg):
        nonlocal witness
        witness = witness or msg

    closed = isotropic = True
    Pset = set(P)
    for a in P:
        for b in P:
            s = system.add(a, b)
            if s is not None and s not in Pset:
                closed = False
                note(f"{a} + {b} = {s} leaves P")
            if s in D:
                isotropic = False
                note(f"{a} + {b} = {s} lies in D")
    maximal = True
    for d in excluded:
        if not any(system.add(g, d) in D for g in P):
            maximal = False
            note(f"{d} has no partner in P")
    unique = True
    for g in system:
        if diagram[g] is Mark.PLUS:
            hits = [d for d in system if system.add(g, d) in D]
            if len(hits) != 1:
                unique = False
                note(f"{g} has partners {hits}")
    dim = diagram.count(Mark.PLUS) + diagram.count(Mark.MINUS)
    return PolarizationReport(
        placement,
        closed=closed,
        isotropic=isotropic,
        maximal=maximal,
        unique_partners=unique,
        codim_matches=2 * len(excluded) == dim,
        dims_agree=dim == dim_via_weyl(placement) and dim % 2 == 0,
        witness=witness,
    )
