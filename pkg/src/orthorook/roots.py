"""Positive roots of B_n and D_n in the staircase (column/row) picture.

A positive root is stored symbolically as ``Root(kind, i, j)``:

    Diff(i, j)  = e_i - e_j    col i, row  j
    Sum(i, j)   = e_i + e_j    col i, row -j
    Short(i)    = e_i          col i, row  0   (B only)

Matrix rows and columns are labelled 1, 2, ..., n, 0, -n, ..., -1 (no 0
for D); ``mirror_key`` turns a label into a sort key for that order.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import cached_property

Vector = dict[int, int]  # sparse: index -> coefficient of e_index


class Kind(enum.Enum):
    DIFF = "-"
    SUM = "+"
    SHORT = "s"


class Family(str, enum.Enum):
    B = "B"
    D = "D"


class RootError(ValueError):
    pass


class RootParseError(RootError):
    pass


def mirror_key(a: int) -> tuple[int, int]:
    """Sort key for the order 1 < 2 < ... < n < 0 < -n < ... < -1."""
    if a > 0:
        return (0, a)
    if a == 0:
        return (1, 0)
    return (2, a)


def mirror_precedes(a: int, b: int, family: Family | str | None = None) -> bool:
    if family is not None and Family(family) is Family.D and 0 in (a, b):
        raise RootError("index 0 does not exist for family D")
    return mirror_key(a) < mirror_key(b)


@dataclass(frozen=True)
class Root:
    kind: Kind
    i: int
    j: int | None = None

    def __post_init__(self):
        if self.kind is Kind.SHORT:
            if self.j is not None or self.i < 1:
                raise RootError(f"bad short root e{self.i}")
        elif self.j is None or not 1 <= self.i < self.j:
            raise RootError(f"bad root indices ({self.i}, {self.j})")

    @property
    def col(self) -> int:
        return self.i

    @property
    def row(self) -> int:
        if self.kind is Kind.DIFF:
            return self.j
        if self.kind is Kind.SUM:
            return -self.j
        return 0

    def vector(self) -> Vector:
        if self.kind is Kind.SHORT:
            return {self.i: 1}
        return {self.i: 1, self.j: 1 if self.kind is Kind.SUM else -1}

    def dense(self, n: int) -> tuple[int, ...]:
        v = [0] * n
        for k, c in self.vector().items():
            v[k - 1] = c
        return tuple(v)

    def norm2(self) -> int:
        return 1 if self.kind is Kind.SHORT else 2

    def dot(self, other: Root) -> int:
        a, b = self.vector(), other.vector()
        return sum(c * b.get(k, 0) for k, c in a.items())

    @property
    def token(self) -> str:
        if self.kind is Kind.SHORT:
            return f"e{self.i}"
        return f"e{self.i}{self.kind.value}e{self.j}"

    def __str__(self) -> str:
        return self.token

    def __repr__(self) -> str:
        return f"Root({self.token})"


def Diff(i: int, j: int) -> Root:
    return Root(Kind.DIFF, i, j)


def Sum(i: int, j: int) -> Root:
    return Root(Kind.SUM, i, j)


def Short(i: int) -> Root:
    return Root(Kind.SHORT, i)


def from_vector(vec: Vector) -> tuple[int, Root] | None:
    """Return ``(sign, root)`` with ``vec == sign * root``, or None.

    Only shapes +-e_i and +-e_i +- e_j are recognised; the sign is fixed
    by the lowest-indexed nonzero coordinate.
    """
    items = sorted((k, c) for k, c in vec.items() if c != 0)
    if len(items) == 1:
        (k, c), = items
        if abs(c) != 1:
            return None
        return c, Short(k)
    if len(items) == 2:
        (k1, c1), (k2, c2) = items
        if abs(c1) != 1 or abs(c2) != 1:
            return None
        sign = c1
        return sign, Root(Kind.SUM if c1 == c2 else Kind.DIFF, k1, k2)
    return None


def is_negative(vec: Vector) -> bool:
    items = sorted((k, c) for k, c in vec.items() if c != 0)
    if not items:
        raise RootError("zero vector has no sign")
    return items[0][1] < 0


def add_vectors(a: Vector, b: Vector) -> Vector:
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c != 0}


_TOKEN = re.compile(r"^e(\d+)(?:([+-])e(\d+))?$")


def parse_root(token: str) -> Root:
    s = re.sub(r"\s+", "", token)
    mt = _TOKEN.match(s)
    if not mt:
        raise RootParseError(f"cannot parse root token {token!r}")
    i = int(mt.group(1))
    if mt.group(2) is None:
        if i < 1:
            raise RootParseError(f"bad index in {token!r}")
        return Short(i)
    j = int(mt.group(3))
    if not 1 <= i < j:
        raise RootParseError(f"need 1 <= i < j in {token!r}")
    return Root(Kind.SUM if mt.group(2) == "+" else Kind.DIFF, i, j)


def parse_roots(text: str) -> list[Root]:
    text = text.strip()
    if not text:
        return []
    return [parse_root(tok) for tok in text.split(",")]


def format_roots(roots) -> str:
    return ", ".join(r.token for r in roots)


def _canonical_key(r: Root) -> tuple:
    return (r.col, mirror_key(r.row))


@dataclass(frozen=True)
class RootSystem:
    family: Family
    n: int
    positive_roots: tuple[Root, ...] = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return 2 * self.n + 1 if self.family is Family.B else 2 * self.n

    @cached_property
    def index(self) -> dict[Root, int]:
        return {r: k for k, r in enumerate(self.positive_roots)}

    @cached_property
    def labels(self) -> tuple[int, ...]:
        """Matrix row/column labels in mirror order."""
        mid = (0,) if self.family is Family.B else ()
        return tuple(range(1, self.n + 1)) + mid + tuple(range(-self.n, 0))

    @cached_property
    def simple_roots(self) -> tuple[Root, ...]:
        n = self.n
        chain = [Diff(i, i + 1) for i in range(1, n)]
        if self.family is Family.B:
            return tuple(chain + [Short(n)]) if n >= 1 else ()
        if n >= 2:
            return tuple(chain + [Sum(n - 1, n)])
        return ()

    @property
    def name(self) -> str:
        return f"{self.family.value}{self.n}"

    def __contains__(self, r: object) -> bool:
        return r in self.index

    def __len__(self) -> int:
        return len(self.positive_roots)

    def __iter__(self):
        return iter(self.positive_roots)

    def check(self, r: Root) -> Root:
        if r not in self.index:
            raise RootError(f"{r} is not a positive root of {self.name}")
        return r

    def column(self, j: int) -> list[Root]:
        return [r for r in self.positive_roots if r.col == j]

    def row(self, i: int) -> list[Root]:
        return [r for r in self.positive_roots if r.row == i]

    def root_of(self, vec: Vector) -> Root | None:
        """The positive root equal to ``vec``, if any."""
        hit = from_vector(vec)
        if hit is None or hit[0] != 1 or hit[1] not in self.index:
            return None
        return hit[1]

    def add(self, a: Root, b: Root) -> Root | None:
        return self.root_of(add_vectors(a.vector(), b.vector()))


def _positive_roots(family: Family, n: int) -> tuple[Root, ...]:
    roots = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            roots.append(Diff(i, j))
            roots.append(Sum(i, j))
        if family is Family.B:
            roots.append(Short(i))
    return tuple(sorted(roots, key=_canonical_key))


def root_system(family: Family | str, n: int) -> RootSystem:
    """Any rank >= 0; used for the small systems produced by rank reduction."""
    family = Family(family)
    if n < 0:
        raise RootError("rank must be nonnegative")
    return RootSystem(family, n, _positive_roots(family, n))


def build_root_system(family: Family | str, n: int) -> RootSystem:
    if n < 2:
        raise RootError(f"rank must be at least 2, got {n}")
    return root_system(family, n)


def root_precedes(a: Root, b: Root, variant: str = "std") -> bool:
    """``a < b`` in the order used for placements (``std``) or its primed twin."""
    if variant not in ("std", "prime"):
        raise ValueError(f"unknown variant {variant!r}")
    if a.col != b.col:
        return mirror_key(b.col) < mirror_key(a.col)
    if variant == "std":
        return mirror_key(b.row) < mirror_key(a.row)
    return mirror_key(a.row) < mirror_key(b.row)


def prime_key(r: Root) -> tuple:
    """Ascending sort key for the primed order."""
    return (-r.col, mirror_key(r.row))


def singular_pairs(system: RootSystem, beta: Root) -> list[tuple[Root, Root]]:
    """Pairs (gamma, delta) with gamma + delta = beta, col(gamma) = col(beta).

    Sorted ascending in the primed order on delta.
    """
    system.check(beta)
    n = system.n
    i = beta.i
    pairs: list[tuple[Root, Root]] = []
    if beta.kind is Kind.DIFF:
        j = beta.j
        pairs = [(Diff(i, l), Diff(l, j)) for l in range(i + 1, j)]
    elif beta.kind is Kind.SHORT:
        pairs = [(Diff(i, l), Short(l)) for l in range(i + 1, n + 1)]
    else:
        j = beta.j
        pairs += [(Diff(i, l), Sum(l, j)) for l in range(i + 1, j)]
        pairs += [(Diff(i, l), Sum(j, l)) for l in range(j + 1, n + 1)]
        pairs += [(Sum(i, l), Diff(j, l)) for l in range(j + 1, n + 1)]
        if system.family is Family.B:
            pairs.append((Short(i), Short(j)))
    pairs.sort(key=lambda gd: prime_key(gd[1]))
    return pairs


def s_minus(system: RootSystem, beta: Root) -> list[Root]:
    return [d for _, d in singular_pairs(system, beta)]


def s_plus(system: RootSystem, beta: Root) -> list[Root]:
    return [g for g, _ in singular_pairs(system, beta)]
