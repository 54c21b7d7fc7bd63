"""Matrix model of the nilradical u and the group U = exp(u) over F_p.

Matrices are dense ``numpy.int64`` arrays of size m x m with entries in
[0, p); row/column k carries the label ``system.labels[k]`` (mirror order).
"""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .roots import Kind, Root, RootSystem


class FieldTooSmall(ValueError):
    pass


class NotInBracketSpan(AssertionError):
    pass


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, int(p**0.5) + 1))


def rank_mod_p(rows: np.ndarray, p: int) -> int:
    """Rank over F_p by Gaussian elimination."""
    a = np.array(rows, dtype=np.int64) % p
    if a.size == 0:
        return 0
    rank = 0
    nrows, ncols = a.shape
    for c in range(ncols):
        piv = next((r for r in range(rank, nrows) if a[r, c]), None)
        if piv is None:
            continue
        a[[rank, piv]] = a[[piv, rank]]
        a[rank] = a[rank] * pow(int(a[rank, c]), -1, p) % p
        others = a[:, c].copy()
        others[rank] = 0
        a = (a - np.outer(others, a[rank])) % p
        rank += 1
        if rank == nrows:
            break
    return rank


class MatrixModel:
    """u(Phi) and U(Phi) over the prime field F_p."""

    def __init__(self, system: RootSystem, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p < max(system.m, 3):
            raise FieldTooSmall(f"need p >= m = {system.m}, got p = {p}")
        self.system = system
        self.p = p
        self.m = system.m
        self.pos = {lab: k for k, lab in enumerate(system.labels)}
        self.inv_fact = [pow(_fact(k), -1, p) for k in range(self.m)]
        self.half = pow(2, -1, p)
        # entry (row(a), col(a)) is the coordinate of e_a
        roots = system.positive_roots
        self._rows = np.array([self.pos[a.row] for a in roots], dtype=np.int64)
        self._cols = np.array([self.pos[a.col] for a in roots], dtype=np.int64)

    def __repr__(self) -> str:
        return f"MatrixModel({self.system.name}, p={self.p})"

    # ---- basic matrices ------------------------------------------------

    def identity(self) -> np.ndarray:
        return np.eye(self.m, dtype=np.int64)

    def zero(self) -> np.ndarray:
        return np.zeros((self.m, self.m), dtype=np.int64)

    def elementary(self, a: int, b: int) -> np.ndarray:
        e = self.zero()
        e[self.pos[a], self.pos[b]] = 1
        return e

    @cached_property
    def _root_matrices(self) -> dict[Root, np.ndarray]:
        out = {}
        for r in self.system:
            i, j = r.i, r.j
            if r.kind is Kind.SHORT:
                e = self.elementary(0, i) - self.elementary(-i, 0)
            elif r.kind is Kind.DIFF:
                e = self.elementary(j, i) - self.elementary(-i, -j)
            else:
                e = self.elementary(-j, i) - self.elementary(-i, j)
            e %= self.p
            e.flags.writeable = False
            out[r] = e
        return out

    def root_matrix(self, alpha: Root) -> np.ndarray:
        return self._root_matrices[self.system.check(alpha)]

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return a @ b % self.p

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return (x @ y - y @ x) % self.p

    def in_u(self, x: np.ndarray) -> bool:
        """Strictly lower triangular and skew about the antidiagonal."""
        x = x % self.p
        if np.any(np.triu(x)):
            return False
        return bool(np.all((x + x[::-1, ::-1].T) % self.p == 0))

    # ---- coordinates ---------------------------------------------------

    def coords(self, x: np.ndarray) -> np.ndarray:
        """Coefficients of x in the basis e_alpha, canonical root order."""
        return x[self._rows, self._cols] % self.p

    def from_coords(self, c: Sequence[int]) -> np.ndarray:
        x = self.zero()
        for r, v in zip(self.system.positive_roots, c):
            if v:
                x += int(v) * self._root_matrices[r]
        return x % self.p

    def from_root_coords(self, values: dict[Root, int]) -> np.ndarray:
        c = [0] * len(self.system)
        for r, v in values.items():
            c[self.system.index[r]] = v
        return self.from_coords(c)

    # ---- exp / ln ------------------------------------------------------

    def exp(self, x: np.ndarray) -> np.ndarray:
        p = self.p
        out = self.identity()
        power = self.identity()
        for k in range(1, self.m):
            power = power @ x % p
            if not power.any():
                break
            out = (out + power * self.inv_fact[k]) % p
        return out

    def ln(self, g: np.ndarray) -> np.ndarray:
        p = self.p
        y = (g - self.identity()) % p
        out = self.zero()
        power = self.identity()
        for k in range(1, self.m):
            power = power @ y % p
            if not power.any():
                break
            coef = pow(k, -1, p) if k % 2 else p - pow(k, -1, p)
            out = (out + power * coef) % p
        return out

    def inverse(self, g: np.ndarray) -> np.ndarray:
        # g = 1 - y with y nilpotent: g^-1 = sum y^k
        p = self.p
        y = (self.identity() - g) % p
        out = self.identity()
        power = self.identity()
        for _ in range(1, self.m):
            power = power @ y % p
            if not power.any():
                break
            out = (out + power) % p
        return out

    def element(self, c: Sequence[int]) -> np.ndarray:
        return self.exp(self.from_coords(c))

    def log_coords(self, g: np.ndarray) -> np.ndarray:
        return self.coords(self.ln(g))

    def x_alpha(self, alpha: Root, t: int) -> np.ndarray:
        p = self.p
        t %= p
        g = (self.identity() + t * self.root_matrix(alpha)) % p
        if alpha.kind is Kind.SHORT:
            i = alpha.i
            g[self.pos[-i], self.pos[i]] = (g[self.pos[-i], self.pos[i]] - t * t * self.half) % p
        return g

    def conj(self, g: np.ndarray, x: np.ndarray) -> np.ndarray:
        """g x g^-1."""
        return g @ x % self.p @ self.inverse(g) % self.p

    # ---- pairing / BCH -------------------------------------------------

    def trace_pairing(self, a: np.ndarray, b: np.ndarray) -> int:
        return int(np.trace(a @ b) % self.p) * self.half % self.p

    def bracket_span(self, basis: Sequence[np.ndarray]) -> list[np.ndarray]:
        return [self.bracket(x, y) for x, y in itertools.combinations(basis, 2)]

    def bch_defect(self, basis: Sequence[np.ndarray], u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """tau = ln(exp u exp v) - u - v, checked to lie in [a, a]."""
        tau = (self.ln(self.mul(self.exp(u), self.exp(v))) - u - v) % self.p
        if tau.any():
            span = [b.ravel() for b in self.bracket_span(basis)]
            base = rank_mod_p(np.array(span).reshape(len(span), -1), self.p) if span else 0
            grown = rank_mod_p(np.array(span + [tau.ravel()]), self.p)
            if grown != base:
                raise NotInBracketSpan("BCH defect escapes the bracket span")
        return tau

    # ---- groups --------------------------------------------------------

    def key(self, g: np.ndarray) -> bytes:
        return np.ascontiguousarray(g, dtype=np.int64).tobytes()

    def span_group(self, roots: Iterable[Root]) -> MatrixGroup:
        return MatrixGroup.from_roots(self, roots)

    @cached_property
    def group(self) -> MatrixGroup:
        return MatrixGroup.from_roots(self, self.system.positive_roots)


def _fact(k: int) -> int:
    out = 1
    for j in range(2, k + 1):
        out *= j
    return out


class MatrixGroup:
    """exp of the span of a bracket-closed root set, fully enumerated.

    Elements are listed in lexicographic order of their log coordinates on
    ``roots``; that order is the canonical one used for transversals.
    """

    def __init__(self, model: MatrixModel, roots: Sequence[Root], elements: list[np.ndarray]):
        self.model = model
        self.roots = tuple(roots)
        self.elements = elements
        self.index = {model.key(g): k for k, g in enumerate(elements)}

    @classmethod
    def from_roots(cls, model: MatrixModel, roots: Iterable[Root], cap: int = 10**6) -> MatrixGroup:
        roots = sorted(roots, key=model.system.index.__getitem__)
        size = model.p ** len(roots)
        if size > cap:
            raise MemoryError(f"group of order {size} exceeds cap {cap}")
        basis = [model.root_matrix(r) for r in roots]
        p = model.p
        elements = []
        for c in itertools.product(range(p), repeat=len(roots)):
            x = sum((v * b for v, b in zip(c, basis) if v), model.zero()) % p
            elements.append(model.exp(x))
        return cls(model, roots, elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.elements)

    def __contains__(self, g: np.ndarray) -> bool:
        return self.model.key(g) in self.index

    def position(self, g: np.ndarray) -> int:
        return self.index[self.model.key(g)]
