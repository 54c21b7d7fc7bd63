"""Linear forms on u, the coadjoint action, and brute-force orbits."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .ffalg import MatrixModel
from .placement import RookPlacement, dim_via_diagram, dim_via_weyl
from .roots import Root, RootSystem


class ZeroCoefficient(ValueError):
    pass


class CapExceeded(RuntimeError):
    pass


class NonPowerCardinality(RuntimeError):
    pass


@dataclass(frozen=True)
class LinearForm:
    """Coefficients on e_alpha^* in canonical root order, reduced mod p."""

    coeffs: tuple[int, ...]
    p: int
    system: RootSystem = field(compare=False, repr=False)

    @classmethod
    def from_dict(cls, system: RootSystem, p: int, values: Mapping[Root, int]) -> LinearForm:
        c = [0] * len(system)
        for r, v in values.items():
            c[system.index[system.check(r)]] = v % p
        return cls(tuple(c), p, system)

    def as_dict(self) -> dict[Root, int]:
        return {r: v for r, v in zip(self.system.positive_roots, self.coeffs) if v}

    def __call__(self, model: MatrixModel, x: np.ndarray) -> int:
        return int(np.dot(self.coeffs, model.coords(x)) % self.p)


def canonical_form(system: RootSystem, p: int, placement: RookPlacement, xi: Mapping[Root, int]) -> LinearForm:
    values = {}
    for beta in placement:
        v = xi.get(beta, 0) % p
        if v == 0:
            raise ZeroCoefficient(f"coefficient at {beta} must be nonzero")
        values[beta] = v
    return LinearForm.from_dict(system, p, values)


def form_matrix(model: MatrixModel, f: LinearForm) -> np.ndarray:
    """sum coeff(alpha) * e_alpha^T."""
    out = model.zero()
    for r, v in f.as_dict().items():
        out += v * model.root_matrix(r).T
    return out % model.p


def coadjoint_act(model: MatrixModel, g: np.ndarray, f: LinearForm) -> LinearForm:
    """(g.f)(y) = f(g^-1 y g), computed as pr(g F g^-1) via the trace pairing."""
    conj = model.conj(g, form_matrix(model, f))
    new = tuple(model.trace_pairing(conj, model.root_matrix(r)) for r in model.system)
    return LinearForm(new, f.p, f.system)


def action_matrix(model: MatrixModel, g: np.ndarray) -> np.ndarray:
    """Matrix A with coeffs(g.f) = A @ coeffs(f) mod p."""
    n = len(model.system)
    cols = []
    for k in range(n):
        e = [0] * n
        e[k] = 1
        cols.append(coadjoint_act(model, g, LinearForm(tuple(e), model.p, model.system)).coeffs)
    return np.array(cols, dtype=np.int64).T.reshape(n, n)


@dataclass
class Orbit:
    elements: np.ndarray  # one coefficient vector per row, sorted
    base_point: LinearForm
    dimension: int

    def __len__(self) -> int:
        return len(self.elements)

    def as_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(map(tuple, self.elements.tolist()))


def _generators(model: MatrixModel) -> list[np.ndarray]:
    cached = getattr(model, "_orbit_generators", None)
    if cached is None:
        cached = [
            action_matrix(model, model.x_alpha(a, t))
            for a in model.system.simple_roots
            for t in range(1, model.p)
        ]
        model._orbit_generators = cached
    return cached


def orbit_enumerate(model: MatrixModel, f: LinearForm, cap: int = 10**7) -> Orbit:
    p = model.p
    n = len(model.system)
    start = np.array(f.coeffs, dtype=np.int64).reshape(1, n)
    gens = _generators(model)
    seen = {start.tobytes()}
    found = [start]
    frontier = start
    while len(frontier):
        new_rows = []
        for a in gens:
            imgs = frontier @ a.T % p
            for row in imgs:
                k = row.tobytes()
                if k not in seen:
                    seen.add(k)
                    new_rows.append(row)
                    if len(seen) > cap:
                        raise CapExceeded(f"orbit exceeds {cap} states")
        frontier = np.array(new_rows, dtype=np.int64).reshape(-1, n)
        found.append(frontier)
    elements = np.concatenate(found)
    elements = elements[np.lexsort(elements.T[::-1])] if n else elements
    size = len(elements)
    exponent = round(math.log(size, p)) if size > 1 else 0
    if p**exponent != size or exponent % 2:
        raise NonPowerCardinality(f"orbit of size {size} is not an even power of {p}")
    return Orbit(elements, f, exponent)


@dataclass(frozen=True)
class OrbitReport:
    family: str
    rank: int
    p: int
    placement: list[str]
    xi: list[int]
    orbit_size: int
    dim_bfs: int
    dim_diagram: int
    dim_weyl: int

    @property
    def ok(self) -> bool:
        return self.dim_bfs == self.dim_diagram == self.dim_weyl

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "p": self.p,
            "placement": self.placement,
            "xi": self.xi,
            "orbit_size": self.orbit_size,
            "dim_bfs": self.dim_bfs,
            "dim_diagram": self.dim_diagram,
            "dim_weyl": self.dim_weyl,
            "ok": self.ok,
        }


def orbit_dimension_check(model: MatrixModel, placement: RookPlacement, xi: Mapping[Root, int], cap: int = 10**7) -> OrbitReport:
    f = canonical_form(model.system, model.p, placement, xi)
    orbit = orbit_enumerate(model, f, cap)
    system = model.system
    return OrbitReport(
        family=system.family.value,
        rank=system.n,
        p=model.p,
        placement=placement.tokens,
        xi=[xi[b] % model.p for b in placement],
        orbit_size=len(orbit),
        dim_bfs=orbit.dimension,
        dim_diagram=dim_via_diagram(placement),
        dim_weyl=dim_via_weyl(placement),
    )
