"""Exact class functions with values in Q(zeta_p).

Orbit characters, the linear character on exp(p) for a polarization,
induction along a transversal, and the usual inner product.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .coadjoint import LinearForm, Orbit
from .ffalg import MatrixGroup, MatrixModel


class DomainMismatch(ValueError):
    pass


class NotSubgroup(ValueError):
    pass


class NotMultiplicative(AssertionError):
    pass


class Cyclotomic:
    """sum c_k zeta_p^k, stored on the basis 1, zeta, ..., zeta^(p-2)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence):
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) == p:
            top = coeffs[-1]
            coeffs = [c - top for c in coeffs[:-1]]
        elif len(coeffs) != p - 1:
            raise ValueError(f"need {p - 1} or {p} coefficients")
        self.p = p
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, p: int) -> Cyclotomic:
        return cls(p, [0] * (p - 1))

    @classmethod
    def one(cls, p: int) -> Cyclotomic:
        return cls.rational(p, 1)

    @classmethod
    def rational(cls, p: int, q) -> Cyclotomic:
        return cls(p, [q] + [0] * (p - 2))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> Cyclotomic:
        c = [0] * p
        c[k % p] = 1
        return cls(p, c)

    @classmethod
    def from_counts(cls, p: int, counts: Iterable, scale=1) -> Cyclotomic:
        """sum_k counts[k] zeta^k, times ``scale``."""
        scale = Fraction(scale)
        return cls(p, [Fraction(int(c)) * scale for c in counts])

    def _full(self) -> list[Fraction]:
        return list(self.coeffs) + [Fraction(0)]

    def _check(self, other: Cyclotomic):
        if self.p != other.p:
            raise ValueError("cyclotomic fields differ")

    def __add__(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(self.p, other)
        self._check(other)
        return Cyclotomic(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            q = Fraction(other)
            return Cyclotomic(self.p, [a * q for a in self.coeffs])
        self._check(other)
        p = self.p
        out = [Fraction(0)] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % p] += a * b
        return Cyclotomic(p, out)

    __rmul__ = __mul__

    def __truediv__(self, q):
        return self * (1 / Fraction(q))

    def conj(self) -> Cyclotomic:
        full = self._full()
        return Cyclotomic(self.p, [full[-k % self.p] for k in range(self.p)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cyclotomic):
            try:
                other = Cyclotomic.rational(self.p, other)
            except TypeError:
                return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_complex(self) -> complex:
        z = np.exp(2j * np.pi / self.p)
        return complex(sum(float(c) * z**k for k, c in enumerate(self.coeffs)))

    def __repr__(self) -> str:
        if self.is_rational():
            return f"Cyclotomic({self.coeffs[0]})"
        terms = [f"{c}*z^{k}" for k, c in enumerate(self.coeffs) if c]
        return f"Cyclotomic[p={self.p}](" + " + ".join(terms) + ")"


def theta(a: int, p: int) -> Cyclotomic:
    """The additive character a -> zeta_p^a."""
    return Cyclotomic.zeta(p, a)


class ClassFunction:
    """Function on a finite matrix group, evaluated lazily and memoised."""

    def __init__(self, group: MatrixGroup, func: Callable[[np.ndarray], Cyclotomic], name: str = ""):
        self.group = group
        self.func = func
        self.name = name
        self._cache: dict[bytes, Cyclotomic] = {}

    @property
    def p(self) -> int:
        return self.group.model.p

    def __call__(self, g: np.ndarray) -> Cyclotomic:
        k = self.group.model.key(g)
        val = self._cache.get(k)
        if val is None:
            val = self._cache[k] = self.func(g)
        return val

    def table(self) -> list[Cyclotomic]:
        return [self(g) for g in self.group]

    def degree(self) -> Cyclotomic:
        return self(self.group.model.identity())


def _theta_sum(p: int, exponents: np.ndarray, scale=1) -> Cyclotomic:
    return Cyclotomic.from_counts(p, np.bincount(exponents % p, minlength=p), scale)


def chi_from_orbit(model: MatrixModel, orbit: Orbit, group: MatrixGroup | None = None) -> ClassFunction:
    p = model.p
    group = group or model.group
    half = orbit.dimension // 2
    scale = Fraction(1, p**half)
    forms = orbit.elements

    def value(g):
        x = model.log_coords(g)
        return _theta_sum(p, forms @ x, scale)

    return ClassFunction(group, value, "chi")


def phi_f(model: MatrixModel, subgroup: MatrixGroup, f: LinearForm) -> ClassFunction:
    coeffs = np.array(f.coeffs, dtype=np.int64)

    def value(h):
        return theta(int(coeffs @ model.log_coords(h)), model.p)

    return ClassFunction(subgroup, value, "phi_f")


def check_multiplicative(phi: ClassFunction, pairs: int = 1000, seed: int = 0) -> None:
    group = phi.group
    model = group.model
    rng = random.Random(seed)
    for _ in range(pairs):
        h = rng.choice(group.elements)
        k = rng.choice(group.elements)
        if phi(h) * phi(k) != phi(model.mul(h, k)):
            raise NotMultiplicative("phi(h) phi(k) != phi(hk)")


def left_transversal(subgroup: MatrixGroup, group: MatrixGroup, order: Sequence[np.ndarray] | None = None) -> list[np.ndarray]:
    """Canonical-minimum representatives of the left cosets gH."""
    model = group.model
    covered: set[bytes] = set()
    reps = []
    for g in order if order is not None else group.elements:
        if model.key(g) in covered:
            continue
        reps.append(g)
        coset = {model.key(model.mul(g, h)) for h in subgroup}
        if len(coset) != len(subgroup) or coset & covered:
            raise NotSubgroup("cosets overlap")
        if any(k not in group.index for k in coset):
            raise NotSubgroup("coset leaves the ambient group")
        covered |= coset
    if len(covered) != len(group):
        raise NotSubgroup("cosets do not cover the group")
    return reps


def induce(subgroup: MatrixGroup, phi: ClassFunction, group: MatrixGroup, transversal=None) -> ClassFunction:
    model = group.model
    if len(group) % len(subgroup) or model.identity() not in subgroup:
        raise NotSubgroup("order or identity check failed")
    reps = transversal if transversal is not None else left_transversal(subgroup, group)
    pairs = [(r, model.inverse(r)) for r in reps]
    p = model.p

    def value(g):
        total = Cyclotomic.zero(p)
        for r, rinv in pairs:
            k = model.mul(model.mul(rinv, g), r)
            if k in subgroup:
                total = total + phi(k)
        return total

    return ClassFunction(group, value, "induced")


def inner_product(chi1: ClassFunction, chi2: ClassFunction) -> Cyclotomic:
    if chi1.group is not chi2.group:
        raise DomainMismatch("class functions live on different groups")
    p = chi1.p
    total = Cyclotomic.zero(p)
    for g in chi1.group:
        total = total + chi1(g) * chi2(g).conj()
    return total / len(chi1.group)


# ---- report -----------------------------------------------------------------


def character_report(model: MatrixModel, placement, xi, sample: int | None = None, seed: int = 0) -> dict:
    """Compare chi_Omega with Ind_{exp p}^U phi_f; full tables unless ``sample``."""
    from .coadjoint import canonical_form, orbit_enumerate
    from .placement import polarization_roots

    f = canonical_form(model.system, model.p, placement, xi)
    orbit = orbit_enumerate(model, f)
    full = sample is None
    group = model.group if full else _SampledDomain(model)
    chi = chi_from_orbit(model, orbit, group=group)
    P = model.span_group(polarization_roots(placement))
    if full:
        ind = induce(P, phi_f(model, P, f), group)
        points = group.elements
    else:
        # the transversal lives in U, enumerated lazily over its coordinates
        reps = _lazy_transversal(model, P)
        ind = _induced_values(model, P, phi_f(model, P, f), reps)
        rng = random.Random(seed)
        points = [model.element([rng.randrange(model.p) for _ in model.system.positive_roots]) for _ in range(sample)]
    matches = all(chi(g) == ind(g) for g in points)
    degree = chi(model.identity())
    return {
        "family": model.system.family.value,
        "rank": model.system.n,
        "p": model.p,
        "placement": placement.tokens,
        "xi": [xi[b] % model.p for b in placement],
        "degree": str(degree.coeffs[0]) if degree.is_rational() else repr(degree),
        "degree_ok": degree == Cyclotomic.rational(model.p, model.p ** (orbit.dimension // 2)),
        "inner_product": str(inner_product(chi, chi).coeffs[0]) if full else None,
        "matches_induced": matches,
        "sampled": not full,
        "sample_size": len(points),
        "seed": None if full else seed,
    }


class _SampledDomain:
    def __init__(self, model: MatrixModel):
        self.model = model


def _lazy_transversal(model: MatrixModel, subgroup: MatrixGroup) -> list[np.ndarray]:
    """exp of the span of the roots outside the subgroup, if its products with
    the subgroup hit every element of U once; else the canonical transversal.
    """
    outside = [r for r in model.system if r not in subgroup.roots]
    try:
        comp = model.span_group(outside)
    except MemoryError:
        comp = None
    if comp is not None:
        keys = set()
        for r in comp:
            for h in subgroup:
                keys.add(model.key(model.mul(r, h)))
        if len(keys) == len(comp) * len(subgroup) == model.p ** len(model.system):
            return list(comp.elements)
    return left_transversal(subgroup, model.group)


def _induced_values(model, subgroup, phi, reps):
    pairs = [(r, model.inverse(r)) for r in reps]

    def value(g):
        total = Cyclotomic.zero(model.p)
        for r, rinv in pairs:
            k = model.mul(model.mul(rinv, g), r)
            if k in subgroup:
                total = total + phi(k)
        return total

    return ClassFunction(_SampledDomain(model), value, "induced")
