"""U = U1 x| V, the character psi of U1, its centralizer V' = V1 x| U~, and
the recursive induced-character formula through the reduced root system.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

import numpy as np

from .characters import ClassFunction, Cyclotomic, chi_from_orbit, left_transversal, theta
from .coadjoint import canonical_form, orbit_enumerate
from .ffalg import MatrixGroup, MatrixModel
from .placement import RookPlacement, validate_placement
from .roots import Family, Kind, Root, RootSystem, Sum, Diff, root_system, s_minus
from .weyl import SignedPermutation, involution_from_placement, involution_stats


class RankTooSmall(ValueError):
    pass


class Mismatch(AssertionError):
    def __init__(self, coords):
        super().__init__(f"characters differ at exp of {coords}")
        self.coords = coords


# ---- U = U1 x| V -----------------------------------------------------------


class SemidirectSplit:
    """First column C1 versus the rest; g = a b with a in U1, b in V."""

    def __init__(self, model: MatrixModel):
        self.model = model
        system = model.system
        self.u1_roots = tuple(system.column(1))
        self.v_roots = tuple(r for r in system if r.col != 1)
        self._first = model.pos[1] if system.n else None
        self._u1_rows = [model.pos[r.row] for r in self.u1_roots]

    def project_u1(self, g: np.ndarray) -> np.ndarray:
        model = self.model
        z = model.zero()
        for r, row in zip(self.u1_roots, self._u1_rows):
            v = int(g[row, self._first])
            if v:
                z += v * model.root_matrix(r)
        return model.exp(z % model.p)

    def factor(self, g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        a = self.project_u1(g)
        return a, self.model.mul(self.model.inverse(a), g)

    def project_v(self, g: np.ndarray) -> np.ndarray:
        return self.factor(g)[1]

    @cached_property
    def u1_group(self) -> MatrixGroup:
        return self.model.span_group(self.u1_roots)

    @cached_property
    def v_group(self) -> MatrixGroup:
        return self.model.span_group(self.v_roots)


def split_u1_v(model: MatrixModel) -> SemidirectSplit:
    return SemidirectSplit(model)


# ---- psi --------------------------------------------------------------------


def psi_exponent(model: MatrixModel, placement: RookPlacement, xi: Mapping[Root, int], x: np.ndarray) -> int:
    """f(ln x) for x in U1; only beta_1 in the first column contributes."""
    beta1 = placement.beta1
    if beta1 is None or beta1.col != 1:
        return 0
    return xi[beta1] * int(x[model.pos[beta1.row], model.pos[1]]) % model.p


def psi_character(model: MatrixModel, placement: RookPlacement, xi: Mapping[Root, int], split: SemidirectSplit | None = None) -> ClassFunction:
    split = split or split_u1_v(model)
    return ClassFunction(
        split.u1_group,
        lambda x: theta(psi_exponent(model, placement, xi, x), model.p),
        "psi",
    )


# ---- little group -------------------------------------------------------------


@dataclass(frozen=True)
class LittleGroupData:
    system: RootSystem
    beta1: Root | None
    phi1_roots: frozenset[Root]
    phi2_roots: frozenset[Root]
    reduced: RootSystem
    removed: frozenset[int]  # matrix labels dropped when passing to the reduced system
    pi: dict[Root, Root] = field(repr=False)

    @property
    def v1_roots(self) -> frozenset[Root]:
        return self.phi1_roots - self.phi2_roots

    @property
    def kept_labels(self) -> list[int]:
        return [lab for lab in self.system.labels if lab not in self.removed]

    def psi(self, model: MatrixModel, placement: RookPlacement, xi: Mapping[Root, int]) -> ClassFunction:
        return psi_character(model, placement, xi)

    def reduce_placement(self, placement: RookPlacement, xi: Mapping[Root, int] | None = None):
        rest = [b for b in placement if b.col != 1]
        small = validate_placement(self.reduced, [self.pi[b] for b in rest])
        if xi is None:
            return small
        return small, {self.pi[b]: xi[b] for b in rest}


def _relabel(kept: list[int]) -> dict[int, int]:
    return {old: new for new, old in enumerate(kept, start=1)}


def little_group_formula(system: RootSystem, placement: RookPlacement, strict: bool = False) -> LittleGroupData:
    """Phi_1, Phi_2, the reduced system and the relabelling pi.

    With ``strict`` a reduced rank below 2 raises RankTooSmall; otherwise the
    small system (possibly empty) is returned as is.
    """
    n = system.n
    everything = frozenset(system.positive_roots)
    c1 = frozenset(system.column(1))
    beta1 = placement.beta1
    if beta1 is None or beta1.col > 1:
        phi1 = phi2 = everything - c1
        reduced = root_system(system.family, n - 1)
        removed = {1}
    else:
        phi1 = everything - c1 - frozenset(s_minus(system, beta1))
        if beta1.kind is Kind.SHORT:
            phi2 = phi1
            reduced = root_system(Family.D, n - 1)
            removed = {1, 0}
        else:
            i = beta1.j
            other = Sum(1, i) if beta1.kind is Kind.DIFF else Diff(1, i)
            phi2 = phi1 - frozenset(s_minus(system, other))
            reduced = root_system(system.family, n - 2)
            removed = {1, i}
    if strict and reduced.n < 2:
        raise RankTooSmall(f"reduced system {reduced.name} has rank below 2")
    removed_labels = frozenset(removed | {-k for k in removed})
    relabel = _relabel([k for k in range(1, n + 1) if k not in removed])
    pi = {}
    for r in phi2:
        j = None if r.j is None else relabel[r.j]
        pi[r] = Root(r.kind, relabel[r.i], j)
    if set(pi.values()) != set(reduced.positive_roots) or len(pi) != len(phi2):
        raise AssertionError("relabelling is not a bijection onto the reduced system")
    return LittleGroupData(system, beta1, phi1, phi2, reduced, removed_labels, pi)


def sigma2(system: RootSystem, placement: RookPlacement, data: LittleGroupData | None = None) -> SignedPermutation:
    data = data or little_group_formula(system, placement)
    return involution_from_placement(system, [b for b in placement if b in data.phi2_roots])


def reduced_placement(placement: RookPlacement) -> RookPlacement:
    """pi(D minus C1) inside the reduced system."""
    return little_group_formula(placement.system, placement).reduce_placement(placement)


@dataclass(frozen=True)
class LengthStep:
    """One step of the length recursion l(sigma) - l(sigma~)."""

    case: str  # "col>1", "diff", "sum" or "short"
    length: int
    reduced_length: int
    predicted: int

    @property
    def delta(self) -> int:
        return self.length - self.reduced_length

    @property
    def ok(self) -> bool:
        return self.delta == self.predicted


def length_step(placement: RookPlacement) -> LengthStep:
    system = placement.system
    st = involution_stats(system, placement.roots)
    small = reduced_placement(placement)
    reduced_len = involution_stats(small.system, small.roots).length
    beta1 = placement.beta1
    if beta1 is None or beta1.col > 1:
        case, pred = "col>1", 0
    elif beta1.kind is Kind.DIFF:
        case, pred = "diff", 2 * beta1.j - 3
    elif beta1.kind is Kind.SUM:
        case, pred = "sum", 2 * (system.m - beta1.j) - 3
    else:
        case, pred = "short", 2 * (system.n + st.d_stat) - 1
    return LengthStep(case, st.length, reduced_len, pred)


def centralizer_brute(split: SemidirectSplit, placement: RookPlacement, xi: Mapping[Root, int], cap: int = 10**6) -> list[np.ndarray]:
    """{b in V : psi(b a b^-1) = psi(a) for every a in U1}, by exhaustion."""
    model = split.model
    V = split.v_group
    U1 = split.u1_group
    if len(V) * len(U1) > cap * 100 or len(V) > cap:
        from .coadjoint import CapExceeded

        raise CapExceeded("centralizer scan too large")
    stack = np.array(U1.elements)
    base = np.array([psi_exponent(model, placement, xi, a) for a in U1])
    beta1 = placement.beta1
    out = []
    for b in V:
        if beta1 is None or beta1.col != 1:
            out.append(b)
            continue
        conj = np.matmul(np.matmul(b, stack) % model.p, model.inverse(b)) % model.p
        entries = conj[:, model.pos[beta1.row], model.pos[1]]
        if np.array_equal(xi[beta1] * entries % model.p, base):
            out.append(b)
    return out


# ---- the recursive character ---------------------------------------------------


class MackeyCharacter:
    """Ind_{U1 x| V'}^U (psi . chi~), with chi~ built the same way one rank down.

    At an empty placement or rank < 2 the value comes straight from the orbit.
    """

    def __init__(self, system: RootSystem, p: int, placement: RookPlacement, xi: Mapping[Root, int]):
        self.system = system
        self.placement = placement
        self.xi = dict(xi)
        self.model = model = MatrixModel(system, p)
        self.p = p
        self.child: MackeyCharacter | None = None
        self.data: LittleGroupData | None = None
        if not len(placement) or system.n < 2:
            f = canonical_form(system, p, placement, self.xi)
            orbit = orbit_enumerate(model, f)
            self._base = chi_from_orbit(model, orbit, group=_LazyGroup(model))
            return
        self._base = None
        self.split = split_u1_v(model)
        self.data = data = little_group_formula(system, placement)
        self.v_prime = model.span_group(data.phi1_roots)
        self.transversal = left_transversal(self.v_prime, self.split.v_group)
        self._pairs = [(r, model.inverse(r)) for r in self.transversal]
        kept = [model.pos[lab] for lab in data.kept_labels]
        self._kept = np.ix_(kept, kept)
        small, small_xi = data.reduce_placement(placement, self.xi)
        if len(data.reduced):
            self.child = MackeyCharacter(data.reduced, p, small, small_xi)

    @property
    def index(self) -> int:
        """[U : U1 x| V']."""
        return len(self.transversal) if self._base is None else 1

    def reduced_chain(self) -> list[dict]:
        beta1 = self.placement.beta1
        out = [{
            "family": self.system.family.value,
            "rank": self.system.n,
            "beta1": beta1.token if beta1 else None,
        }]
        if self.child is not None:
            out += self.child.reduced_chain()
        return out

    def project_reduced(self, b: np.ndarray) -> np.ndarray:
        """V' -> U~ -> U(reduced): drop the removed rows and columns."""
        return b[self._kept]

    def __call__(self, g: np.ndarray) -> Cyclotomic:
        if self._base is not None:
            return self._base(g)
        model = self.model
        total = Cyclotomic.zero(self.p)
        for r, rinv in self._pairs:
            k = model.mul(model.mul(rinv, g), r)
            a, b = self.split.factor(k)
            if b not in self.v_prime:
                continue
            val = theta(psi_exponent(model, self.placement, self.xi, a), self.p)
            if self.child is not None:
                val = val * self.child(self.project_reduced(b))
            total = total + val
        return total


class _LazyGroup:
    """Stand-in domain for class functions on groups too large to list."""

    def __init__(self, model: MatrixModel):
        self.model = model


@dataclass
class MackeyReport:
    family: str
    rank: int
    p: int
    placement: list[str]
    xi: list[int]
    mode: str
    checked: int
    mismatches: int
    reduced_chain: list[dict]
    seed: int | None = None
    witness: list[int] | None = None

    @property
    def ok(self) -> bool:
        return self.mismatches == 0

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "p": self.p,
            "placement": self.placement,
            "xi": self.xi,
            "mode": self.mode,
            "seed": self.seed,
            "checked": self.checked,
            "mismatches": self.mismatches,
            "witness": self.witness,
            "reduced_chain": self.reduced_chain,
            "ok": self.ok,
        }


def mackey_verify(
    system: RootSystem,
    p: int,
    placement: RookPlacement,
    xi: Mapping[Root, int],
    mode: str = "full",
    samples: int = 500,
    seed: int = 0,
    strict: bool = False,
) -> MackeyReport:
    """Compare the recursive induced character with the orbit character."""
    rhs = MackeyCharacter(system, p, placement, xi)
    model = rhs.model
    f = canonical_form(system, p, placement, xi)
    lhs = chi_from_orbit(model, orbit_enumerate(model, f), group=_LazyGroup(model))
    if mode == "full":
        points = (model.element(c) for c in np.ndindex(*([p] * len(system))))
        used_seed = None
    elif mode == "sampled":
        rng = random.Random(seed)
        points = (model.element([rng.randrange(p) for _ in system.positive_roots]) for _ in range(samples))
        used_seed = seed
    else:
        raise ValueError(f"unknown mode {mode!r}")
    checked = mismatches = 0
    witness = None
    for g in points:
        checked += 1
        if lhs(g) != rhs(g):
            mismatches += 1
            if witness is None:
                witness = [int(v) for v in model.log_coords(g)]
                if strict:
                    raise Mismatch(witness)
    return MackeyReport(
        family=system.family.value,
        rank=system.n,
        p=p,
        placement=placement.tokens,
        xi=[xi[b] % p for b in placement],
        mode=mode,
        checked=checked,
        mismatches=mismatches,
        reduced_chain=rhs.reduced_chain(),
        seed=used_seed,
        witness=witness,
    )
