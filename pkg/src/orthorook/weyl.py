"""Signed permutations, placement involutions and the statistics l, s, d."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .roots import Family, Kind, Root, RootSystem, Vector, is_negative


@dataclass(frozen=True)
class SignedPermutation:
    """``images[k-1] = sigma(k)``; sigma(-k) = -sigma(k) is implied."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(abs(x) for x in self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a signed permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> SignedPermutation:
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        if k == 0:
            return 0
        img = self.images[abs(k) - 1]
        return img if k > 0 else -img

    def __mul__(self, other: SignedPermutation) -> SignedPermutation:
        # (self * other)(k) = self(other(k))
        return SignedPermutation(tuple(self(other(k)) for k in range(1, self.n + 1)))

    def inverse(self) -> SignedPermutation:
        inv = [0] * self.n
        for k, img in enumerate(self.images, start=1):
            inv[abs(img) - 1] = k if img > 0 else -k
        return SignedPermutation(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))

    def act(self, vec: Vector) -> Vector:
        out: Vector = {}
        for k, c in vec.items():
            img = self(k)
            out[abs(img)] = out.get(abs(img), 0) + (c if img > 0 else -c)
        return {k: c for k, c in out.items() if c != 0}

    def sign_flips(self) -> int:
        return sum(1 for x in self.images if x < 0)


def reflection(n: int, beta: Root) -> SignedPermutation:
    img = list(range(1, n + 1))
    i, j = beta.i, beta.j
    if beta.kind is Kind.DIFF:
        img[i - 1], img[j - 1] = j, i
    elif beta.kind is Kind.SUM:
        img[i - 1], img[j - 1] = -j, -i
    else:
        img[i - 1] = -i
    return SignedPermutation(tuple(img))


def involution_from_placement(system: RootSystem, roots) -> SignedPermutation:
    ident = SignedPermutation.identity(system.n)
    return reduce(lambda acc, b: acc * reflection(system.n, b), roots, ident)


def apply(sigma: SignedPermutation, alpha: Root) -> tuple[Vector, bool]:
    """Image of a root as a sparse vector, plus whether it is negative."""
    vec = sigma.act(alpha.vector())
    return vec, is_negative(vec)


def inversion_set(system: RootSystem, sigma: SignedPermutation) -> frozenset[Root]:
    return frozenset(a for a in system.positive_roots if apply(sigma, a)[1])


@dataclass(frozen=True)
class InvolutionStats:
    length: int
    support_size: int
    d_stat: int
    inversion_set: frozenset[Root]

    @property
    def dim(self) -> int:
        return self.length - self.support_size - 2 * self.d_stat


def d_statistic(system: RootSystem, roots) -> int:
    if system.family is not Family.B:
        return 0
    shorts = [b for b in roots if b.kind is Kind.SHORT]
    if not shorts:
        return 0
    i = shorts[0].i
    return sum(1 for b in roots if b.col > i and b.row < 0)


def involution_stats(system: RootSystem, roots) -> InvolutionStats:
    roots = list(roots)
    sigma = involution_from_placement(system, roots)
    inv = inversion_set(system, sigma)
    return InvolutionStats(len(inv), len(roots), d_statistic(system, roots), inv)
