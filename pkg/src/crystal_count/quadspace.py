"""Quadratic spaces over the prime field.

A QuadraticSpace is an F_p-space of even dimension with a symmetric,
invertible Gram matrix stored as integers mod p.  The standard
non-degenerate, non-neutral space of dimension 2*sigma0 is assembled from
sigma0 - 1 hyperbolic planes and one anisotropic plane diag(1, -eps) with
eps the smallest non-square mod p.

Neutrality is decided by the discriminant test: a non-degenerate form of
dimension 2n is neutral (an orthogonal sum of n hyperbolic planes) iff
(-1)^n * det(gram) is a square mod p.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetExceeded, EvenCharacteristic, NotPrime
from .field import Field, is_prime

DEFAULT_CANDIDATE_BUDGET = 10 ** 8
_CHUNK = 1 << 16

U2_BLOCK = ((0, -1), (-1, 0))


def legendre(a: int, p: int) -> int:
    """0, 1 or -1 according to the square class of a mod p."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def smallest_nonsquare(p: int) -> int:
    for a in range(2, p):
        if legendre(a, p) == -1:
            return a
    raise ValueError("no non-square exists only for p = 2")


@dataclass(frozen=True)
class QuadraticSpace:
    p: int
    gram: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.gram)

    @property
    def sigma0(self) -> int:
        return self.dim // 2

    def bilinear(self, x, y) -> int:
        p = self.p
        total = 0
        for i, xi in enumerate(x):
            if xi % p:
                row = self.gram[i]
                total += xi * sum(r * yj for r, yj in zip(row, y))
        return total % p

    def det(self) -> int:
        return _int_det(self.gram, self.p)

    def is_nondegenerate(self) -> bool:
        return _int_det(self.gram, self.p) != 0

    def is_nonneutral(self) -> bool:
        d = _int_det(self.gram, self.p)
        sign = -1 if self.sigma0 % 2 else 1
        return legendre(sign * d, self.p) == -1

    def gram_lift(self, field: Field):
        """Gram matrix as constants of the given extension field."""
        return [[field.from_int(c) for c in row] for row in self.gram]

    def to_json(self) -> dict:
        return {"p": self.p, "dim": self.dim, "gram": [list(r) for r in self.gram]}


def _int_det(gram, p: int) -> int:
    m = [list(r) for r in gram]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c] % p
        inv = pow(m[c][c], p - 2, p)
        for i in range(c + 1, n):
            if m[i][c] % p:
                f = m[i][c] * inv % p
                m[i] = [(u - f * v) % p for u, v in zip(m[i], m[c])]
    return det % p


@lru_cache(maxsize=None)
def standard_space(p: int, sigma0: int) -> QuadraticSpace:
    """The reference non-degenerate, non-neutral space of dimension 2*sigma0."""
    if p == 2:
        raise EvenCharacteristic("p = 2 is excluded")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not 1 <= sigma0 <= 11:
        raise ValueError("sigma0 must be between 1 and 11")
    n = 2 * sigma0
    gram = [[0] * n for _ in range(n)]
    for k in range(sigma0 - 1):
        i = 2 * k
        gram[i][i + 1] = gram[i + 1][i] = (-1) % p
    eps = smallest_nonsquare(p)
    gram[n - 2][n - 2] = 1
    gram[n - 1][n - 1] = (-eps) % p
    space = QuadraticSpace(p, tuple(tuple(r) for r in gram))
    assert space.is_nondegenerate() and space.is_nonneutral()
    return space


def isotropic_count_formula(p: int, sigma0: int) -> int:
    """(p^sigma0 + 1)(p^(sigma0-1) - 1), the number of nonzero isotropic
    vectors of a non-degenerate non-neutral space of dimension 2*sigma0."""
    return (p ** sigma0 + 1) * (p ** (sigma0 - 1) - 1)


@lru_cache(maxsize=None)
def enumerate_isotropic(space: QuadraticSpace, budget: int = DEFAULT_CANDIDATE_BUDGET):
    """All nonzero vectors v with v.v = 0, in lexicographic order."""
    p, n = space.p, space.dim
    total = p ** n
    if total > budget:
        raise BudgetExceeded(f"{total} candidate vectors exceed budget {budget}")
    G = np.array(space.gram, dtype=np.int64) % p
    weights = np.array([p ** (n - 1 - i) for i in range(n)], dtype=np.int64)
    out = []
    for start in range(0, total, _CHUNK):
        ks = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        X = (ks[:, None] // weights[None, :]) % p
        q = np.einsum("ij,jk,ik->i", X, G, X) % p
        hits = X[q == 0]
        for row in hits:
            vec = tuple(int(c) for c in row)
            if any(vec):
                out.append(vec)
    return tuple(out)


@dataclass(frozen=True)
class HyperbolicExtension:
    """V plus one adjoined hyperbolic plane; coordinates are ordered
    (base..., v, w) with v.v = w.w = 0 and v.w = -1."""

    base: QuadraticSpace
    extended: QuadraticSpace
    v_index: int
    w_index: int


def hyperbolic_extend(space: QuadraticSpace) -> HyperbolicExtension:
    p, n = space.p, space.dim
    gram = [[0] * (n + 2) for _ in range(n + 2)]
    for i in range(n):
        for j in range(n):
            gram[i][j] = space.gram[i][j]
    gram[n][n + 1] = gram[n + 1][n] = (-1) % p
    extended = QuadraticSpace(p, tuple(tuple(r) for r in gram))
    return HyperbolicExtension(space, extended, n, n + 1)
