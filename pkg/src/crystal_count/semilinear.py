"""Subspaces of V tensored with GF(p^N) and the semilinear operator
phi = id (x) sigma.

In the coordinates of the ambient F_p-space, phi acts entrywise by the
Frobenius, so applying it to a subspace is an entrywise p-th power of the
basis followed by re-canonicalization.  Subspaces are stored in reduced
row echelon form; equality of Subspace values is equality of subspaces.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import AmbientMismatch, SingularOperator
from .field import Field, FieldElement, make_extension
from .quadspace import QuadraticSpace


@dataclass(frozen=True)
class Subspace:
    ambient: QuadraticSpace
    field: Field
    basis: tuple  # tuple of rows (tuples of FieldElement), reduced echelon

    @staticmethod
    def span(ambient: QuadraticSpace, field: Field, rows) -> "Subspace":
        basis = tuple(linalg.row_basis(list(rows))) if rows else ()
        return Subspace(ambient, field, basis)

    @staticmethod
    def zero(ambient: QuadraticSpace, field: Field) -> "Subspace":
        return Subspace(ambient, field, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vector) -> bool:
        if not self.basis:
            return not any(vector)
        reduced = self.reduce(vector)
        return not any(reduced)

    def reduce(self, vector):
        """Canonical coset representative of vector modulo this subspace."""
        v = list(vector)
        for row in self.basis:
            pivot = next(i for i, c in enumerate(row) if c)
            if v[pivot]:
                f = v[pivot]
                v = [a - f * b for a, b in zip(v, row)]
        return tuple(v)

    def pairing_matrix(self):
        """Gram pairings of the basis rows in the ambient form."""
        G = self.ambient.gram_lift(self.field)
        rows = [linalg.vec_mat(b, G) for b in self.basis]
        return [[_dot(r, b) for b in self.basis] for r in rows]

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient.to_json(),
            "fieldN": self.field.N,
            "basis": [[list(c.coeffs) for c in row] for row in self.basis],
        }


def _dot(x, y):
    acc = None
    for a, b in zip(x, y):
        t = a * b
        acc = t if acc is None else acc + t
    return acc


def _same_ambient(S: Subspace, T: Subspace):
    if S.ambient != T.ambient or S.field is not T.field:
        raise AmbientMismatch("subspaces live in different ambient spaces")


def apply_phi(S: Subspace) -> Subspace:
    rows = [tuple(c.frobenius() for c in row) for row in S.basis]
    return Subspace.span(S.ambient, S.field, rows)


def apply_phi_power(S: Subspace, k: int) -> Subspace:
    k %= S.field.N
    out = S
    for _ in range(k):
        out = apply_phi(out)
    return out


def subspace_sum(S: Subspace, T: Subspace) -> Subspace:
    _same_ambient(S, T)
    return Subspace.span(S.ambient, S.field, list(S.basis) + list(T.basis))


def subspace_intersect(S: Subspace, T: Subspace) -> Subspace:
    _same_ambient(S, T)
    if not S.basis or not T.basis:
        return Subspace.zero(S.ambient, S.field)
    # coefficients (x, y) with x*S = y*T form the kernel of [S; -T]^T
    stacked = [list(row) for row in S.basis] + [[-c for c in row] for row in T.basis]
    ker = linalg.right_kernel(linalg.transpose(stacked))
    rows = []
    for coeffs in ker:
        x = coeffs[: len(S.basis)]
        rows.append(linalg.vec_mat(x, [list(r) for r in S.basis]))
    return Subspace.span(S.ambient, S.field, rows)


def fixed_points(M, field: Field):
    """F_p-basis of {x : M . frobenius(x) = x} for an invertible matrix M
    over GF(p^N), x a column vector.

    The system is flattened to the prime field: GF(p^N)^n is viewed as an
    F_p-space of dimension n*N.  Returns a list of fixed vectors (tuples
    of FieldElement) that are linearly independent over F_p; its length is
    at most n.
    """
    n = len(M)
    linalg.mat_inv(M)  # raises SingularOperator when not invertible
    N = field.N
    prime = make_extension(field.p, 1)
    basis_imgs = []
    # basis vector t^k e_j maps to column vector (M_ij * (t^k)^p)_i
    tpows = [field.element([0] * k + [1]) for k in range(N)]
    frob_tpows = [t.frobenius() for t in tpows]
    for j in range(n):
        for k in range(N):
            img = [M[i][j] * frob_tpows[k] for i in range(n)]
            basis_imgs.append(img)
    # rows of the F_p system: equation per (i, coeff slot)
    dim = n * N
    A = []
    for i in range(n):
        for slot in range(N):
            row = []
            for col in range(dim):
                val = basis_imgs[col][i].coeffs[slot]
                row.append(prime.from_int(val))
            A.append(row)
    # subtract identity: M sigma(x) - x = 0
    for d in range(dim):
        A[d][d] = A[d][d] - prime.one
    ker = linalg.right_kernel(A)
    out = []
    for flat in ker:
        vec = []
        for j in range(n):
            coeffs = tuple(flat[j * N + k].coeffs[0] for k in range(N))
            vec.append(FieldElement(field, coeffs))
        out.append(tuple(vec))
    return out
