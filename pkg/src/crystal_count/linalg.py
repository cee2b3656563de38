"""Exact dense linear algebra over a Field.

Matrices are lists of rows of FieldElement.  Vectors are tuples (row
vectors unless stated otherwise).  Row spaces are always canonicalized to
reduced row echelon form, so two matrices span the same space iff their
canonical bases are equal entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SingularOperator
from .field import Field, FieldElement


def zeros(field: Field, rows: int, cols: int):
    return [[field.zero] * cols for _ in range(rows)]


def identity(field: Field, n: int):
    out = zeros(field, n, n)
    for i in range(n):
        out[i][i] = field.one
    return out


def lift_int_matrix(field: Field, rows):
    """Integer matrix -> matrix of field constants."""
    return [[field.from_int(c) for c in row] for row in rows]


def lift_int_vector(field: Field, vec):
    return tuple(field.from_int(c) for c in vec)


def mat_mul(A, B):
    n = len(B)
    cols = len(B[0]) if n else 0
    out = []
    for row in A:
        acc = None
        for k, a in enumerate(row):
            if a:
                term = [a * b for b in B[k]]
                if acc is None:
                    acc = term
                else:
                    acc = [x + y for x, y in zip(acc, term)]
        if acc is None:
            acc = [row[0].field.zero] * cols
        out.append(acc)
    return out


def vec_mat(x, A):
    """Row vector times matrix."""
    acc = None
    cols = len(A[0])
    for k, a in enumerate(x):
        if a:
            term = [a * b for b in A[k]]
            acc = term if acc is None else [u + v for u, v in zip(acc, term)]
    if acc is None:
        acc = [x[0].field.zero] * cols
    return tuple(acc)


def transpose(A):
    return [list(col) for col in zip(*A)]


def mat_frobenius(A):
    return [[a.frobenius() for a in row] for row in A]


def dot(x, y):
    acc = None
    for a, b in zip(x, y):
        t = a * b
        acc = t if acc is None else acc + t
    return acc


def rref(A):
    """Reduced row echelon form (copy); returns (rows, pivot_columns)."""
    R = [list(row) for row in A]
    if not R:
        return R, []
    ncols = len(R[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(R)):
            if R[i][c]:
                piv = i
                break
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = R[r][c].inv()
        R[r] = [v * inv for v in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [u - f * v for u, v in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R, pivots


def row_basis(A):
    """Canonical basis of the row space (reduced echelon, no zero rows)."""
    R, pivots = rref(A)
    return [tuple(row) for row in R[: len(pivots)]]


def rank(A) -> int:
    return len(row_basis(A))


def mat_det(A) -> FieldElement:
    field = A[0][0].field
    M = [list(row) for row in A]
    n = len(M)
    det = field.one
    for c in range(n):
        piv = None
        for i in range(c, n):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            return field.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c]
        inv = M[c][c].inv()
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] * inv
                M[i] = [u - f * v for u, v in zip(M[i], M[c])]
    return det


def mat_inv(A):
    field = A[0][0].field
    n = len(A)
    aug = [list(row) + ident for row, ident in zip(A, identity(field, n))]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularOperator("matrix is not invertible")
    return [row[n:] for row in R[:n]]


@dataclass
class LinearSolution:
    """Solution set of A x = b: a particular solution (None when the system
    is inconsistent) plus a canonical basis of the kernel."""

    consistent: bool
    particular: tuple | None
    kernel: list


def right_kernel(A):
    """Canonical basis (rows) of {x : A x = 0}."""
    field = A[0][0].field if A and A[0] else None
    if not A or not A[0]:
        return []
    ncols = len(A[0])
    R, pivots = rref(A)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        x = [field.zero] * ncols
        x[f] = field.one
        for r, c in enumerate(pivots):
            x[c] = -R[r][f]
        basis.append(tuple(x))
    return row_basis(basis) if basis else []


def solve_linear(A, b) -> LinearSolution:
    """Exact solution of A x = b over the field of the entries.

    Inconsistency is reported through the `consistent` flag, not raised.
    The kernel basis is in reduced echelon form, so solution sets compare
    canonically.
    """
    field = A[0][0].field if A and A[0] else b[0].field
    if not A or not A[0]:
        return LinearSolution(True, (), [])
    ncols = len(A[0])
    aug = [list(row) + [bv] for row, bv in zip(A, b)]
    R, pivots = rref(aug)
    if ncols in pivots:
        return LinearSolution(False, None, right_kernel(A))
    x = [field.zero] * ncols
    for r, c in enumerate(pivots):
        x[c] = R[r][ncols]
    return LinearSolution(True, tuple(x), right_kernel(A))
