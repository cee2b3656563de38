"""Characteristic subspace data: validation, the canonical line, the
normalized basis with its structure constants, and reconstruction of a
datum from prescribed constants.

A datum is a pair (K, V): V an F_p-space of dimension 2*sigma0 with a
non-degenerate non-neutral form, K a totally isotropic sigma0-dimensional
subspace of V (x) GF(p^N) with dim(K + phi K) = sigma0 + 1.  It is strict
when the phi-iterates of K span everything.

Reconstruction works in an abstract model: basis symbols e_1..e_{2s} with
the block Gram matrix determined by the constants, phi acting as the
shift e_i -> e_(i+1), and phi(e_2s) solved from the requirement that phi
be compatible with the form.  The F_p-structure is then recovered as the
fixed points of phi over the smallest extension where they have full
rank, and K is read off in those coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .errors import (
    AmbientMismatch,
    DescentFailed,
    ModelInconsistent,
    NotCharacteristic,
    NotStrict,
    RootUnavailable,
)
from .field import (
    Field,
    FieldElement,
    element_order,
    embed_field,
    make_extension,
    mth_roots,
)
from .quadspace import QuadraticSpace
from .semilinear import Subspace, apply_phi, fixed_points, subspace_intersect, subspace_sum

ORDER_CAP = 64
ROOT_EXTENSION_CAP = 256


@dataclass(frozen=True)
class CharDatum:
    V: QuadraticSpace
    field: Field
    K: Subspace

    @property
    def sigma0(self) -> int:
        return self.V.sigma0

    @property
    def p(self) -> int:
        return self.V.p

    def to_json(self) -> dict:
        return {
            "V": self.V.to_json(),
            "fieldN": self.field.N,
            "K": self.K.to_json(),
        }


@dataclass(frozen=True)
class Validation:
    is_characteristic: bool
    is_strict: bool
    sigma0: int


@dataclass(frozen=True)
class OgusBasis:
    """Normalized basis e_1..e_{2s} of V (x) GF(p^N) with e_(i+1) = phi(e_i),
    e_1 . phi^s(e_1) = 1, plus the structure constants a_i = e_1 . e_(s+i+1)
    and the expansion coefficients of phi(e_2s)."""

    datum: CharDatum  # possibly a field-extended copy of the input datum
    e: tuple
    a: tuple
    lam: tuple
    mu: tuple


def _pair(V: QuadraticSpace, field: Field, x, y) -> FieldElement:
    G = _gram_lift(V, field)
    return linalg.dot(linalg.vec_mat(x, G), y)


@lru_cache(maxsize=None)
def _gram_lift_cached(V: QuadraticSpace, field: Field):
    return tuple(tuple(field.from_int(c) for c in row) for row in V.gram)


def _gram_lift(V, field):
    return [list(r) for r in _gram_lift_cached(V, field)]


def validate(K: Subspace, V: QuadraticSpace) -> Validation:
    """Check the defining conditions exactly."""
    if K.ambient != V:
        raise AmbientMismatch("K does not live in V tensored up")
    sigma0 = V.sigma0
    isotropic = all(not v for row in K.pairing_matrix() for v in row)
    right_dim = K.dim == sigma0
    step = subspace_sum(K, apply_phi(K))
    char = isotropic and right_dim and step.dim == sigma0 + 1
    strict = False
    if char:
        total = K
        for _ in range(2 * sigma0):
            grown = subspace_sum(total, apply_phi(total))
            if grown.dim == total.dim:
                break
            total = grown
        strict = total.dim == V.dim
    return Validation(char, strict, sigma0)


def artin_invariant(d: CharDatum) -> int:
    """dim K, which equals dim(V)/2 for a characteristic datum."""
    val = validate(d.K, d.V)
    if not val.is_characteristic:
        raise NotCharacteristic("datum fails the characteristic conditions")
    return d.K.dim


def canonical_line(d: CharDatum) -> Subspace:
    """The one-dimensional intersection of K, phi(K), ..., phi^(s-1)(K)."""
    line = d.K
    cur = d.K
    for _ in range(d.sigma0 - 1):
        cur = apply_phi(cur)
        line = subspace_intersect(line, cur)
    if line.dim != 1:
        raise NotStrict(f"canonical line has dimension {line.dim}")
    return line


def extend_datum_field(d: CharDatum, factor: int) -> CharDatum:
    """The same datum over GF(p^(N*factor))."""
    if factor == 1:
        return d
    big = make_extension(d.p, d.field.N * factor)
    emb = embed_field(d.field, big)
    rows = [tuple(emb(c) for c in row) for row in d.K.basis]
    return CharDatum(d.V, big, Subspace.span(d.V, big, rows))


def block_gram(field: Field, sigma0: int, a):
    """The Gram matrix of the normalized basis: antidiagonal blocks A, A^T
    with A unipotent upper-triangular built from Frobenius twists of the
    constants."""
    A = linalg.identity(field, sigma0)
    for r in range(sigma0):
        for c in range(r + 1, sigma0):
            A[r][c] = a[c - r - 1].frobenius_power(r)
    n = 2 * sigma0
    G = linalg.zeros(field, n, n)
    for i in range(sigma0):
        for j in range(sigma0):
            G[i][sigma0 + j] = A[i][j]
            G[sigma0 + i][j] = A[j][i]
    return G


def _root_extension_factor(p: int, N: int, m: int, d: int) -> int:
    """Smallest factor r such that x^m = b is solvable in GF(p^(N*r)) for b
    of multiplicative order d (integer arithmetic only)."""
    for r in range(1, ROOT_EXTENSION_CAP + 1):
        q1 = p ** (N * r) - 1
        if (q1 // math.gcd(m, q1)) % d == 0:
            return r
    raise RootUnavailable(
        f"no field within GF(p^{N}*{ROOT_EXTENSION_CAP}) contains the scaling root"
    )


@lru_cache(maxsize=None)
def ogus_basis(d: CharDatum, auto_extend: bool = True) -> OgusBasis:
    """Normalized basis, structure constants, and phi(e_2s) coefficients.

    The normalization root is the canonically smallest solution of
    s^(p^sigma0 + 1) = (e . phi^sigma0(e))^(-1); when no solution exists in
    the datum's field and auto_extend is set, the datum is moved to the
    smallest extension containing one.
    """
    val = validate(d.K, d.V)
    if not (val.is_characteristic and val.is_strict):
        raise NotStrict("ogus_basis requires a strictly characteristic datum")
    p, sigma0 = d.p, d.sigma0
    m = p ** sigma0 + 1
    line = canonical_line(d)
    e0 = line.basis[0]
    c = _pair(d.V, d.field, e0, tuple(x.frobenius_power(sigma0) for x in e0))
    if not c:
        raise NotStrict("normalization pairing vanishes")
    factor = _root_extension_factor(p, d.field.N, m, element_order(c))
    if factor > 1:
        if not auto_extend:
            raise RootUnavailable(
                f"scaling root requires extension degree {d.field.N * factor}"
            )
        d = extend_datum_field(d, factor)
        line = canonical_line(d)
        e0 = line.basis[0]
        c = _pair(d.V, d.field, e0, tuple(x.frobenius_power(sigma0) for x in e0))
    roots = mth_roots(c.inv(), m)
    if not roots:
        raise RootUnavailable("scaling equation unsolvable after extension")
    s = roots[0]
    e1 = tuple(s * x for x in e0)
    e_rows = [e1]
    for _ in range(2 * sigma0 - 1):
        e_rows.append(tuple(x.frobenius() for x in e_rows[-1]))
    E = [list(r) for r in e_rows]
    a = tuple(_pair(d.V, d.field, e_rows[0], e_rows[sigma0 + i]) for i in range(1, sigma0))
    phi_last = tuple(x.frobenius() for x in e_rows[-1])
    coeffs = linalg.vec_mat(phi_last, linalg.mat_inv(E))
    lam, mu = coeffs[:sigma0], coeffs[sigma0:]
    field = d.field
    if lam[0] != field.one or mu[0] != field.zero:
        raise ModelInconsistent("phi(e_2s) violates lambda_1 = 1, mu_1 = 0")
    if _pair(d.V, field, phi_last, phi_last):
        raise ModelInconsistent("phi(e_2s) is not isotropic")
    expected = block_gram(field, sigma0, a)
    actual = [[_pair(d.V, field, x, y) for y in e_rows] for x in e_rows]
    if actual != expected:
        raise ModelInconsistent("Gram matrix of the normalized basis is off-form")
    return OgusBasis(d, tuple(e_rows), a, tuple(lam), tuple(mu))


def lift_constants(field: Field, a, n: int | None = None):
    """Interpret constants (ints, coefficient lists, or elements of a
    subfield) as elements of the given field via the canonical embedding."""
    out = []
    for x in a:
        if isinstance(x, FieldElement):
            if x.field is field:
                out.append(x)
            else:
                out.append(embed_field(x.field, field)(x))
        else:
            small = make_extension(field.p, n) if n else field
            out.append(embed_field(small, field)(small.element(x)))
    return tuple(out)


def _solve_phi_last(field: Field, sigma0: int, G):
    """Coefficients of phi(e_2s) in the model: the pairing compatibility
    equations against e_2..e_2s, plus lambda_1 = 1 and mu_1 = 0.  The
    pairing equations alone leave the mu_1 coordinate free (the k = s+1
    equation merely repeats lambda_1 = 1), so mu_1 = 0 enters the system
    and isotropy of the solution is checked afterwards."""
    n = 2 * sigma0
    A = []
    rhs = []
    for k in range(2, n + 1):
        A.append([G[i][k - 1] for i in range(n)])
        rhs.append(G[n - 1][k - 2].frobenius())
    unit_lam = [field.zero] * n
    unit_lam[0] = field.one
    A.append(unit_lam)
    rhs.append(field.one)
    unit_mu = [field.zero] * n
    unit_mu[sigma0] = field.one
    A.append(unit_mu)
    rhs.append(field.zero)
    sol = linalg.solve_linear(A, rhs)
    if not sol.consistent or sol.kernel:
        raise ModelInconsistent("phi(e_2s) is not uniquely determined")
    return sol.particular


@lru_cache(maxsize=None)
def from_structure_constants(p: int, sigma0: int, a=(), n: int | None = None) -> CharDatum:
    """Build the datum with prescribed structure constants.

    The model is descended to an F_p-structure by taking fixed points of
    phi over GF(p^N), where N = n * (order of the n-fold twisted product
    of the phi matrix); this is the smallest degree of the required shape
    where the fixed points have full rank.
    """
    if not 1 <= sigma0 <= 11:
        raise ValueError("sigma0 must be between 1 and 11")
    base = make_extension(p, n) if n else _constants_field(p, a)
    a_f = tuple(base.element(x) if not isinstance(x, FieldElement) else x for x in a)
    if any(x.field is not base for x in a_f):
        raise ValueError("constants must live in a single field")
    if len(a_f) != sigma0 - 1:
        raise ValueError(f"expected {sigma0 - 1} constants, got {len(a_f)}")
    n = base.N
    dim = 2 * sigma0
    G = block_gram(base, sigma0, a_f)
    u = _solve_phi_last(base, sigma0, G)
    if linalg.dot(linalg.vec_mat(u, G), u):
        raise ModelInconsistent("solved phi(e_2s) is not isotropic")
    # phi as a row-operator matrix: phi(x) = frobenius(x) . P
    P = []
    for i in range(1, dim):
        row = [base.zero] * dim
        row[i] = base.one
        P.append(row)
    P.append(list(u))
    # twisted product sigma^(n-1)(P) ... sigma(P) P has entries fixed by
    # sigma^n; full descent happens exactly at multiples of its order
    twisted = P
    acc = P
    for _ in range(n - 1):
        acc = linalg.mat_frobenius(acc)
        twisted = linalg.mat_mul(acc, twisted)
    ident = linalg.identity(base, dim)
    power = twisted
    order = None
    for s in range(1, ORDER_CAP + 1):
        if power == ident:
            order = s
            break
        power = linalg.mat_mul(power, twisted)
    if order is None:
        raise DescentFailed(f"twisted product order exceeds {ORDER_CAP}")
    big = make_extension(p, n * order)
    emb = embed_field(base, big)
    P_big = [[emb(v) for v in row] for row in P]
    fixed = fixed_points(linalg.transpose(P_big), big)
    if len(fixed) != dim:
        raise DescentFailed("fixed points do not have full rank at the descent degree")
    B = [list(v) for v in fixed]
    G_big = [[emb(v) for v in row] for row in G]
    pair_rows = linalg.mat_mul(linalg.mat_mul(B, G_big), linalg.transpose(B))
    gram = []
    for row in pair_rows:
        out = []
        for v in row:
            if not v.in_prime_field():
                raise ModelInconsistent("form is not rational on the fixed structure")
            out.append(v.coeffs[0])
        gram.append(tuple(out))
    V = QuadraticSpace(p, tuple(gram))
    if not (V.is_nondegenerate() and V.is_nonneutral()):
        raise ModelInconsistent("recovered form is degenerate or neutral")
    # K = phi^-(sigma0-1) of <e_1..e_sigma0>, then rewritten in V-coordinates
    K_rows = [
        tuple(big.one if j == i else big.zero for j in range(dim)) for i in range(sigma0)
    ]
    if sigma0 > 1:
        P_inv = linalg.mat_inv(P_big)
        for _ in range(sigma0 - 1):
            K_rows = [
                tuple(v.frobenius_power(-1) for v in linalg.vec_mat(row, P_inv))
                for row in K_rows
            ]
    B_inv = linalg.mat_inv(B)
    K_V = Subspace.span(V, big, [linalg.vec_mat(row, B_inv) for row in K_rows])
    datum = CharDatum(V, big, K_V)
    val = validate(K_V, V)
    if not (val.is_characteristic and val.is_strict):
        raise ModelInconsistent("reconstructed datum fails validation")
    return datum


def _constants_field(p: int, a) -> Field:
    for x in a:
        if isinstance(x, FieldElement):
            return x.field
    return make_extension(p, 1)
