import itertools

import pytest

from crystal_count.errors import BudgetExceeded
from crystal_count.quadspace import (
    HyperbolicExtension,
    QuadraticSpace,
    enumerate_isotropic,
    hyperbolic_extend,
    isotropic_count_formula,
    legendre,
    smallest_nonsquare,
    standard_space,
)


def brute_isotropic(space):
    """Independent triple-loop scan used as the enumeration oracle."""
    p, n = space.p, space.dim
    hits = []
    for vec in itertools.product(range(p), repeat=n):
        if any(vec) and space.bilinear(vec, vec) == 0:
            hits.append(vec)
    return hits


def has_totally_isotropic_of_dim(space, k):
    """Exhaustive search for a k-dimensional totally isotropic subspace,
    scanning all k-tuples of vectors (desk-scale oracle)."""
    p, n = space.p, space.dim
    vectors = [v for v in itertools.product(range(p), repeat=n) if any(v)]

    def extend(basis, start):
        if len(basis) == k:
            return True
        for idx in range(start, len(vectors)):
            v = vectors[idx]
            if space.bilinear(v, v):
                continue
            if any(space.bilinear(v, b) for b in basis):
                continue
            # check linear independence over F_p by testing v not in span
            span = set()
            if basis:
                for coeffs in itertools.product(range(p), repeat=len(basis)):
                    w = tuple(
                        sum(c * b[i] for c, b in zip(coeffs, basis)) % p for i in range(n)
                    )
                    span.add(w)
            if v in span:
                continue
            if extend(basis + [v], idx + 1):
                return True
        return False

    return extend([], 0)


def test_smallest_nonsquare():
    # quadratic-residue tables: squares mod 3 = {1}, mod 5 = {1, 4}, mod 7 = {1, 2, 4}
    assert smallest_nonsquare(3) == 2
    assert smallest_nonsquare(5) == 2
    assert smallest_nonsquare(7) == 3


def test_standard_space_3_1_anisotropic():
    V = standard_space(3, 1)
    assert V.gram == ((1, 0), (0, 1))
    # oracle: x^2 + y^2 = 0 has only the zero solution mod 3
    assert brute_isotropic(V) == []


def test_standard_space_3_2_block_form():
    V = standard_space(3, 2)
    assert V.gram == (
        (0, 2, 0, 0),
        (2, 0, 0, 0),
        (0, 0, 1, 0),
        (0, 0, 0, 1),
    )


def test_standard_space_5_1():
    V = standard_space(5, 1)
    assert V.gram == ((1, 0), (0, 3))  # diag(1, -2) with eps = 2


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("sigma0", [1, 2, 3])
def test_standard_space_nondegenerate_nonneutral(p, sigma0):
    V = standard_space(p, sigma0)
    assert V.is_nondegenerate()
    assert V.is_nonneutral()


@pytest.mark.parametrize("p,sigma0", [(3, 1), (3, 2), (5, 1)])
def test_nonneutral_matches_exhaustive_witt_search(p, sigma0):
    # desk-scale check of the discriminant criterion: no totally isotropic
    # subspace of dimension sigma0, but one of dimension sigma0 - 1 exists
    V = standard_space(p, sigma0)
    assert not has_totally_isotropic_of_dim(V, sigma0)
    if sigma0 >= 2:
        assert has_totally_isotropic_of_dim(V, sigma0 - 1)


@pytest.mark.parametrize(
    "p,sigma0,count",
    [(3, 1, 0), (3, 2, 20), (3, 3, 224), (5, 1, 0), (5, 2, 104)],
)
def test_enumeration_matches_formula_and_oracle(p, sigma0, count):
    V = standard_space(p, sigma0)
    vecs = enumerate_isotropic(V)
    assert len(vecs) == count
    assert isotropic_count_formula(p, sigma0) == count
    if p ** (2 * sigma0) <= 3 ** 6:
        assert list(vecs) == brute_isotropic(V)


def test_enumeration_lex_order_and_scalar_closure():
    V = standard_space(3, 2)
    vecs = enumerate_isotropic(V)
    assert list(vecs) == sorted(vecs)
    vec_set = set(vecs)
    for v in vecs:
        for c in range(2, 3):
            assert tuple(c * x % 3 for x in v) in vec_set
    assert len(vecs) % (3 - 1) == 0


def test_isotropic_formula_sigma0_1_and_big_value():
    for p in (3, 5, 7, 11):
        assert isotropic_count_formula(p, 1) == 0
    # golden big-integer value, recorded from exact multiplication
    assert isotropic_count_formula(3, 11) == 177148 * 59048
    assert isotropic_count_formula(3, 11) == 10460235104


def test_enumeration_budget():
    V = standard_space(3, 3)
    with pytest.raises(BudgetExceeded):
        enumerate_isotropic(V, budget=100)


def test_hyperbolic_extend_structure():
    V = standard_space(3, 1)
    ext = hyperbolic_extend(V)
    assert isinstance(ext, HyperbolicExtension)
    E = ext.extended
    assert E.dim == 4
    v, w = ext.v_index, ext.w_index
    assert E.gram[v][v] == 0 and E.gram[w][w] == 0
    assert E.gram[v][w] == (-1) % 3 and E.gram[w][v] == (-1) % 3
    for i in range(V.dim):
        assert E.gram[i][v] == 0 and E.gram[i][w] == 0
        for j in range(V.dim):
            assert E.gram[i][j] == V.gram[i][j]
    # the extension of the sigma0 = 1 plane stays non-neutral: maximal
    # totally isotropic subspaces have dimension 1, not 2 (exhaustive)
    assert E.is_nonneutral()
    assert not has_totally_isotropic_of_dim(E, 2)
    assert has_totally_isotropic_of_dim(E, 1)
