import random

import pytest

from crystal_count import linalg
from crystal_count.errors import SingularOperator
from crystal_count.field import make_extension


F3 = make_extension(3, 1)
F9 = make_extension(3, 2)


def lift(field, rows):
    return linalg.lift_int_matrix(field, rows)


def test_solve_identity_unique():
    A = linalg.identity(F3, 3)
    b = linalg.lift_int_vector(F3, (2, 0, 1))
    sol = linalg.solve_linear(A, b)
    assert sol.consistent
    assert sol.particular == b
    assert sol.kernel == []


def test_solve_zero_matrix_full_kernel():
    A = lift(F3, [[0, 0], [0, 0]])
    b = linalg.lift_int_vector(F3, (0, 0))
    sol = linalg.solve_linear(A, b)
    assert sol.consistent
    assert len(sol.kernel) == 2
    assert sol.kernel == linalg.row_basis(linalg.identity(F3, 2))


def test_solve_hand_eliminated_1x2():
    # x + y = 1 over GF(3): particular (1, 0), kernel spanned by (1, -1)
    A = lift(F3, [[1, 1]])
    b = linalg.lift_int_vector(F3, (1,))
    sol = linalg.solve_linear(A, b)
    assert sol.consistent
    assert sol.particular == linalg.lift_int_vector(F3, (1, 0))
    assert sol.kernel == [linalg.lift_int_vector(F3, (1, -1))]


def test_solve_inconsistent_reported():
    A = lift(F3, [[1, 1], [1, 1]])
    b = linalg.lift_int_vector(F3, (1, 2))
    sol = linalg.solve_linear(A, b)
    assert not sol.consistent
    assert sol.particular is None


def test_rref_canonical_row_space():
    # B's rows are combinations of A's rows, so the canonical bases agree
    A = lift(F3, [[1, 2, 0], [2, 1, 0], [0, 1, 1]])
    B = lift(F3, [[0, 1, 1], [1, 2, 0], [1, 0, 1]])
    assert linalg.row_basis(A) == linalg.row_basis(B)
    assert linalg.rank(A) == 2


def test_right_kernel_matches_solutions():
    A = lift(F9, [[1, 0, 1], [0, 1, 1]])
    ker = linalg.right_kernel(A)
    assert len(ker) == 1
    for row in ker:
        img = [linalg.dot(arow, row) for arow in A]
        assert all(not v for v in img)
    # canonical: pivot normalized to 1
    assert ker[0][0] == F9.one


@pytest.mark.parametrize("field", [F3, F9])
def test_inverse_round_trip_random(field):
    rng = random.Random(97)
    elems = list(field.elements())
    n = 4
    tried = 0
    inverted = 0
    while inverted < 5 and tried < 50:
        tried += 1
        A = [[rng.choice(elems) for _ in range(n)] for _ in range(n)]
        if not linalg.mat_det(A):
            continue
        Ainv = linalg.mat_inv(A)
        assert linalg.mat_mul(A, Ainv) == linalg.identity(field, n)
        inverted += 1
    assert inverted == 5


def test_singular_inverse_raises():
    A = lift(F3, [[1, 2], [2, 1]])  # det = 1 - 4 = 0 mod 3
    assert not linalg.mat_det(A)
    with pytest.raises(SingularOperator):
        linalg.mat_inv(A)


def test_vec_mat_and_dot():
    A = lift(F3, [[1, 2], [0, 1]])
    x = linalg.lift_int_vector(F3, (1, 1))
    assert linalg.vec_mat(x, A) == linalg.lift_int_vector(F3, (1, 0))
    assert linalg.dot(x, x) == F3.from_int(2)
