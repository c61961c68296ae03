from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from browderkit.errors import DimensionMismatch
from browderkit.gauss import Gauss
from browderkit.linalg import (
    RationalMatrix,
    asc_des,
    assemble_block,
    kernel_basis,
    power_defects,
    rank,
    solve,
    sparse_nullspace,
)

M = RationalMatrix.from_rows


def jordan(n):
    return M([[1 if j == i + 1 else 0 for j in range(n)] for i in range(n)])


def test_rank_examples():
    assert rank(RationalMatrix.identity(3)) == 3
    assert rank(RationalMatrix.zeros(3, 3)) == 0
    assert rank(M([[1, 2], [2, 4]])) == 1


def test_rank_gaussian_entries():
    # (1+i) row is a complex multiple of the first
    i = Gauss(0, 1)
    assert rank(M([[1, i], [1 + i, i * (1 + i)]])) == 1
    assert rank(M([[1, i], [i, 1]])) == 2


def test_kernel_examples():
    assert kernel_basis(RationalMatrix.identity(3)) == []
    assert len(kernel_basis(RationalMatrix.zeros(2, 2))) == 2
    (v,) = kernel_basis(M([[1, 1], [0, 0]]))
    assert v[0] == -v[1] and v[0] != 0


def test_power_defects_examples():
    assert power_defects(jordan(3), 4) == [(1, 1), (2, 2), (3, 3), (3, 3)]
    assert power_defects(RationalMatrix.identity(2), 2) == [(0, 0), (0, 0)]
    assert power_defects(M([[0, 0], [0, 1]]), 2) == [(1, 1), (1, 1)]


def test_asc_des_examples():
    assert asc_des(RationalMatrix.identity(3)) == (0, 0)
    assert asc_des(jordan(3)) == (3, 3)
    assert asc_des(M([[0, 0, 0], [0, 1, 0], [0, 0, 1]])) == (1, 1)


def test_power_defects_needs_square():
    with pytest.raises(DimensionMismatch):
        power_defects(M([[1, 2]]), 2)


def test_assemble_block_layout():
    a, b, c = M([[1]]), M([[2]]), M([[3]])
    z = RationalMatrix.zeros(1, 1)
    assert assemble_block([[a, c], [z, b]]) == M([[1, 3], [0, 2]])
    I2, Z2 = RationalMatrix.identity(2), RationalMatrix.zeros(2, 2)
    assert assemble_block([[I2, Z2], [Z2, I2]]) == RationalMatrix.identity(4)


def test_assemble_block_rejects_nonconformable():
    with pytest.raises(DimensionMismatch):
        assemble_block([[M([[1, 2]]), M([[1]])], [M([[1]]), M([[1]])]])


def test_assemble_block_random_placement():
    import random
    rng = random.Random(3)
    blocks = [[M([[rng.randint(-5, 5) for _ in range(2)] for _ in range(2)]) for _ in range(2)] for _ in range(2)]
    out = assemble_block(blocks)
    for bi in range(2):
        for bj in range(2):
            for i in range(2):
                for j in range(2):
                    assert out[2 * bi + i, 2 * bj + j] == blocks[bi][bj][i, j]


def test_solve_and_inconsistent():
    A = M([[1, 1], [1, -1]])
    assert solve(A, [2, 0]) == [Gauss(1), Gauss(1)]
    assert solve(M([[1, 1], [1, 1]]), [1, 2]) is None


def test_sparse_nullspace_matches_dense():
    rows = [{0: Gauss(1), 2: Gauss(-1)}, {1: Gauss(2), 2: Gauss(Fraction(1, 2))}]
    rk, basis = sparse_nullspace(rows, 3)
    assert rk == 2 and len(basis) == 1
    v = basis[0]
    for r in rows:
        assert sum((c * v[j] for j, c in r.items()), Gauss(0)) == 0


gauss_int = st.builds(Gauss, st.integers(-3, 3), st.integers(-1, 1))


@st.composite
def matrices(draw, max_dim=5, rows=None, cols=None):
    r = draw(st.integers(0, max_dim)) if rows is None else rows
    c = draw(st.integers(0, max_dim)) if cols is None else cols
    return RationalMatrix(r, c, tuple(draw(st.lists(gauss_int, min_size=r * c, max_size=r * c))))


@given(matrices())
def test_kernel_basis_is_annihilated_and_independent(A):
    basis = kernel_basis(A)
    assert len(basis) == A.cols - rank(A)
    for v in basis:
        assert all(x == 0 for x in A.apply(v))
    if basis:
        assert rank(M(basis, A.cols)) == len(basis)


@given(matrices())
def test_rank_bounds_and_adjoint(A):
    rk = rank(A)
    assert 0 <= rk <= min(A.rows, A.cols)
    assert rank(A.conj_transpose()) == rk


@given(st.integers(1, 5).flatmap(lambda n: matrices(rows=n, cols=n)))
@settings(max_examples=60)
def test_power_ranks_nonincreasing(A):
    defects = power_defects(A, A.rows + 1)
    alphas = [a for a, _ in defects]
    assert alphas == sorted(alphas)
    asc, des = asc_des(A)
    # square matrices have equal ascent and descent
    assert asc == des <= A.rows


@given(st.data())
@settings(max_examples=80)
def test_product_defect_identity(data):
    m, n, p = (data.draw(st.integers(0, 5)) for _ in range(3))
    T = data.draw(matrices(rows=n, cols=m))
    S = data.draw(matrices(rows=p, cols=n))
    ST = S @ T
    lhs = (m - rank(T)) + (n - rank(S)) + (p - rank(ST))
    rhs = (m - rank(ST)) + (n - rank(T)) + (p - rank(S))
    assert lhs == rhs
