import pytest
from hypothesis import given, strategies as st

from symcorr.exact import ONE, USeries, rational
from symcorr.linalg import (DuplicateIndex, IndexOutOfRange, NonSquare, NotAntisymmetric,
                            SingularConstantTerm, adjugate, block_diag, block_restrict,
                            det_auto, det_cofactor, det_eliminate, det_permutations, determinant,
                            identity, inverse_unit, matmul, pf_eliminate, pfaffian, pfaffian_auto,
                            principal_minor, submatrix, transpose)

N = 5
ints = st.integers(-3, 3)


def square(n):
    return st.lists(st.lists(ints.map(rational), min_size=n, max_size=n), min_size=n, max_size=n)


def series_entry(lo=0):
    return st.lists(ints, min_size=N + 1, max_size=N + 1).map(
        lambda c: USeries([0] * lo + c[lo:], N))


def series_square(n, lo=0):
    return st.lists(st.lists(series_entry(lo), min_size=n, max_size=n), min_size=n, max_size=n)


@st.composite
def antisym(draw, n, entry):
    A = [[None] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = entry.zero
        for j in range(i + 1, n):
            x = draw(entry.strategy)
            A[i][j], A[j][i] = x, -x
    return A


class _Rat:
    zero = rational(0)
    strategy = ints.map(rational)


class _Ser:
    zero = USeries.zero(N)
    strategy = series_entry()


@given(st.integers(0, 5).flatmap(square))
def test_determinants_agree_rational(M):
    d = det_cofactor(M, ONE) if M else ONE
    assert determinant(M, ONE) == d
    assert det_permutations(M, ONE) == d


@given(st.integers(1, 4).flatmap(series_square))
def test_determinants_agree_series(M):
    one = USeries.one(N)
    d = det_cofactor(M, one)
    assert determinant(M, one) == d
    assert det_eliminate(M, one) == d
    assert det_auto(M, one) == d


@given(st.integers(1, 5).flatmap(lambda n: series_square(n, lo=1)))
def test_elimination_on_non_unit_entries(M):
    # all entries divisible by u: pivots are never units
    one = USeries.one(N)
    assert det_eliminate(M, one) == determinant(M, one)


@given(st.sampled_from([2, 4, 6]).flatmap(lambda n: antisym(n, _Rat)))
def test_pfaffian_squares_to_determinant(A):
    assert pfaffian(A, ONE) ** 2 == determinant(A, ONE)
    assert pf_eliminate(A, ONE) == pfaffian(A, ONE)


@given(st.sampled_from([2, 4, 6]).flatmap(lambda n: antisym(n, _Ser)))
def test_pfaffian_series(A):
    one = USeries.one(N)
    p = pfaffian(A, one)
    assert p * p == determinant(A, one)
    assert pf_eliminate(A, one) == p
    assert pfaffian_auto(A, one) == p


def test_pfaffian_small_formulas():
    a, b, c, d, e, f = map(rational, (2, 3, 5, 7, 11, 13))
    z = rational(0)
    A = [[z, a, b, c], [-a, z, d, e], [-b, -d, z, f], [-c, -e, -f, z]]
    assert pfaffian(A, ONE) == a * f - b * e + c * d
    assert pfaffian([[z, a], [-a, z]], ONE) == a
    assert pfaffian([], ONE) == ONE
    assert pfaffian([[z] * 3] * 3, ONE) == 0


def test_pfaffian_errors():
    with pytest.raises(NotAntisymmetric):
        pfaffian([[0, 1], [1, 0]], ONE)
    with pytest.raises(NonSquare):
        pfaffian([[0, 1]], ONE)
    with pytest.raises(NonSquare):
        determinant([[1, 2]], ONE)


@given(series_square(3).filter(lambda M: determinant(M, USeries.one(N)).is_unit()))
def test_inverse_unit(M):
    one = USeries.one(N)
    Mi = inverse_unit(M, one)
    P = matmul(M, Mi)
    assert all(P[i][j] == (one if i == j else USeries.zero(N)) for i in range(3) for j in range(3))
    A = adjugate(M, one)
    d = determinant(M, one)
    Q = matmul(A, M)
    assert all(Q[i][j] == (d if i == j else USeries.zero(N)) for i in range(3) for j in range(3))


def test_singular_inverse():
    u = USeries.monomial(1, 1, N)
    with pytest.raises(SingularConstantTerm):
        inverse_unit([[u]], USeries.one(N))


def test_restrictions():
    M = [[rational(3 * i + j) for j in range(3)] for i in range(3)]
    assert principal_minor(M, 2) == [[0, 1], [3, 4]]
    assert submatrix(M, [2], [0, 1]) == [[6, 7]]
    assert transpose(M)[0] == [0, 3, 6]
    with pytest.raises(IndexOutOfRange):
        principal_minor(M, 4)
    assert block_diag([[1]], [[2, 3], [4, 5]])[1] == [0, 2, 3]
    assert identity(2, ONE) == [[1, 0], [0, 1]]


def test_block_restrict():
    def K(a, b):
        return [[a, b], [-b, -a]]
    assert block_restrict(K, [1, 2]) == [[1, 1, 1, 2], [-1, -1, -2, -1],
                                         [2, 1, 2, 2], [-1, -2, -2, -2]]
    assert block_restrict(lambda a, b: a - b, [0, 3]) == [[0, -3], [3, 0]]
    with pytest.raises(DuplicateIndex):
        block_restrict(K, [1, 1])
