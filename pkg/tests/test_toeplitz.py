import pytest

from symcorr.checks import f_matrix_family, minor_inverse_family
from symcorr.exact import ParameterSet, USeries
from symcorr.linalg import matmul, principal_minor
from symcorr.toeplitz import (Graded, SingularSection, e_symbol, f_entry, f_matrix, gram_O,
                              gram_S, gram_U, gram_u, minor_inverse_probe, probe_bounds,
                              section_margin, toeplitz)

N = 8


def test_f_entries():
    # F(alpha, beta)_{jk} for k > j: alpha^{k-j-1} beta^{[j even]} beta^{[k odd]}
    a, b = Graded(2), Graded(3)
    assert f_entry(a, b, 1, 2, N) == USeries.one(N)
    assert f_entry(a, b, 1, 3, N) == USeries.monomial(6, 2, N)
    assert f_entry(a, b, 2, 3, N) == USeries.monomial(9, 2, N)
    assert f_entry(a, b, 3, 1, N) == -f_entry(a, b, 1, 3, N)
    F = f_matrix(0, 1, 4, N)
    one, zero = USeries.one(N), USeries.zero(N)
    assert F[0] == [zero, one, zero, zero]
    assert F[1] == [-one, zero, one, zero]


def test_f_identities():
    res = f_matrix_family(order=N, size=10)
    assert all(c.ok for c in res), [c.name for c in res if not c.ok]


def test_minor_inverse_bounds():
    res = minor_inverse_family(order=N, m_max=3)
    assert all(c.ok for c in res), [c.name for c in res if not c.ok]


@pytest.mark.parametrize("make", [
    lambda p, n: gram_U(p, ParameterSet(q=(1,)), n, N),
    lambda p, n: gram_O(p, "1/2", n, N),
    lambda p, n: gram_S(p, "1/3", n, N),
    lambda p, n: gram_u(p, "1/2", n, N)])
def test_gram_inverse_sections(make):
    # entries of M decay away from the diagonal, so the top-left block of a
    # product of large sections is exact
    p = ParameterSet(q=(1, "1/2"), r=("1/3",))
    size = 6
    big = size + section_margin(N)
    M, Mi = make(p, big)
    P = principal_minor(matmul(M, Mi), size)
    one, zero = USeries.one(N), USeries.zero(N)
    assert all(P[i][j] == (one if i == j else zero) for i in range(size) for j in range(size))


def test_toeplitz_of_symbol():
    p = ParameterSet(q=(1,))
    T = toeplitz(e_symbol(p, N), 3)
    u = USeries.monomial(1, 1, N)
    one, zero = USeries.one(N), USeries.zero(N)
    assert T == [[one, u, zero], [zero, one, u], [zero, zero, one]]


def test_probe_bounds():
    assert probe_bounds("U", 2, 1, 1) == (4, 4)
    first, second = probe_bounds("OS", 2, 1, 1)
    assert first == 7 and second == float("inf")
    with pytest.raises(ValueError):
        probe_bounds("X", 1, 1, 1)


def test_singular_section():
    one = USeries.one(N)
    zero = USeries.zero(N)
    M = [[zero, zero], [zero, one]]
    with pytest.raises(SingularSection):
        minor_inverse_probe(M, M, 2, N, "U")
