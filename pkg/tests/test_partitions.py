from itertools import product

import pytest
from hypothesis import given, strategies as st

from symcorr.exact import ParameterSet, e_sequence, rational
from symcorr.partitions import (FROB_MINUS, FROB_PLUS, FROB_ZERO, OTHER, balance_check,
                                conjugate, descent_membership, descent_window, dual_jacobi_trudi,
                                enumerate_partitions, even_parts, from_frobenius, frobenius,
                                frobenius_rank, in_shape_class, odd_parts, part, partitions_of,
                                schur_dual_weight, shape_class)

ALL = enumerate_partitions(10)
parts = st.sampled_from(ALL)


def test_partition_counts_match_the_recurrence():
    # Euler's pentagonal recurrence, computed independently
    p = [1]
    for n in range(1, 11):
        s, k = 0, 1
        while True:
            for g in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
                if g <= n:
                    s += (-1) ** (k + 1) * p[n - g]
            if k * (3 * k - 1) // 2 > n:
                break
            k += 1
        p.append(s)
    assert [len(partitions_of(n)) for n in range(11)] == p
    assert len(ALL) == sum(p)
    assert len(set(ALL)) == len(ALL)


@given(parts)
def test_conjugate_is_an_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert sum(conjugate(lam)) == sum(lam)
    assert part(lam, len(lam) + 1) == 0


@given(parts)
def test_frobenius_roundtrip(lam):
    assert from_frobenius(frobenius(lam)) == lam
    a, b = frobenius(lam)
    assert sum(a) + sum(b) + len(a) == sum(lam)
    assert frobenius(conjugate(lam)) == (b, a)


def test_shape_classes():
    for lam in ALL:
        selfconj = conjugate(lam) == lam
        assert in_shape_class(lam, FROB_ZERO) == selfconj
        assert in_shape_class(lam, FROB_MINUS) == in_shape_class(conjugate(lam), FROB_PLUS)
    assert shape_class(()) == (FROB_ZERO, 0)
    assert shape_class((2,)) == (FROB_PLUS, 1)
    assert shape_class((1, 1)) == (FROB_MINUS, 1)
    assert shape_class((3,)) == (OTHER, 1)
    assert frobenius_rank((3, 3, 2)) == 2


@given(parts)
def test_descent_set(lam):
    n = len(lam)
    T = [lam[i] - i - 1 for i in range(n)]
    assert descent_window(lam, -n - 3, 12) == frozenset(
        T + list(range(-n - 3, -n)))
    for a in range(-n - 3, 12):
        assert descent_membership(lam, a) == (a in T or a < -n)
    nonneg, missing = balance_check(lam)
    assert nonneg == missing


@given(parts)
def test_part_counts(lam):
    assert odd_parts(lam) + even_parts(lam) == len(lam)


def _ssyt_sum(shape, xs):
    """Sum over semistandard tableaux of the given shape of prod x_entry."""
    cells = [(i, j) for i, r in enumerate(shape) for j in range(r)]
    total = rational(0)
    for fill in product(range(len(xs)), repeat=len(cells)):
        T = dict(zip(cells, fill))
        if any(j and T[(i, j)] < T[(i, j - 1)] for i, j in cells):
            continue
        if any(i and T[(i, j)] <= T[(i - 1, j)] for i, j in cells):
            continue
        w = rational(1)
        for v in fill:
            w *= xs[v]
        total += w
    return total


@pytest.mark.parametrize("xs", [(1, 2), (rational("1/2"), 3, -1)])
def test_dual_jacobi_trudi_against_tableaux(xs):
    seq = e_sequence(ParameterSet(q=xs), 8)
    for lam in enumerate_partitions(5):
        assert dual_jacobi_trudi(lam, seq) == _ssyt_sum(conjugate(lam), xs)


def test_schur_dual_weight_grading():
    p = ParameterSet(q=(1, 2))
    w = schur_dual_weight((2, 1), p, 5)
    assert w.valuation() == 3
    assert schur_dual_weight((4, 2), p, 5).is_zero()
