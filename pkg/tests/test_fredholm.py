import random

import pytest
from hypothesis import given, strategies as st

from symcorr.checks import build
from symcorr.exact import ParameterSet, USeries, rational
from symcorr.fredholm import (ScalarAsBlock, Window, correls_functional, disccont_check,
                              disccont_scalar_check, exceptional_sizes, formal_group_integral,
                              fredholm_det, fredholm_pf, gap_probability, gap_window,
                              pf_identity_suite, subset_sum)
from symcorr.kernels import OMixedKernel, SMixedKernel, UKernel
from symcorr.oracle import (generating_functional_oracle, measure_O, measure_S, restricted_sum,
                            row_cdf_oracle)

N = 8
P = ParameterSet(q=(1, "1/2"), r=("1/3",))


class Table:
    """Scalar kernel from an explicit table."""

    block_size = 1

    def __init__(self, rows, order):
        self.rows, self.order = rows, order

    def __call__(self, a, b):
        return self.rows[a][b]


def random_table(seed, n, order=4):
    rng = random.Random(seed)
    return Table([[USeries([rng.randint(-2, 2) for _ in range(order + 1)], order)
                   for _ in range(n)] for _ in range(n)], order)


@given(st.integers(0, 1000), st.integers(1, 4))
def test_scalar_embedding(seed, n):
    K = random_table(seed, n)
    B = ScalarAsBlock(K)
    pts = list(range(n))
    assert fredholm_pf(B, pts) == fredholm_det(K, pts)
    assert fredholm_pf(B, pts, sign=-1) == fredholm_det(K, pts, sign=-1)
    assert subset_sum(B, pts) == subset_sum(K, pts) == fredholm_det(K, pts)


def test_fredholm_pf_is_the_subset_sum():
    K = OMixedKernel(P, "1/2", 5)
    pts = [-1, 0, 1, 2]
    assert fredholm_pf(K, pts) == subset_sum(K, pts)
    assert fredholm_pf(K, []) == USeries.one(5)


@pytest.mark.parametrize("seed", range(4))
def test_pfaffian_properties(seed):
    res = pf_identity_suite(5, seed)
    assert len(res) == 9
    assert all(r.ok for r in res)


@pytest.mark.parametrize("tag", ["U", "UU", "O-mixed", "S-mixed", "frob-minus", "frob-half"])
def test_correlation_functional(tag):
    s = build(tag, P, N, alpha="1/2", beta="1/3")
    pts = [1, -1, 3] if tag == "frob-half" else [-1, 0, 2]
    for f in ({pts[0]: 2}, {pts[0]: rational("-1/2"), pts[1]: 3},
              {pts[0]: -1, pts[1]: -1, pts[2]: rational("1/3")}):
        assert correls_functional(s.kernel, f) == generating_functional_oracle(s.measure, f)


@pytest.mark.parametrize("tag", ["U", "UU", "O-mixed", "S-mixed"])
def test_gap_probability(tag):
    s = build(tag, P, N, alpha="1/2", beta="1/3")
    for l in range(4):
        g = gap_probability(s.kernel, l)
        assert g == row_cdf_oracle(s.measure, l)
        assert g == gap_probability(s.kernel, l, margin=9)


def test_gap_window():
    assert gap_window(2, 8) == Window(2, 14)
    assert len(Window(3, 2)) == 0
    with pytest.raises(ValueError):
        Window(3, 1)


@pytest.mark.parametrize("n", [-2, 0, 1, 2, 3])
@pytest.mark.parametrize("s", [0, "1/2", 2])
def test_disccont_class_U(n, s):
    K = UKernel(P, P, 6)
    assert disccont_check(ScalarAsBlock(K), n, s).ok
    assert disccont_scalar_check(K, n, s).ok


@pytest.mark.parametrize("make", [lambda: OMixedKernel(P, "1/2", 6),
                                  lambda: SMixedKernel(P, "1/3", 6)])
@pytest.mark.parametrize("n", [-1, 2])
def test_disccont_pfaffian_kernels(make, n):
    assert disccont_check(make(), n, rational("1/3")).ok


def test_disccont_window_enlargement():
    K = ScalarAsBlock(UKernel(P, P, 6))
    a, b = disccont_check(K, 1, "1/2"), disccont_check(K, 1, "1/2", margin=8)
    assert a.lhs == b.lhs and a.plus_side == b.plus_side


def test_exceptional_sizes():
    assert exceptional_sizes(-3) == (3, 0)
    assert exceptional_sizes(2) == (0, 2)


@pytest.mark.parametrize("p", [ParameterSet(q=(1,)), P])
def test_group_integrals(p):
    KO, KS = OMixedKernel(p, 0, N), SMixedKernel(p, 0, N)
    mO, mS = measure_O(p, 0, N), measure_S(p, 0, N)
    for l in range(4):
        assert formal_group_integral(KO, l, 1) == restricted_sum(mO, lambda lam: mO.first_row(lam) <= l)
        assert formal_group_integral(KS, l, 2) == \
            restricted_sum(mS, lambda lam: mS.first_row(lam) <= 2 * l)
