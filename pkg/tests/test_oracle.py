import pytest

from symcorr.checks import CLASSES, build
from symcorr.exact import ParameterSet, USeries, e_sequence, rational
from symcorr.oracle import (HalvedRowsMeasure, OverlappingSets, correlation_oracle,
                            generating_functional_oracle, inclusion_exclusion, kappa_O, kappa_S,
                            littlewood_product, littlewood_shape_sum, measure_U, measure_UU,
                            o_exponent, reconstruct_halved_weight, reconstruct_pair_weight,
                            restricted_sum, row_cdf_oracle, superset_disjoint_oracle)
from symcorr.partitions import dual_jacobi_trudi, enumerate_partitions, odd_parts

N = 8


def cauchy_product(p, p2, order):
    """Sum of u^{2|lam|} s_{lam'}(p) s_{lam'}(p2) by the Cauchy identities."""
    u2 = USeries.monomial(1, 2, order)
    one = USeries.one(order)
    acc = one
    for x in p.q:
        for y in p2.q:
            acc = acc / (one - u2.scale(x * y))
        for y in p2.r:
            acc = acc * (one + u2.scale(x * y))
    for x in p.r:
        for y in p2.r:
            acc = acc / (one - u2.scale(x * y))
        for y in p2.q:
            acc = acc * (one + u2.scale(x * y))
    return acc


@pytest.mark.parametrize("p2", [ParameterSet(q=(1,)), ParameterSet(q=("1/3",), r=(2,))])
def test_normalization_is_the_cauchy_product(params, p2):
    assert measure_U(params, p2, N).Z == cauchy_product(params, p2, N)


def test_anchor_value():
    p = ParameterSet(q=(1,))
    m = measure_U(p, p, N)
    assert correlation_oracle(m, [0]) == USeries.monomial(1, 2, N)
    assert row_cdf_oracle(m, 0) == USeries([1, 0, -1], N)


@pytest.mark.parametrize("tag", CLASSES)
def test_empty_set_has_probability_one(tag):
    s = build(tag, ParameterSet(q=(1, "1/2")), 6, alpha="1/2")
    if s.split:
        from symcorr.oracle import correlation_oracle_split
        assert correlation_oracle_split(s.measure, [], []) == USeries.one(6)
    else:
        assert correlation_oracle(s.measure, []) == USeries.one(6)


def test_inclusion_exclusion_and_functional(params):
    m = measure_UU(params, params, N)
    for a in range(-2, 3):
        for b in range(-2, 3):
            if a == b:
                continue
            assert superset_disjoint_oracle(m, [a], [b]) == inclusion_exclusion(m, [a], [b])
        f = {a: -1}
        assert generating_functional_oracle(m, f) == USeries.one(N) - correlation_oracle(m, [a])
    with pytest.raises(OverlappingSets):
        superset_disjoint_oracle(m, [0], [0])


def test_row_cdf():
    p = ParameterSet(q=(1, "1/2"))
    m = measure_U(p, p, N)
    assert row_cdf_oracle(m, N) == USeries.one(N)
    assert row_cdf_oracle(m, 0) * m.Z == USeries.one(N)
    total = restricted_sum(m, lambda lam: True)
    assert total == m.Z


def test_o_exponent_conventions():
    # (2, 1): conjugate (2, 1), one odd column and one even column
    assert o_exponent((2, 1)) == 1 and o_exponent((2, 1), "even") == 1
    assert o_exponent((1, 1)) == 0 and o_exponent((1, 1), "even") == 1
    for lam in enumerate_partitions(N):
        assert o_exponent(lam) == sum(lam[i] - (lam[i + 1] if i + 1 < len(lam) else 0)
                                      for i in range(0, len(lam), 2))


SEQ = e_sequence(ParameterSet(q=(1, "1/2"), r=("1/3",)), N)


@pytest.mark.parametrize("alpha", ["1/2", 2])
def test_pair_reconstruction_class_O(alpha):
    a = rational(alpha)
    for lam in enumerate_partitions(N):
        assert reconstruct_pair_weight(lam, SEQ, kappa_O(a)) == \
            dual_jacobi_trudi(lam, SEQ) * a ** o_exponent(lam)


@pytest.mark.parametrize("beta", [0, "1/3", 2])
def test_pair_reconstruction_class_S(beta):
    b = rational(beta)
    for lam in enumerate_partitions(N):
        k = odd_parts(lam)
        assert reconstruct_pair_weight(lam, SEQ, kappa_S(b)) == \
            dual_jacobi_trudi(lam, SEQ) * (b ** k if k else 1)


def test_even_column_exponent_does_not_reconstruct():
    a = rational("1/2")
    bad = [lam for lam in enumerate_partitions(N)
           if reconstruct_pair_weight(lam, SEQ, kappa_O(a))
           != dual_jacobi_trudi(lam, SEQ) * a ** o_exponent(lam, "even")]
    assert bad


@pytest.mark.parametrize("alpha", [0, "1/2", 3])
def test_halved_reconstruction(alpha):
    a = rational(alpha)
    for rho in enumerate_partitions(N):
        mu, nu = HalvedRowsMeasure.halves(rho)
        k = sum(nu) - sum(mu)
        expect = dual_jacobi_trudi(mu, SEQ) * dual_jacobi_trudi(nu, SEQ) * (a ** k if k else 1)
        assert reconstruct_halved_weight(rho, SEQ, a) == expect


@pytest.mark.parametrize("xs", [(1,), (1, "1/2"), (1, "1/2", -2), ("1/3", 2, 3)])
@pytest.mark.parametrize("variant", ["minus", "plus", "zero-signed"])
def test_littlewood_products(variant, xs):
    p = ParameterSet(q=xs)
    assert littlewood_shape_sum(variant, p, N) == littlewood_product(variant, xs, N)
