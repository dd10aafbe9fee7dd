from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from symcorr.exact import (ESequence, Gauss, I, InvertNonUnit, ParameterSet, USeries,
                           conjugate_params, e_sequence, graded_power, rational)

N = 6
small = st.fractions(min_value=-4, max_value=4, max_denominator=5)
gauss = st.builds(Gauss, small, small)
series = st.lists(small, min_size=N + 1, max_size=N + 1).map(lambda c: USeries(c, N))
gseries = st.lists(gauss, min_size=N + 1, max_size=N + 1).map(lambda c: USeries(c, N))
units = series.filter(lambda s: s.is_unit())


def test_rational_rejects_floats_and_decimals():
    assert rational("3/6") == rational(Fraction(1, 2))
    with pytest.raises(ValueError):
        rational("0.5")
    with pytest.raises(TypeError):
        rational(0.5)
    with pytest.raises(TypeError):
        rational(True)


@given(gseries, gseries, gseries)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == USeries.zero(N)


@given(units)
def test_unit_inverse(a):
    assert a * a.inverse() == USeries.one(N)
    assert a / a == USeries.one(N)


def test_inverse_of_non_unit_raises():
    with pytest.raises(InvertNonUnit):
        USeries([0, 1], N).inverse()


def test_geometric_series_inverse():
    # 1/(1-u) = 1 + u + u^2 + ...
    assert USeries([1, -1], N).inverse() == USeries([1] * (N + 1), N)


@given(series)
def test_shift_and_raise_order_roundtrip(a):
    b = a.raise_order(2)
    assert b.order == N + 2
    assert b.shift(-2) == a
    assert a.shift(1).valuation() >= 1


def test_valuation_of_zero_is_order_plus_one():
    assert USeries.zero(N).valuation() == N + 1
    assert USeries.monomial(3, 2, N).valuation() == 2


def test_graded_power_convention():
    assert graded_power(0, 0, N) == USeries.one(N)
    assert graded_power(0, 2, N) == USeries.zero(N)
    assert graded_power("1/2", 3, N) == USeries.monomial(rational("1/8"), 3, N)
    assert graded_power(1, N + 1, N).is_zero()


def test_gauss_arithmetic():
    assert I * I == Gauss(-1, 0)
    z = Gauss(3, 4)
    assert z * z.inverse() == Gauss(1, 0)
    assert z.norm() == 25
    assert (1 + I) ** 2 == Gauss(0, 2)


@given(gseries)
def test_json_roundtrip(a):
    assert USeries.from_json(a.to_json()) == a


def test_str():
    assert str(USeries([1, 0, -1], 4)) == "1 - u^2"
    assert str(USeries.zero(3)) == "0"


def test_e_sequence_products():
    # (1 + z)(1 + z/2) / (1 - z/3)
    p = ParameterSet(q=(1, "1/2"), r=("1/3",))
    seq = e_sequence(p, 3)
    a = [rational(1), rational("3/2"), rational("1/2")]
    expect = []
    for k in range(4):
        expect.append(sum((a[j] * rational("1/3") ** (k - j) for j in range(min(k, 2) + 1)),
                          rational(0)))
    assert list(seq.coeffs) == expect


def test_e_sequence_exponential():
    seq = e_sequence(ParameterSet(gamma=2), 4)
    assert list(seq.coeffs) == [1, 2, 2, rational("4/3"), rational("2/3")]


@given(st.lists(small, min_size=0, max_size=3), st.lists(small, min_size=0, max_size=2))
def test_e_inverse(qs, rs):
    seq = e_sequence(ParameterSet(q=qs, r=rs), N)
    prod = seq.convolve(seq.inverse())
    assert list(prod.coeffs) == [1] + [0] * N


def test_conjugate_params_swaps_roles():
    p = ParameterSet(q=(1,), r=("1/2",))
    c = conjugate_params(p)
    assert c.q == p.r and c.r == p.q
    # E(z; p') is the reciprocal of E(-z; p)
    s, t = e_sequence(p, N), e_sequence(c, N)
    neg = ESequence(tuple(x * (-1) ** k for k, x in enumerate(s.coeffs)))
    assert list(t.convolve(neg).coeffs) == [1] + [0] * N


def test_parameter_json_roundtrip_and_unknown_keys():
    p = ParameterSet(q=("1/3", 2), r=(1,), gamma="1/2")
    assert ParameterSet.from_json(p.to_json()) == p
    with pytest.raises(ValueError):
        ParameterSet.from_json({"x": [1]})


def test_substitute():
    seq = e_sequence(ParameterSet(q=(1,)), 4).substitute(-1, 2)
    assert list(seq.coeffs) == [1, 0, -1, 0, 0]
