import random
from itertools import combinations

import pytest

from symcorr.checks import finite_model_suite
from symcorr.exact import rational
from symcorr.finite import (VARIANTS, FiniteModel, SingularGram, closed_kernel,
                            correlation_closed, correlation_direct, debruijn_constant,
                            gauge_kernel, gram_normalizer, random_model, random_sl2,
                            self_paired_as_two_space, union_model)
from symcorr.linalg import block_restrict, pfaffian


def subsets(pts):
    for k in range(len(pts) + 1):
        yield from combinations(pts, k)


def test_random_model_suite():
    res = finite_model_suite(seed=11, n_models=30)
    assert all(c.ok for c in res), [c.name for c in res if not c.ok]


@pytest.mark.parametrize("variant", VARIANTS)
def test_every_variant(variant):
    rng = random.Random(variant)
    for _ in range(4):
        model = random_model(variant, rng, n_points=4, m=1)
        K = closed_kernel(model)
        assert debruijn_constant(model) == gram_normalizer(model)
        ys = model.y_points if model.two_space else ()
        for S in subsets(model.points):
            for S1 in (subsets(ys) if model.two_space else [None]):
                assert correlation_direct(model, S, S1) == correlation_closed(model, S, S1, K)


def test_two_point_pfaffian_model():
    # two functions on two points: the only configuration is {1, 2}
    model = FiniteModel("pf", (1, 2), (1, 1), ((1, 0), (0, 1)), (), ((0, 1), (-1, 0)))
    for S in ([], [1], [2], [1, 2]):
        assert correlation_direct(model, S) == 1
        assert correlation_closed(model, S) == 1


def test_one_function_determinantal_model():
    # m = 1: a single point x with probability w(x) phi(x) psi(x) / sum; the
    # correlation is the density with respect to the weights
    w, phi, psi = (1, 2, 1), (1, 2, -1), (3, 1, -2)
    model = FiniteModel("det", (0, 1, 2), w, (phi,), (psi,))
    total = sum(a * b * c for a, b, c in zip(w, phi, psi))
    for i in range(3):
        expect = rational(phi[i] * psi[i]) / total
        assert correlation_direct(model, [i]) == expect
        assert correlation_closed(model, [i]) == expect
    assert correlation_direct(model, [0, 1]) == 0
    assert correlation_closed(model, [0, 1]) == 0


def test_sets_larger_than_a_configuration_vanish():
    rng = random.Random(5)
    model = random_model("pf", rng, n_points=5, m=1)
    for S in combinations(model.points, 3):
        assert correlation_direct(model, S) == 0
        assert correlation_closed(model, S) == 0


def test_self_paired_model_as_two_space():
    rng = random.Random(2)
    for _ in range(3):
        model = random_model("pf-self", rng, n_points=4, m=1)
        two = self_paired_as_two_space(model)
        for S in subsets(model.points):
            assert correlation_direct(model, S) == correlation_direct(two, S, ())


def test_union_model_normalizer():
    rng = random.Random(4)
    for _ in range(3):
        m = random_model("pf2", rng, n_points=4, m=1, n_y=4)
        m = FiniteModel("pf2", m.points, m.weights, m.phi, m.phi, m.pairing, m.points, m.weights)
        assert gram_normalizer(union_model(m)) == gram_normalizer(m)


def test_gauge_invariance_of_pfaffians():
    rng = random.Random(9)
    model = random_model("pf", rng, n_points=4, m=2)
    K = closed_kernel(model)
    G = gauge_kernel(K, {x: random_sl2(rng) for x in model.points})
    for S in subsets(model.points):
        if S:
            assert pfaffian(block_restrict(G, S)) == pfaffian(block_restrict(K, S))


def test_singular_gram():
    model = FiniteModel("det", (0, 1), (1, 1), ((1, 0),), ((0, 1),))
    with pytest.raises(SingularGram):
        correlation_direct(model, [0])
