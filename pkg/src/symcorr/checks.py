"""Class registry and the verification suites shared by the CLI and the tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from . import finite, fredholm, kernels, oracle, toeplitz
from .exact import ParameterSet, USeries, e_sequence, rational
from .linalg import identity, matmul, principal_minor, transpose
from .partitions import FROB_MINUS, FROB_PLUS

CLASSES = ("U", "UU", "O", "O-mixed", "S", "S-mixed", "u",
           "frob-minus", "frob-plus", "frob-half", "rot")
SPLIT = {"O", "S", "u"}
DOUBLED = {"frob-half", "rot"}


class UsageError(ValueError):
    pass


@dataclass
class Setup:
    tag: str
    kernel: object
    measure: object

    @property
    def split(self) -> bool:
        return self.tag in SPLIT

    @property
    def doubled(self) -> bool:
        return self.tag in DOUBLED


def build(tag: str, p: ParameterSet, order: int, p2: ParameterSet | None = None,
          alpha=0, beta=0) -> Setup:
    """Kernel and oracle measure for a class tag."""
    alpha, beta = rational(alpha), rational(beta)
    if tag in ("U", "UU"):
        p2 = p if p2 is None else p2
        if tag == "U":
            return Setup(tag, kernels.UKernel(p, p2, order), oracle.measure_U(p, p2, order))
        return Setup(tag, kernels.UUKernel(p, p2, order), oracle.measure_UU(p, p2, order))
    if tag == "O":
        return Setup(tag, kernels.OSplitKernel(p, alpha, order), oracle.measure_O(p, alpha, order))
    if tag == "O-mixed":
        return Setup(tag, kernels.OMixedKernel(p, alpha, order), oracle.measure_O(p, alpha, order))
    if tag == "S":
        return Setup(tag, kernels.SSplitKernel(p, beta, order), oracle.measure_S(p, beta, order))
    if tag == "S-mixed":
        return Setup(tag, kernels.SMixedKernel(p, beta, order), oracle.measure_S(p, beta, order))
    if tag == "u":
        if beta != 0:
            raise UsageError("class u is only available at beta = 0")
        return Setup(tag, kernels.SmallUKernel(p, alpha, order), oracle.measure_u(p, alpha, order))
    if tag == "frob-minus":
        return Setup(tag, kernels.FrobMinusKernel(p, order),
                     oracle.measure_frob(FROB_MINUS, p, order))
    if tag == "frob-plus":
        return Setup(tag, kernels.FrobPlusKernel(p, order),
                     oracle.measure_frob(FROB_PLUS, p, order))
    if tag == "frob-half":
        return Setup(tag, kernels.frob_half_kernel(p, order),
                     oracle.measure_frob_half(e_sequence(p, order), order))
    if tag == "rot":
        return Setup(tag, kernels.rot_kernel(p, order), oracle.measure_rot(p, order))
    raise UsageError(f"unknown class {tag!r}")


def kernel_value(setup: Setup, S=(), S0=(), S1=()) -> USeries:
    if setup.split:
        return setup.kernel.correlation_split(S0, S1)
    return setup.kernel.correlation(S)


def oracle_value(setup: Setup, S=(), S0=(), S1=()) -> USeries:
    if setup.split:
        return oracle.correlation_oracle_split(setup.measure, S0, S1)
    return oracle.correlation_oracle(setup.measure, S)


# -- suites ----------------------------------------------------------------------


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def _subsets(pts, k_max):
    for k in range(k_max + 1):
        yield from combinations(pts, k)


def default_points(setup: Setup, lo: int = -3, hi: int = 3) -> list:
    if setup.doubled:
        return [2 * a + 1 for a in range(lo, hi)]
    return list(range(lo, hi + 1))


def kernel_oracle_suite(setup: Setup, sets_up_to: int = 2, lo: int = -3, hi: int = 3) -> list:
    """Kernel correlation vs oracle for all sets of size <= sets_up_to."""
    pts = default_points(setup, lo, hi)
    out = []
    if setup.split:
        for k0 in range(sets_up_to + 1):
            for S0 in combinations(pts, k0):
                for S1 in _subsets(pts, sets_up_to - k0):
                    a, b = kernel_value(setup, S0=S0, S1=S1), oracle_value(setup, S0=S0, S1=S1)
                    out.append(Check(f"S0={list(S0)} S1={list(S1)}", a == b, str(a - b)))
        return out
    for S in _subsets(pts, sets_up_to):
        a, b = kernel_value(setup, S), oracle_value(setup, S)
        out.append(Check(f"S={list(S)}", a == b, str(a - b)))
    return out


FINITE_VARIANTS = ("pf", "pf2", "pf-self", "det", "det2")


def finite_model_suite(seed: int = 0, n_models: int = 60, max_points: int = 5) -> list:
    """Seeded random finite models: brute-force vs closed correlations on every subset.

    One check per model, covering every subset (including sets larger than a
    configuration, which must give 0) and the de Bruijn normalization.
    """
    rng = random.Random(seed)
    out = []
    for i in range(n_models):
        variant = FINITE_VARIANTS[i % len(FINITE_VARIANTS)]
        m = rng.randint(1, 2)
        # fewer points than a configuration needs can never give an invertible gram
        need = 2 * m if variant == "pf" else m
        n = rng.randint(need, max_points)
        try:
            model = finite.random_model(variant, rng, n, m, n_y=rng.randint(m, max_points))
        except finite.SingularGram:
            out.append(Check(f"model {i} ({variant})", False, "no invertible draw"))
            continue
        ok = finite.debruijn_constant(model) == finite.gram_normalizer(model)
        K = finite.closed_kernel(model)
        if model.two_space:
            pairs = [(S0, S1) for S0 in _subsets(model.points, n)
                     for S1 in _subsets(model.y_points, len(model.y_points))]
        else:
            pairs = [(S, None) for S in _subsets(model.points, n)]
        for S0, S1 in pairs:
            direct = finite.correlation_direct(model, S0, S1)
            if direct != finite.correlation_closed(model, S0, S1, kernel=K):
                ok = False
            if max(len(S0), len(S1 or ())) > model.config_size and direct != 0:
                ok = False
        out.append(Check(f"model {i} ({variant}, |X|={n}, m={m})", ok))
    return out


# -- identity families ---------------------------------------------------------------


def _eq(A, B, rows=None):
    r = len(A) if rows is None else rows
    return all(A[i][j] == B[i][j] for i in range(r) for j in range(r))


def f_matrix_family(order: int = 10, size: int = 12) -> list:
    """F(a,b) = F(-a,-b), F(a,b) (-F(-b,a)) = I, and the Toeplitz factorizations."""
    T = toeplitz
    a, b = T.Graded("1/2"), T.Graded("1/3")
    out = []
    for al, be in ((a, b), (a, 1), (1, b), (0, 1), (a, 0)):
        out.append(Check(f"F({al},{be}) = F(-,-)", _eq(T.f_matrix(al, be, size, order),
                                                      T.f_matrix(T.negate(al), T.negate(be),
                                                                 size, order))))
    big = size + T.section_margin(order)
    one = USeries.one(order)
    for al, be in ((a, b), (a, 1), (1, b)):
        P = matmul(T.f_matrix(al, be, big, order), T.f_matrix(T.negate(be), al, big, order))
        P = [[-x for x in row] for row in P]
        out.append(Check(f"F({al},{be}) inverse", _eq(principal_minor(P, size),
                                                      identity(size, one))))

    def fac(sym, mid, target):
        Tm = T.toeplitz(sym, big)
        R = matmul(matmul(Tm, T.f_matrix(*mid, big, order)), transpose(Tm))
        return _eq(principal_minor(R, size), T.f_matrix(*target, size, order))

    cases = [
        ("F(a,1) = T(1/(1-az)) F(0,1) T^t", T.geometric_symbol(a, order), (0, 1), (a, 1)),
        ("F(a,1) = T(1/(1-a/z)) F(0,1) T^t", T.geometric_symbol(a, order, reciprocal=True),
         (0, 1), (a, 1)),
        ("F(1,b) = T(1+bz) F(1,0) T^t", T.linear_symbol(b, order), (1, 0), (1, b)),
        ("F(1,b) = T(1+b/z) F(1,0) T^t", T.linear_symbol(b, order, reciprocal=True),
         (1, 0), (1, b)),
        ("F(1,0) = T(1/(1-z^2)) F(0,1) T^t", T.geometric_symbol(1, order, step=2),
         (0, 1), (1, 0)),
        ("F(1,0) = T(1/(1-z^-2)) F(0,1) T^t",
         T.geometric_symbol(1, order, reciprocal=True, step=2), (0, 1), (1, 0)),
    ]
    for name, sym, mid, target in cases:
        out.append(Check(name, fac(sym, mid, target)))
    return out


def minor_inverse_family(order: int = 10, m_max: int = 4, p: ParameterSet | None = None) -> list:
    T = toeplitz
    p = p or ParameterSet(q=(1, "1/2"), r=("1/3",))
    out = []
    for m in range(1, m_max + 1):
        M, Mi = T.gram_U(p, ParameterSet(q=(1,)), m, order)
        out.append(Check(f"U m={m}", T.probe_passes(T.minor_inverse_probe(M, Mi, m, order, "U"),
                                                    order) and not T.hypothesis_defects(M, "U")))
        M, Mi = T.gram_O(p, "1/2", 2 * m, order)
        out.append(Check(f"O m={m}", T.probe_passes(T.minor_inverse_probe(M, Mi, m, order, "OS"),
                                                    order) and not T.hypothesis_defects(M, "OS")))
        M, Mi = T.gram_S(p, "1/3", 2 * m, order)
        # the hypotheses hold for the inverse side of the class S gram matrix
        out.append(Check(f"S m={m}", T.probe_passes(T.minor_inverse_probe(Mi, M, m, order, "OS"),
                                                    order) and not T.hypothesis_defects(Mi, "OS")))
        M, Mi = T.gram_u(p, "1/2", 2 * m, order)
        out.append(Check(f"u m={m}", T.probe_passes(T.minor_inverse_probe(M, Mi, m, order, "u"),
                                                    order) and not T.hypothesis_defects(M, "u")))
    return out


LITTLEWOOD_VARIABLES = ((1,), (1, "1/2"), (1, "1/2", "-2"), ("1/3", 2, 3))


def littlewood_family(order: int = 8) -> list:
    out = []
    for xs in LITTLEWOOD_VARIABLES:
        p = ParameterSet(q=xs)
        for v in ("minus", "plus", "zero-signed"):
            ok = (oracle.littlewood_shape_sum(v, p, order)
                  == oracle.littlewood_product(v, xs, order))
            out.append(Check(f"{v} x={list(map(str, xs))}", ok))
    return out


def pfaffian_properties_family(order: int = 6, seed: int = 0) -> list:
    return [Check(f"{r.name} window {i // 3}", r.ok)
            for i, r in enumerate(fredholm.pf_identity_suite(order, seed))]


def disccont_family(order: int = 8, p: ParameterSet | None = None,
                    ns=(0, 1, 2), ss=(0, "1/2")) -> list:
    p = p or ParameterSet(q=(1,))
    K = kernels.UKernel(p, p, order)
    block = fredholm.ScalarAsBlock(K)
    out = []
    for n in ns:
        for s in ss:
            r = fredholm.disccont_check(block, n, s)
            out.append(Check(f"pfaffian n={n} s={s}", r.ok))
            rs = fredholm.disccont_scalar_check(K, n, s)
            out.append(Check(f"scalar n={n} s={s}", rs.ok))
    return out


FAMILIES = {
    "f-matrix": lambda order, seed: f_matrix_family(order),
    "minor-inverse": lambda order, seed: minor_inverse_family(order),
    "littlewood-products": lambda order, seed: littlewood_family(order),
    "pfaffian-properties": lambda order, seed: pfaffian_properties_family(order, seed),
    "disccont": lambda order, seed: disccont_family(order),
}
