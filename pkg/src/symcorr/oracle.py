"""Brute-force partition measures and their correlation functions.

A measure is a finite list of (state, weight) pairs, every weight a u-graded
series of order N.  States with |state| > N only contribute above u^N, so
enumerating partitions of weight <= N is exact after truncation.
Probabilities are ratios with the normalization Z, whose constant term is
the weight of the empty partition, namely 1.
"""

from __future__ import annotations

from itertools import combinations

from .exact import ESequence, USeries, e_sequence, graded_power, rational
from .linalg import determinant
from .partitions import (FROB_MINUS, FROB_PLUS, FROB_ZERO, conjugate, descent_membership,
                         dual_jacobi_trudi, enumerate_partitions, frobenius_rank,
                         in_shape_class, odd_parts, part, schur_dual_weight)


class UnsupportedClass(ValueError):
    pass


class OverlappingSets(ValueError):
    pass


def _seq(p, order):
    return p if isinstance(p, ESequence) else e_sequence(p, order)


def substituted(p, order: int, c, step: int) -> ESequence:
    return _seq(p, order).substitute(c, step)


# -- membership predicates ---------------------------------------------------


def in_rows(lam, a: int, parity: int) -> bool:
    """a in {lam_i - i : i = parity mod 2}; parity 0 even rows, 1 odd rows."""
    i = 2 if parity == 0 else 1
    while True:
        x = part(lam, i) - i
        if x == a:
            return True
        if i > len(lam) and x < a:
            return False
        i += 2


class Measure:
    """Weighted states plus a point-configuration map."""

    tag = "Custom"
    split = False

    def __init__(self, order: int):
        self.order = order
        self._states = None
        self._Z = None

    def states(self) -> list:
        if self._states is None:
            self._states = [(s, w) for s, w in self._enumerate() if not w.is_zero()]
        return self._states

    def _enumerate(self):
        raise NotImplementedError

    @property
    def Z(self) -> USeries:
        if self._Z is None:
            acc = USeries.zero(self.order)
            for _, w in self.states():
                acc = acc + w
            self._Z = acc
        return self._Z

    def contains(self, state, a) -> bool:
        raise NotImplementedError

    def contains_split(self, state, a, tag) -> bool:
        raise UnsupportedClass(f"{self.tag} has a single family of points")

    def first_row(self, state) -> int:
        return state[0] if state else 0

    def expectation(self, pred) -> USeries:
        acc = USeries.zero(self.order)
        for s, w in self.states():
            if pred(s):
                acc = acc + w
        return acc / self.Z

    def weighted(self, fn) -> USeries:
        acc = USeries.zero(self.order)
        for s, w in self.states():
            c = fn(s)
            if c:
                acc = acc + w.scale(c) if not isinstance(c, USeries) else acc + w * c
        return acc / self.Z


class PartitionMeasure(Measure):
    """All partitions (or a shape class) with T = {lam_i - i + shift}.

    ``shift2`` is twice the shift so half-integer configurations stay integral;
    points are then doubled too.
    """

    def __init__(self, order: int, weight_fn, tag: str, shape=None, shift2: int = 0,
                 split: bool = False):
        super().__init__(order)
        self.weight_fn = weight_fn
        self.tag = tag
        self.shape = shape
        self.shift2 = shift2
        self.split = split

    def _enumerate(self):
        for lam in enumerate_partitions(self.order):
            if self.shape is not None and not in_shape_class(lam, self.shape):
                continue
            yield lam, self.weight_fn(lam)

    def contains(self, lam, a) -> bool:
        if self.shift2 % 2:
            if a % 2 == 0:
                raise ValueError("half-integer points are doubled odd integers")
            return descent_membership(lam, (a - self.shift2) // 2)
        return descent_membership(lam, a - self.shift2 // 2)

    def contains_split(self, lam, a, tag) -> bool:
        if not self.split:
            return super().contains_split(lam, a, tag)
        return in_rows(lam, a, 0 if tag == 0 else 1)


# -- class weights -----------------------------------------------------------


def weight_u_pair(lam, seq_plus, seq_minus, order, scale=1) -> USeries:
    w = sum(lam)
    if scale * 2 * w > order:
        return USeries.zero(order)
    c = dual_jacobi_trudi(lam, seq_plus) * dual_jacobi_trudi(lam, seq_minus)
    return USeries.monomial(c, 2 * w, order)


def measure_U(p_plus, p_minus, order: int) -> PartitionMeasure:
    """s_{lam'}(p+) s_{lam'}(p-) u^{2|lam|}."""
    a, b = _seq(p_plus, order), _seq(p_minus, order)
    return PartitionMeasure(order, lambda lam: weight_u_pair(lam, a, b, order), "U")


def measure_UU(p_plus, p_minus, order: int) -> PartitionMeasure:
    """Class U for the substituted sequences E(-z^2; p+-)."""
    a = substituted(p_plus, order, -1, 2)
    b = substituted(p_minus, order, -1, 2)
    return PartitionMeasure(order, lambda lam: weight_u_pair(lam, a, b, order), "UU")


def o_exponent(lam, convention: str = "odd") -> int:
    """Power of alpha in the first involution class.

    ``odd``: columns of odd length (sum of lam_{2i-1} - lam_{2i});
    ``even``: columns of even length.
    """
    conj = conjugate(lam)
    if convention == "odd":
        return sum(1 for c in conj if c % 2)
    if convention == "even":
        return sum(1 for c in conj if c % 2 == 0)
    raise ValueError(convention)


def measure_O(p, alpha, order: int, convention: str = "odd",
              graded: bool = True) -> PartitionMeasure:
    """alpha^{f} s_{lam'}(p), T = {lam_i - i} split by row parity.

    alpha carries one power of u unless ``graded`` is false.
    """
    seq, al = _seq(p, order), rational(alpha)

    def w(lam):
        k = o_exponent(lam, convention)
        s = schur_dual_weight(lam, seq, order)
        if not graded:
            return s.scale(al ** k if k else 1)
        return s * graded_power(al, k, order)
    return PartitionMeasure(order, w, "O", split=True)


def measure_S(p, beta, order: int) -> PartitionMeasure:
    """beta^{odd parts of lam} s_{lam'}(p), beta graded."""
    seq, be = _seq(p, order), rational(beta)

    def w(lam):
        return schur_dual_weight(lam, seq, order) * graded_power(be, odd_parts(lam), order)
    return PartitionMeasure(order, w, "S", split=True)


class HalvedRowsMeasure(Measure):
    """Class u at beta = 0.

    States are interleaved pairs rho = (nu_1, mu_1, nu_2, mu_2, ...), a
    partition whose odd rows nu and even rows mu are the halved rows of the
    underlying shape.  Weight s_{mu'}(p) s_{nu'}(p) alpha^{|nu|-|mu|}, of
    u-degree 2|nu|.  Points: tag 0 in {mu_j - j}, tag 1 in {nu_j - j}.
    """

    tag = "u-class"
    split = True

    def __init__(self, p, alpha, order: int):
        super().__init__(order)
        self.seq = _seq(p, order)
        self.alpha = rational(alpha)

    @staticmethod
    def halves(rho):
        nu = tuple(x for x in rho[0::2] if x)
        mu = tuple(x for x in rho[1::2] if x)
        return mu, nu

    def _enumerate(self):
        N = self.order
        for rho in enumerate_partitions(N):
            mu, nu = self.halves(rho)
            if 2 * sum(nu) > N:
                continue
            c = dual_jacobi_trudi(mu, self.seq) * dual_jacobi_trudi(nu, self.seq)
            w = USeries.monomial(c, sum(mu) + sum(nu), N)
            yield rho, w * graded_power(self.alpha, sum(nu) - sum(mu), N)

    def contains_split(self, rho, a, tag) -> bool:
        mu, nu = self.halves(rho)
        return descent_membership(mu if tag == 0 else nu, a)

    def contains(self, rho, a) -> bool:
        raise UnsupportedClass("class u has two families of points")


def measure_u(p, alpha, order: int) -> HalvedRowsMeasure:
    return HalvedRowsMeasure(p, alpha, order)


def measure_frob(kind: str, p, order: int) -> PartitionMeasure:
    """s_{lam'}(p) u^{|lam|} on a Frobenius shape class, T = {lam_i - i + 1}."""
    if kind not in (FROB_MINUS, FROB_PLUS):
        raise UnsupportedClass(kind)
    seq = _seq(p, order)
    return PartitionMeasure(order, lambda lam: schur_dual_weight(lam, seq, order), kind,
                            shape=kind, shift2=2)


def half_sign(lam, convention: str = "minus") -> int:
    """(-1)^{(|lam| - p)/2} ("minus") or (-1)^{(|lam| + p)/2} ("plus")."""
    n, d = sum(lam), frobenius_rank(lam)
    k = (n - d) // 2 if convention == "minus" else (n + d) // 2
    return -1 if k % 2 else 1


def measure_frob_half(seq, order: int, convention: str = "minus") -> PartitionMeasure:
    """Signed symmetric-shape measure, T = {lam_i - i + 1/2} (doubled)."""
    seq = _seq(seq, order)

    def w(lam):
        return schur_dual_weight(lam, seq, order).scale(half_sign(lam, convention))
    return PartitionMeasure(order, w, FROB_ZERO, shape=FROB_ZERO, shift2=1)


def measure_rot(p, order: int, convention: str = "minus") -> PartitionMeasure:
    m = measure_frob_half(substituted(p, order, _I(), 2), order, convention)
    m.tag = "Rot"
    return m


def _I():
    from .exact import I
    return I


# -- oracle queries ------------------------------------------------------------


def correlation_oracle(measure: Measure, S) -> USeries:
    S = list(S)
    return measure.expectation(lambda s: all(measure.contains(s, a) for a in S))


def correlation_oracle_split(measure: Measure, S0, S1) -> USeries:
    S0, S1 = list(S0), list(S1)
    return measure.expectation(
        lambda s: all(measure.contains_split(s, a, 0) for a in S0)
        and all(measure.contains_split(s, b, 1) for b in S1))


def superset_disjoint_oracle(measure: Measure, S_plus, S_minus) -> USeries:
    Sp, Sm = list(S_plus), list(S_minus)
    if set(Sp) & set(Sm):
        raise OverlappingSets("S+ and S- must be disjoint")
    return measure.expectation(
        lambda s: all(measure.contains(s, a) for a in Sp)
        and not any(measure.contains(s, a) for a in Sm))


def inclusion_exclusion(measure: Measure, S_plus, S_minus) -> USeries:
    """sum_{S0 in S-} (-1)^{|S0|} Pr(S+ u S0 in T)."""
    Sp, Sm = list(S_plus), list(S_minus)
    acc = USeries.zero(measure.order)
    for k in range(len(Sm) + 1):
        for S0 in combinations(Sm, k):
            term = correlation_oracle(measure, Sp + list(S0))
            acc = acc + term if k % 2 == 0 else acc - term
    return acc


def row_cdf_oracle(measure: Measure, l: int) -> USeries:
    """Pr(lambda_1 <= l)."""
    if l < 0:
        raise ValueError("l must be >= 0")
    return measure.expectation(lambda s: measure.first_row(s) <= l)


def restricted_sum(measure: Measure, pred) -> USeries:
    """Unnormalized sum of weights over states satisfying pred."""
    acc = USeries.zero(measure.order)
    for s, w in measure.states():
        if pred(s):
            acc = acc + w
    return acc


def generating_functional_oracle(measure: Measure, f: dict) -> USeries:
    """E prod_{x in T, x in supp f} (1 + f(x))."""
    f = {a: rational(v) for a, v in f.items() if rational(v) != 0}

    def factor(s):
        c = rational(1)
        for a, v in f.items():
            if measure.contains(s, a):
                c = c * (1 + v)
        return c
    return measure.weighted(factor)


def littlewood_shape_sum(variant: str, p, order: int, predicate=None) -> USeries:
    """Sum of u^{|lam|} s_{lam'}(p) over a Frobenius shape class.

    variant: ``minus`` (b-1|b), ``plus`` (b+1|b), ``zero`` (b|b) unsigned,
    ``zero-signed`` (b|b) with sign (-1)^{(|lam|-p)/2}.  ``predicate`` filters
    partitions (e.g. a condition on {lam_i - i + 1}).
    """
    kinds = {"minus": FROB_MINUS, "plus": FROB_PLUS, "zero": FROB_ZERO, "zero-signed": FROB_ZERO}
    if variant not in kinds:
        raise UnsupportedClass(variant)
    seq = _seq(p, order)
    acc = USeries.zero(order)
    for lam in enumerate_partitions(order):
        if not in_shape_class(lam, kinds[variant]):
            continue
        if predicate is not None and not predicate(lam):
            continue
        w = schur_dual_weight(lam, seq, order)
        if variant == "zero-signed":
            w = w.scale(half_sign(lam, "minus"))
        acc = acc + w
    return acc


def littlewood_product(variant: str, xs, order: int) -> USeries:
    """Product side of the Littlewood identities at x_j = c_j u."""
    one = USeries.one(order)
    xs = [USeries.monomial(rational(c), 1, order) for c in xs]
    acc = one
    n = len(xs)
    pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
    if variant == "plus":
        for j, k in pairs:
            acc = acc * (one + xs[j] * xs[k])
    elif variant == "minus":
        for x in xs:
            acc = acc * (one + x * x)
        for j, k in pairs:
            acc = acc * (one + xs[j] * xs[k])
    elif variant == "zero-signed":
        for x in xs:
            acc = acc * (one + x)
        for j, k in pairs:
            acc = acc * (one - xs[j] * xs[k])
    else:
        raise UnsupportedClass(variant)
    return acc


# -- reconstruction fixtures ---------------------------------------------------


def _pad(lam, length):
    return tuple(lam) + (0,) * (length - len(lam))


def _interleaved_det(seq, a, b):
    cols = [c for pair in zip(a, b) for c in pair]
    n = len(cols)
    M = [[seq[c + j] if c + j >= 0 else 0 for c in cols] for j in range(1, n + 1)]
    return determinant(M) if n else 1


def _pair_indices(lam, m):
    lam = _pad(lam, 2 * m)
    a = [lam[2 * m - 2 * k + 1] - (2 * m - 2 * k + 2) for k in range(1, m + 1)]
    b = [lam[2 * m - 2 * k] - (2 * m - 2 * k + 1) for k in range(1, m + 1)]
    return a, b


def reconstruct_pair_weight(lam, seq: ESequence, kappa, margin: int = 1):
    """(-1)^m det(e_{a_k+j}, e_{b_k+j}) det kappa(a_j, b_k), rows padded to 2m."""
    m = (len(lam) + 1) // 2 + margin
    a, b = _pair_indices(lam, m)
    K = [[kappa(aj, bk) for bk in b] for aj in a]
    d = _interleaved_det(seq, a, b) * determinant(K)
    return -d if m % 2 else d


def kappa_O(alpha):
    al = rational(alpha)
    return lambda a, b: al ** (b - a - 1) if b > a else 0


def kappa_S(beta):
    be = rational(beta)
    return lambda a, b: be ** (a % 2 + (b + 1) % 2) if b > a else 0


def reconstruct_halved_weight(rho, seq: ESequence, alpha, margin: int = 1):
    """det phi(x) det psi(y) det kappa(x_j, y_k), kappa = [y >= x] alpha^{y-x}."""
    mu, nu = HalvedRowsMeasure.halves(rho)
    m = max(len(mu), len(nu)) + margin
    mu, nu = _pad(mu, m), _pad(nu, m)
    x = [mu[k] - k - 1 for k in range(m)]
    y = [nu[k] - k - 1 for k in range(m)]
    al = rational(alpha)

    def jt(pts):
        M = [[seq[c + j] if c + j >= 0 else 0 for c in pts] for j in range(1, m + 1)]
        return determinant(M)
    K = [[al ** (yk - xj) if yk >= xj else 0 for yk in y] for xj in x]
    return jt(x) * jt(y) * determinant(K)
