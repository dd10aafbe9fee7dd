"""Fredholm pfaffians and determinants on finite windows.

For a 2x2-block antisymmetric kernel K and a finite set of points W,
pf(J + K)_W is the single pfaffian of the assembled matrix with J(a, b) =
delta_ab [[0, 1], [-1, 0]]; it equals the subset sum of pf(K(S)) over S in W.
Half-infinite sets are realized as windows large enough that enlarging them
changes nothing modulo u^{N+1}; ``margin`` controls the slack and the tests
check soundness by enlargement.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .exact import USeries, rational
from .linalg import (block_restrict, det_auto, identity, inverse_unit, madd, matmul,
                     pfaffian, pfaffian_auto, transpose)


@dataclass(frozen=True)
class Window:
    lo: int
    hi: int

    def __post_init__(self):
        if self.hi < self.lo - 1:
            raise ValueError("window with hi < lo - 1")

    @property
    def points(self) -> list:
        return list(range(self.lo, self.hi + 1))

    def __len__(self):
        return self.hi - self.lo + 1


def _points(W):
    return W.points if isinstance(W, Window) else list(W)


def j_matrix(n_points: int, one) -> list:
    zero = one * 0
    n = 2 * n_points
    out = [[zero] * n for _ in range(n)]
    for i in range(n_points):
        out[2 * i][2 * i + 1] = one
        out[2 * i + 1][2 * i] = -one
    return out


def _one(K):
    return USeries.one(K.order)


class ScalarAsBlock:
    """The antisymmetric block kernel [[0, K(a,b)], [-K(b,a), 0]] of a scalar kernel.

    pf of its restriction to S equals det K(S); pf(J + .) equals det(I + K).
    """

    block_size = 2

    def __init__(self, K, eps=None):
        self.K, self.eps = K, eps
        self.order = K.order

    def __call__(self, a, b):
        zero = USeries.zero(self.order)
        e = self.eps(a, b) if self.eps is not None else zero
        return [[e, self.K(a, b)], [-self.K(b, a), zero]]


def fredholm_pf(K, W, sign: int = 1) -> USeries:
    """pf(J + sign*K) over the points of W."""
    pts = _points(W)
    one = _one(K)
    if not pts:
        return one
    A = block_restrict(K, pts)
    J = j_matrix(len(pts), one)
    M = [[J[i][j] + (A[i][j] if sign > 0 else -A[i][j]) for j in range(len(A))]
         for i in range(len(A))]
    return pfaffian_auto(M, one, check=False)


def fredholm_det(K, W, sign: int = 1) -> USeries:
    """det(I + sign*K) over the points of W, scalar kernel."""
    pts = _points(W)
    one = _one(K)
    if not pts:
        return one
    A = block_restrict(K, pts)
    n = len(A)
    M = [[(one if i == j else one * 0) + (A[i][j] if sign > 0 else -A[i][j]) for j in range(n)]
         for i in range(n)]
    return det_auto(M, one)


def subset_sum(K, W) -> USeries:
    """Sum over S in W of pf(K(S)) (block) or det(K(S)) (scalar), by enumeration."""
    pts = _points(W)
    one = _one(K)
    acc = one * 0
    block = getattr(K, "block_size", 1) == 2
    for k in range(len(pts) + 1):
        for S in combinations(pts, k):
            if not S:
                acc = acc + one
                continue
            A = block_restrict(K, S)
            acc = acc + (pfaffian(A, one, check=False) if block else det_auto(A, one))
    return acc


def fredholm_auto(K, W, sign: int = 1) -> USeries:
    if getattr(K, "block_size", 1) == 2:
        return fredholm_pf(K, W, sign)
    return fredholm_det(K, W, sign)


# -- pfaffian identities ---------------------------------------------------------


@dataclass
class IdentityResult:
    name: str
    ok: bool
    defect: USeries = field(repr=False, default=None)


def _mat_neg(A):
    return [[-x for x in row] for row in A]


def pf_squared_identity(K, one) -> IdentityResult:
    """pf(J + K)^2 = det(I + J^{-1} K) for an antisymmetric matrix K of even size."""
    n = len(K)
    J = j_matrix(n // 2, one)
    lhs = pfaffian(madd(J, K), one) ** 2
    rhs = det_auto(madd(identity(n, one), matmul(_mat_neg(J), K)), one)
    return IdentityResult("pf-squared", lhs == rhs, lhs - rhs)


def pf_congruence_identity(K, K0, one) -> IdentityResult:
    """pf((I+K0)(J+K)(I+K0)^t) = det(I+K0) pf(J+K)."""
    n = len(K)
    J = j_matrix(n // 2, one)
    B = madd(identity(n, one), K0)
    lhs = pfaffian(matmul(matmul(B, madd(J, K)), transpose(B)), one)
    rhs = det_auto(B, one) * pfaffian(madd(J, K), one)
    return IdentityResult("pf-congruence", lhs == rhs, lhs - rhs)


def pf_conjugation_identity(MX, MY, A, one) -> IdentityResult:
    """pf(M_Y) pf(M_Y^{-t} + A M_X A^t) = pf(M_X) pf(M_X^{-t} + A^t M_Y A).

    A maps the X side to the Y side (|Y| x |X|); M_X, M_Y antisymmetric with
    unit pfaffian constant terms.
    """
    MYit = transpose(inverse_unit(MY, one))
    MXit = transpose(inverse_unit(MX, one))
    At = transpose(A)
    lhs = pfaffian(MY, one) * pfaffian(madd(MYit, matmul(matmul(A, MX), At)), one)
    rhs = pfaffian(MX, one) * pfaffian(madd(MXit, matmul(matmul(At, MY), A)), one)
    return IdentityResult("pf-conjugation", lhs == rhs, lhs - rhs)


def random_series(rng: random.Random, order: int, lo: int = 0, spread: int = 2) -> USeries:
    return USeries([rng.randint(-spread, spread) if k >= lo else 0 for k in range(order + 1)],
                   order)


def random_antisymmetric(rng, n: int, order: int, unit_pairs: bool = False) -> list:
    """Random antisymmetric series matrix; with unit_pairs the (2i, 2i+1) entries are units."""
    zero = USeries.zero(order)
    A = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = random_series(rng, order, lo=0 if unit_pairs and j == i + 1 and i % 2 == 0 else 1)
            if unit_pairs and j == i + 1 and i % 2 == 0:
                x = x + USeries.const(rng.choice((1, -1, 2)) - x.coeff(0), order)
            A[i][j], A[j][i] = x, -x
    return A


def random_square(rng, rows: int, cols: int, order: int, lo: int = 1) -> list:
    return [[random_series(rng, order, lo=lo) for _ in range(cols)] for _ in range(rows)]


def pf_identity_suite(order: int, seed: int = 0, windows=(4, 5, 6)) -> list:
    """Squared, congruence and conjugation identities on windows of ``windows`` points."""
    rng = random.Random(seed)
    one = USeries.one(order)
    out = []
    for n_pts in windows:
        n = 2 * n_pts
        K = random_antisymmetric(rng, n, order)
        K0 = random_square(rng, n, n, order)
        out.append(pf_squared_identity(K, one))
        out.append(pf_congruence_identity(K, K0, one))
        nx, ny = 2 * (n_pts // 2 + 1), 2 * max(1, n_pts // 2)
        MX = random_antisymmetric(rng, nx, order, unit_pairs=True)
        MY = random_antisymmetric(rng, ny, order, unit_pairs=True)
        A = random_square(rng, ny, nx, order, lo=0)
        out.append(pf_conjugation_identity(MX, MY, A, one))
    return out


# -- correlation functionals ------------------------------------------------------


class _Reweighted:
    """D K D with D = diag(f(a), 1) on each 2x2 block: pf scales by prod f."""

    block_size = 2

    def __init__(self, K, f):
        self.K, self.f, self.order = K, f, K.order

    def __call__(self, a, b):
        blk = self.K(a, b)
        fa, fb = self.f[a], self.f[b]
        return [[blk[0][0] * fa * fb, blk[0][1] * fa], [blk[1][0] * fb, blk[1][1]]]


class _RowScaled:
    block_size = 1

    def __init__(self, K, f):
        self.K, self.f, self.order = K, f, K.order

    def __call__(self, a, b):
        return self.K(a, b) * self.f[a]


def correls_functional(K, f: dict) -> USeries:
    """E prod_{x in T}(1 + f(x)) for finitely supported f.

    Block kernels: pf(J + K_f) on supp f, K_f the kernel of the reweighted
    measure (first coordinate of each block scaled by f), which carries
    pf(K_f(S)) = prod_S f pf(K(S)) without square roots.  Scalar kernels:
    det(I + f K) on supp f.
    """
    f = {a: rational(v) for a, v in f.items() if rational(v) != 0}
    pts = sorted(f)
    if getattr(K, "block_size", 1) == 2:
        return fredholm_pf(_Reweighted(K, f), pts)
    return fredholm_det(_RowScaled(K, f), pts)


def gap_window(l: int, order: int, margin: int = 4) -> Window:
    return Window(l, max(l, 0) + order + margin)


def gap_probability(K, l: int, order: int | None = None, margin: int = 4) -> USeries:
    """Pr(T misses [l, oo)) = Pr(lambda_1 <= l): pf(J - K) or det(I - K) on a window."""
    order = K.order if order is None else order
    return fredholm_auto(K, gap_window(l, order, margin), sign=-1)


def formal_group_integral(K, l: int, step: int = 1, margin: int = 4) -> USeries:
    """pf(J - K)_{[step*l, oo)} / pf(J - K)_{[0, oo)}.

    With the single-family kernels of the two involution classes at zero
    auxiliary parameter, step 1 gives the orthogonal-group integral and
    step 2 the symplectic one (as formal power series).
    """
    Z = gap_probability(K, 0, margin=margin)
    return gap_probability(K, step * l, margin=margin) / Z


# -- discrete / continuous reformulation ---------------------------------------------


@dataclass
class DisccontReport:
    n: int
    s: object
    lhs: USeries
    plus_side: USeries
    minus_side: USeries
    remark_lhs: USeries
    remark_rhs: USeries

    @property
    def ok(self) -> bool:
        return (self.lhs == self.plus_side and self.lhs == self.minus_side
                and self.remark_lhs == self.remark_rhs)


def _rpow(x, k: int):
    x = rational(x)
    return x ** k if k >= 0 else 1 / (x ** (-k))


def exceptional_sizes(n: int) -> tuple:
    """(|N+ cap Z^-|, |N- cap N|) for N+ = [n, oo), N- = (-oo, n)."""
    return max(0, -n), max(0, n)


def disccont_check(K, n: int, s, margin: int = 4) -> DisccontReport:
    """The three-way identity for a block kernel of a partition distribution, t = s^4."""
    s = rational(s)
    N = K.order
    one = USeries.one(N)
    s2, s4 = s * s, s ** 4
    lo, hi = n - N - margin, n + N + margin
    pts = list(range(lo, hi + 1))
    A = block_restrict(K, pts)
    m = len(A)
    J = j_matrix(len(pts), one)
    # J - s (K - chi J chi) s
    M = [[J[i][j] - A[i][j].scale(s2) for j in range(m)] for i in range(m)]
    for idx, a in enumerate(pts):
        if a < n:
            M[2 * idx][2 * idx + 1] = M[2 * idx][2 * idx + 1] + one.scale(s2)
            M[2 * idx + 1][2 * idx] = M[2 * idx + 1][2 * idx] - one.scale(s2)
    lhs = pfaffian_auto(M, one, check=False)
    n_pm, n_mp = exceptional_sizes(n)
    plus_pts = list(range(n, hi + 1))
    minus_pts = list(range(lo, n))
    pf_plus = _fredholm_scaled(K, plus_pts, s4, complement=False)
    pf_minus = _fredholm_scaled(K, minus_pts, s4, complement=True)
    plus_side = pf_plus.scale(_rpow(1 + s2, n_mp - n_pm))
    minus_side = pf_minus.scale(_rpow(1 - s2, n_pm - n_mp)) if s2 != 1 or n_pm == n_mp else None
    remark_rhs = pf_plus.scale(_rpow(1 - s4, n_mp - n_pm)) if s4 != 1 or n_pm == n_mp else None
    return DisccontReport(n, s, lhs, plus_side, minus_side, pf_minus, remark_rhs)


def _fredholm_scaled(K, pts, c, complement: bool) -> USeries:
    """pf(J - c K) or pf(J - c (J - K)) on pts."""
    one = USeries.one(K.order)
    if not pts:
        return one
    A = block_restrict(K, pts)
    J = j_matrix(len(pts), one)
    m = len(A)
    if complement:
        M = [[J[i][j] - (J[i][j] - A[i][j]).scale(c) for j in range(m)] for i in range(m)]
    else:
        M = [[J[i][j] - A[i][j].scale(c) for j in range(m)] for i in range(m)]
    return pfaffian_auto(M, one, check=False)


@dataclass
class ScalarDisccontReport:
    n: int
    s: object
    lhs: USeries
    plus_side: USeries
    minus_side: USeries

    @property
    def ok(self) -> bool:
        return self.lhs == self.plus_side and self.lhs == self.minus_side


def disccont_scalar_check(K, n: int, s, margin: int = 4) -> ScalarDisccontReport:
    """det(I - s^2 (K - chi_{N-}))_Z against the two half-line determinants."""
    s = rational(s)
    N = K.order
    one = USeries.one(N)
    s2, s4 = s * s, s ** 4
    lo, hi = n - N - margin, n + N + margin
    pts = list(range(lo, hi + 1))
    A = block_restrict(K, pts)
    m = len(A)
    M = [[(one if i == j else one * 0) - A[i][j].scale(s2) for j in range(m)] for i in range(m)]
    for i, a in enumerate(pts):
        if a < n:
            M[i][i] = M[i][i] + one.scale(s2)
    lhs = det_auto(M, one)
    n_pm, n_mp = exceptional_sizes(n)
    plus_pts, minus_pts = list(range(n, hi + 1)), list(range(lo, n))

    def det_on(pts_, complement):
        if not pts_:
            return one
        B = block_restrict(K, pts_)
        k = len(B)
        if complement:
            return det_auto([[(one if i == j else one * 0)
                              - ((one if i == j else one * 0) - B[i][j]).scale(s4)
                              for j in range(k)] for i in range(k)], one)
        return det_auto([[(one if i == j else one * 0) - B[i][j].scale(s4) for j in range(k)]
                         for i in range(k)], one)

    plus_side = det_on(plus_pts, False).scale(_rpow(1 + s2, n_mp - n_pm))
    minus_side = det_on(minus_pts, True).scale(_rpow(1 - s2, n_pm - n_mp))
    return ScalarDisccontReport(n, s, lhs, plus_side, minus_side)
