"""Correlation kernels of the symmetrized partition measures.

Every kernel entry is a :class:`USeries` of a fixed order N.  The infinite
sums in the kernel formulas terminate because every e_j carries u^j and the
auxiliary parameters alpha, beta carry one power of u each: a Laurent
coefficient [z^n] E(z) / E(1/z) has u-valuation at least |n|.  Sums over l
(or j) are cut off at ``N + |a| + |b| + 2``, which is conservative; tests
check that doubling the cutoff changes nothing.

Kernels are callables ``K(a, b)`` with a per-instance memo table.  Scalar
(determinantal) kernels return a series; pfaffian kernels return 2x2 blocks
as nested lists.  Kernels on two interleaved families of rows (the split
classes) take tagged points ``(tag, a)`` with tag 0 for even rows and 1 for
odd rows.  Half-integers are encoded as doubled odd integers.
"""

from __future__ import annotations

from .exact import (ESequence, I, ParameterSet, USeries, conjugate_params,
                    e_sequence, graded_power, rational)
from .linalg import block_restrict, det_auto, pfaffian_auto


class OverlappingSets(ValueError):
    pass


def as_sequence(p, order: int) -> ESequence:
    if isinstance(p, ESequence):
        return p
    return e_sequence(p, order)


class LaurentTable:
    """n -> [z^n] A(z) B(1/z) with z^k graded as u^{scale*k}.

    ``A`` and ``B`` are e-sequences; the coefficient is
    sum_{j >= max(0, -n)} A_{n+j} B_j u^{scale*(n+2j)}.
    """

    def __init__(self, A: ESequence, B: ESequence, order: int, scale: int = 1):
        self.A, self.B, self.order, self.scale = A, B, order, scale
        self._memo: dict[int, USeries] = {}

    def __call__(self, n: int) -> USeries:
        hit = self._memo.get(n)
        if hit is not None:
            return hit
        N, s = self.order, self.scale
        coeffs = [0] * (N + 1)
        j = max(0, -n)
        while s * (n + 2 * j) <= N:
            a, b = self.A[n + j], self.B[j]
            if a and b:
                coeffs[s * (n + 2 * j)] += a * b
            j += 1
        out = USeries(coeffs, N)
        self._memo[n] = out
        return out


def l_table(p_plus, p_minus, order: int, scale: int = 1) -> LaurentTable:
    """L^U(. | p_plus, p_minus) = [z^a] E(z; p_plus) / E(1/z; p_minus)."""
    size = order // scale + 1
    A = as_sequence(p_plus, size)
    B = as_sequence(p_minus, size).inverse()
    return LaurentTable(A, B, order, scale)


def l_u(a: int, p_plus, p_minus, order: int) -> USeries:
    return l_table(p_plus, p_minus, order)(a)


class UngradedPlusTable:
    """L^U(. | p+, p+) where p+ adjoins alpha to r(p) as a plain constant.

    Only the e_j of p carry u^j.  E(z; p+) does not decay, but
    1/E(w; p+) = (1 - alpha w) / E(w; p) does, so each coefficient is a
    convergent sum.
    """

    def __init__(self, p, alpha, order: int):
        self.order = order
        self.alpha = rational(alpha)
        seq = as_sequence(p, order + 1)
        inv = seq.inverse()
        N = order
        A, acc = [], USeries.zero(N)
        for k in range(N + 1):
            acc = acc.scale(self.alpha) + USeries.monomial(seq[k], k, N)
            A.append(acc)
        self.A_tail = acc
        self.B = [USeries.monomial(inv[j], j, N)
                  - (USeries.monomial(inv[j - 1] * self.alpha, j - 1, N) if j else USeries.zero(N))
                  for j in range(N + 2)]
        self.A = A
        self._memo: dict[int, USeries] = {}

    def _a(self, k):
        if k < 0:
            return USeries.zero(self.order)
        if k <= self.order:
            return self.A[k]
        # past degree N only the geometric factor keeps growing
        return self.A_tail.scale(self.alpha ** (k - self.order))

    def __call__(self, n: int) -> USeries:
        hit = self._memo.get(n)
        if hit is None:
            hit = USeries.zero(self.order)
            for j in range(max(0, -n), self.order + 2):
                hit = hit + self._a(n + j) * self.B[j]
            self._memo[n] = hit
        return hit


def cutoff(order: int, a: int, b: int) -> int:
    return order + abs(a) + abs(b) + 2


class Kernel:
    """Memoized kernel; subclasses implement ``_entry``."""

    tag = "Custom"
    block_size = 1
    tagged = False
    doubled = False

    def __init__(self, order: int):
        self.order = order
        self._memo: dict = {}
        self.cutoff_scale = 1

    def __call__(self, a, b):
        key = (a, b)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._entry(a, b)
            self._memo[key] = hit
        return hit

    def _entry(self, a, b):
        raise NotImplementedError

    def cut(self, a: int, b: int) -> int:
        return self.cutoff_scale * cutoff(self.order, a, b)

    def zero(self) -> USeries:
        return USeries.zero(self.order)

    def one(self) -> USeries:
        return USeries.one(self.order)

    def restrict(self, rows, cols=None) -> list:
        return block_restrict(self, rows, cols)

    def correlation(self, S) -> USeries:
        """Pr(S in T) as pf or det of the restriction to S."""
        S = list(S)
        if not S:
            return self.one()
        A = self.restrict(S)
        if self.block_size == 2:
            return pfaffian_auto(A, self.one())
        return det_auto(A, self.one())

    def correlation_split(self, S0, S1) -> USeries:
        return self.correlation([(0, a) for a in S0] + [(1, b) for b in S1])


# -- classes U and UU -------------------------------------------------------


class UKernel(Kernel):
    """K^U(a,b) = sum_{l>=1} L^U(a+l | p+,p-) L^U(b+l | p-,p+)."""

    tag = "U"

    def __init__(self, p_plus, p_minus, order: int):
        super().__init__(order)
        self.p_plus, self.p_minus = p_plus, p_minus
        self.L = l_table(p_plus, p_minus, order)
        self.R = l_table(p_minus, p_plus, order)

    def _entry(self, a, b):
        N = self.order
        acc = self.zero()
        for l in range(1, self.cut(a, b) + 1):
            if abs(a + l) + abs(b + l) > N:
                if a + l > 0 and b + l > 0:
                    break
                continue
            acc = acc + self.L(a + l) * self.R(b + l)
        return acc


class UUKernel(Kernel):
    """Signed-permutation kernel: L^U at half arguments, z graded by u^2.

    Only l with a + l and b + l even contribute (L^U of a non-integer is
    zero).  The result is conjugate (by i^a) to the class-U kernel of the
    substituted specialization E(-z^2; p), so determinants agree with that
    measure.
    """

    tag = "UU"

    def __init__(self, p_plus, p_minus, order: int):
        super().__init__(order)
        self.p_plus, self.p_minus = p_plus, p_minus
        self.L = l_table(p_plus, p_minus, order, scale=2)
        self.R = l_table(p_minus, p_plus, order, scale=2)

    def _entry(self, a, b):
        N = self.order
        acc = self.zero()
        for l in range(1, self.cut(a, b) + 1):
            if (a + l) % 2 or (b + l) % 2:
                continue
            if abs(a + l) + abs(b + l) > N:
                if a + l > 0 and b + l > 0:
                    break
                continue
            acc = acc + self.L((a + l) // 2) * self.R((b + l) // 2)
        return acc


def substituted_sequence(p, order: int, c, step: int) -> ESequence:
    """e-sequence of E(c z^step; p) up to the given order."""
    return as_sequence(p, order).substitute(c, step)


def uu_sequence(p, order: int) -> ESequence:
    """E(-z^2; p), the specialization behind the signed-permutation measure."""
    return substituted_sequence(p, order, -1, 2)


# -- class O ----------------------------------------------------------------


def _pair_sum(Lu, Lv, a, b, order, upto, decaying=True):
    """sum_{l>0} Lu(a+l+1) Lv(b+l) - Lu(a+l) Lv(b+l+1).

    With ``decaying`` both sequences have valuation >= c - 1 at large c and
    the sum stops early.  Otherwise the summand may tend to a period-two
    pattern, and the sum is taken over complete pairs l in {2i-1, 2i}: the
    partial sums over whole pairs are eventually constant.
    """
    acc = USeries.zero(order)
    if not decaying:
        upto += upto % 2
    for l in range(1, upto + 1):
        if decaying and a + l > 0 and b + l > 0 and (a + l) + (b + l) > order + 2:
            break
        acc = acc + Lu(a + l + 1) * Lv(b + l) - Lu(a + l) * Lv(b + l + 1)
    return acc


def _memo(fn):
    table = {}

    def wrapped(a):
        hit = table.get(a)
        if hit is None:
            hit = fn(a)
            table[a] = hit
        return hit
    return wrapped


class _OBase(Kernel):
    def __init__(self, p: ParameterSet, alpha, order: int, graded: bool = True):
        super().__init__(order)
        self.p = p
        self.alpha = rational(alpha)
        self.graded = graded
        self.p_plus = p.adjoin_r(self.alpha)

    def apow(self, k: int) -> USeries:
        if self.graded:
            return graded_power(self.alpha, k, self.order)
        return USeries.const(self.alpha ** k if k else 1, self.order)

    def lo(self, LU: LaurentTable):
        """L^O(a) = [a even] - sum_{j>0} L^U(a - 2j) for the given L^U table."""
        N = self.order

        def f(a):
            acc = self.one() if a % 2 == 0 else self.zero()
            j = 1
            while 2 * j - a <= N + 1:
                acc = acc - LU(a - 2 * j)
                j += 1
            return acc
        return _memo(f)


class OSplitKernel(_OBase):
    """Even/odd row kernel of the first involution class, 2x2 blocks on tagged points.

    With ``graded=False`` alpha is a plain constant rather than a multiple of
    u; this is how the alpha = 1 special case is reached.
    """

    tag = "O-split"
    block_size = 2
    tagged = True

    def __init__(self, p: ParameterSet, alpha, order: int, graded: bool = True):
        super().__init__(p, alpha, order, graded)
        self.LO = self.lo(l_table(p, p, order))
        plus = (l_table(self.p_plus, self.p_plus, order) if graded
                else UngradedPlusTable(p, self.alpha, order))
        self.LO_plus = self.lo(plus)
        self.Ls = (self.LO, _memo(lambda a: self.LO_plus(a - 1)))
        self._S = {}

    def S(self, u: int, v: int, a: int, b: int) -> USeries:
        key = (u, v, a, b)
        hit = self._S.get(key)
        if hit is None:
            hit = _pair_sum(self.Ls[u], self.Ls[v], a, b, self.order, self.cut(a, b) + 2,
                            decaying=self.graded or u == v == 0)
            self._S[key] = hit
        return hit

    def _entry(self, x, y):
        (u, a), (v, b) = x, y
        S = self.S
        block = [[S(u, v, a, b), S(u, v, a, b + 1)],
                 [S(u, v, a + 1, b), S(u, v, a + 1, b + 1)]]
        if (u, v) == (0, 1) and b > a:
            d = b - a
            corr = [[self.apow(d), self.apow(d + 1)], [self.apow(d - 1), self.apow(d)]]
            block = [[block[i][j] + corr[i][j] for j in range(2)] for i in range(2)]
        elif (u, v) == (1, 0) and a > b:
            d = a - b
            corr = [[self.apow(d), self.apow(d - 1)], [self.apow(d + 1), self.apow(d)]]
            block = [[block[i][j] - corr[i][j] for j in range(2)] for i in range(2)]
        return block


def eps_o(a: int, b: int, alpha, order: int) -> USeries:
    """alpha^{|b-a|-1} sgn(b-a), graded; zero on the diagonal."""
    if a == b:
        return USeries.zero(order)
    s = graded_power(rational(alpha), abs(b - a) - 1, order)
    return s if b > a else -s


class OMixedKernel(_OBase):
    """Single-family kernel K^{O'} of the first involution class."""

    tag = "O-mixed"
    block_size = 2

    def __init__(self, p: ParameterSet, alpha, order: int):
        super().__init__(p, alpha, order)
        LUpp = l_table(p, self.p_plus, order)
        LUp_p = l_table(self.p_plus, p, order)
        N = order

        def l0(a):
            acc = graded_power(-self.alpha, a % 2, N)
            j = 1
            while 2 * j - a <= N:
                acc = acc - LUpp(a - 2 * j)
                j += 1
            return acc
        self.L0 = _memo(l0)
        self.L1 = _memo(lambda a: -LUp_p(a - 1))
        self.Ls = (self.L0, self.L1)

    def S(self, u, v, a, b):
        return _pair_sum(self.Ls[u], self.Ls[v], a, b, self.order, self.cut(a, b) + 2)

    def _entry(self, a, b):
        S = self.S
        return [[S(0, 0, a, b), S(0, 1, a, b)],
                [S(1, 0, a, b), S(1, 1, a, b) - eps_o(a, b, self.alpha, self.order)]]


# -- class S ----------------------------------------------------------------


class _SBase(Kernel):
    def __init__(self, p: ParameterSet, beta, order: int):
        super().__init__(order)
        self.p = p
        self.beta = rational(beta)
        self.p_plus = p.adjoin_q(self.beta)

    def bpow(self, k: int) -> USeries:
        return graded_power(self.beta, k, self.order)

    def tail(self, LU: LaurentTable, shift: int):
        """a -> sum_{j>=0} L^U(a + 2j + shift)."""
        N = self.order

        def f(a):
            acc = self.zero()
            c = a + shift
            while c <= N:
                if abs(c) <= N:
                    acc = acc + LU(c)
                c += 2
            return acc
        return _memo(f)


class SSplitKernel(_SBase):
    """Even/odd row kernel of the second involution class.

    The pairing beta^{a mod 2} beta^{(b+1) mod 2} depends on the parity of
    the points, so the constituent sequences L_1 and L_2 come in two
    branches selected by the parity of the base point a of S_uv(a, b), not by
    the parity of the shifted argument.  ``literal=True`` selects the branch
    by the argument instead; that variant does not reproduce the measure and
    is kept only for comparison.
    """

    tag = "S-split"
    block_size = 2
    tagged = True

    def __init__(self, p: ParameterSet, beta, order: int, literal: bool = False):
        super().__init__(p, beta, order)
        LUpq = l_table(p, self.p_plus, order)
        Lpp = l_table(p, p, order)
        Lqq = l_table(self.p_plus, self.p_plus, order)
        pp1, qq2 = self.tail(Lpp, 1), self.tail(Lqq, 2)
        pp0, qq1 = self.tail(Lpp, 0), self.tail(Lqq, 1)
        b1 = self.bpow(1)
        one, zero = self.one(), self.zero()
        self.literal = literal

        # branch 0: even base point, branch 1: odd base point
        l1 = (_memo(pp1), _memo(lambda c: b1 * qq2(c)))
        l2 = (_memo(lambda c: (b1 if c % 2 == 0 else zero) - b1 * pp0(c)),
              _memo(lambda c: (one if c % 2 else zero) - qq1(c)))
        l0 = _memo(LUpq)
        self.branches = ((l0, l0), l1, l2)
        self._S = {}

    def L(self, u: int, point: int):
        """Constituent sequence L_u for a base point of the given parity."""
        br = self.branches[u]
        if self.literal:
            return lambda c: br[c % 2](c)
        return br[point % 2]

    def S(self, u, v, a, b):
        key = (u, v, a, b)
        hit = self._S.get(key)
        if hit is None:
            # L_2 tends to a parity pattern rather than to zero
            hit = _pair_sum(self.L(u, a), self.L(v, b), a, b, self.order, self.cut(a, b) + 2,
                            decaying=False)
            self._S[key] = hit
        return hit

    def _entry(self, x, y):
        (u, a), (v, b) = x, y
        S = self.S
        if (u, v) == (0, 0):
            return [[S(0, 0, a, b), S(0, 1, a, b)], [S(1, 0, a, b), S(1, 1, a, b)]]
        if (u, v) == (0, 1):
            block = [[S(0, 2, a, b), S(0, 0, a, b)], [S(1, 2, a, b), S(1, 0, a, b)]]
            if b > a:
                block[1][0] = block[1][0] + self.bpow(a % 2 + (b + 1) % 2)
            return block
        if (u, v) == (1, 0):
            block = [[S(2, 0, a, b), S(2, 1, a, b)], [S(0, 0, a, b), S(0, 1, a, b)]]
            if a > b:
                block[0][1] = block[0][1] - self.bpow((a + 1) % 2 + b % 2)
            return block
        return [[S(2, 2, a, b), S(2, 0, a, b)], [S(0, 2, a, b), S(0, 0, a, b)]]


def eps_s(a: int, b: int, beta, order: int) -> USeries:
    """beta^{(max+1) mod 2} beta^{min mod 2} sgn(b-a), graded."""
    if a == b:
        return USeries.zero(order)
    hi, lo = max(a, b), min(a, b)
    s = graded_power(rational(beta), (hi + 1) % 2 + lo % 2, order)
    return s if b > a else -s


class SMixedKernel(_SBase):
    """Single-family kernel K^{S'} of the second involution class."""

    tag = "S-mixed"
    block_size = 2

    def __init__(self, p: ParameterSet, beta, order: int):
        super().__init__(p, beta, order)
        LUpq = l_table(p, self.p_plus, order)
        qp1 = self.tail(l_table(self.p_plus, p, order), 1)
        self.Ls = (_memo(LUpq), _memo(lambda a: qp1(a) - self.bpow((a + 1) % 2)))

    def S(self, u, v, a, b):
        return _pair_sum(self.Ls[u], self.Ls[v], a, b, self.order, self.cut(a, b) + 2,
                         decaying=False)

    def _entry(self, a, b):
        S = self.S
        return [[S(0, 0, a, b), S(0, 1, a, b)],
                [S(1, 0, a, b), S(1, 1, a, b) - eps_s(a, b, self.beta, self.order)]]


# -- class u (beta = 0) -----------------------------------------------------


class SmallUKernel(Kernel):
    """Determinantal kernel of hyperoctahedral involutions at beta = 0.

    Tagged points: (0, a) for the halved even rows, (1, b) for the halved
    odd rows.  ``self(x, y)`` returns the block K_{tag(x) tag(y)}(a, b),
    so the restriction to S0 then S1 is [[K00(S0,S0), K01(S0,S1)],
    [K10(S1,S0), K11(S1,S1)]].
    """

    tag = "u-class"
    tagged = True

    def __init__(self, p: ParameterSet, alpha, order: int):
        super().__init__(order)
        self.p = p
        self.alpha = rational(alpha)
        self.p_plus = p.adjoin_r(self.alpha)
        Lpp = l_table(p, p, order)
        Lqp = l_table(self.p_plus, p, order)
        Lpq = l_table(p, self.p_plus, order)
        self.pairs = {(0, 0): (Lpp, Lpp), (0, 1): (Lpp, Lpq),
                      (1, 0): (Lqp, Lpp), (1, 1): (Lqp, Lpq)}

    def _entry(self, x, y):
        (u, a), (v, b) = x, y
        L, R = self.pairs[(u, v)]
        N = self.order
        acc = self.zero()
        for l in range(1, self.cut(a, b) + 1):
            if a + l > 0 and b + l > 0 and (a + l) + (b + l) > N:
                break
            acc = acc + L(a + l) * R(b + l)
        if (u, v) == (1, 0) and a >= b:
            acc = acc - graded_power(self.alpha, a - b, N)
        return acc


# -- Frobenius shape classes ------------------------------------------------


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


class FrobMinusKernel(Kernel):
    """Kernel for shapes (b-1 | b), points of {lambda_i - i + 1}."""

    tag = "FrobMinus"

    def __init__(self, p: ParameterSet, order: int):
        super().__init__(order)
        self.p = p
        pc = conjugate_params(p)
        self.L = l_table(p, pc, order)
        self.R = l_table(pc, p, order)

    def _sum(self, a, b):
        """sum_l (-1)^{(|l|-l)/2} L(a+|l| | p,p') L(|b|+l | p',p)."""
        N = self.order
        acc = self.zero()
        B = abs(b)
        top = self.cut(a, b)
        for l in range(-top, top + 1):
            if abs(a + abs(l)) + abs(B + l) > N:
                continue
            term = self.L(a + abs(l)) * self.R(B + l)
            acc = acc + term if (abs(l) - l) // 2 % 2 == 0 else acc - term
        return acc

    def _entry(self, a, b):
        s = self._sum(a, b)
        return s if (abs(b) - b) // 2 % 2 == 0 else -s


class FrobPlusRawKernel(Kernel):
    """A literal (b+1 | b) kernel candidate used with det(I - K).

    It does not reproduce the shape-class measure; kept only so tests can
    show the discrepancy against :class:`FrobPlusKernel`.
    """

    tag = "FrobPlus-raw"

    def __init__(self, p: ParameterSet, order: int):
        super().__init__(order)
        self.p = p
        pc = conjugate_params(p)
        self.L = l_table(p, pc, order)
        self.R = l_table(pc, p, order)

    def _entry(self, a, b):
        N = self.order
        acc = self.zero()
        B = abs(b)
        top = self.cut(a, b)
        for l in range(-top, top + 1):
            if abs(-a + abs(l)) + abs(B + l) > N:
                continue
            term = self.L(-a + abs(l)) * self.R(B + l)
            acc = acc + term if (abs(l) - l) // 2 % 2 == 0 else acc - term
        return acc if (abs(b) + b) // 2 % 2 == 0 else -acc


class FrobPlusKernel(Kernel):
    """Kernel for shapes (b+1 | b); Pr(S in {lambda_i - i + 1}) = det(I - K(S)).

    Built by conjugation duality: lambda has shape (b+1 | b) iff lambda' has
    shape (b-1 | b), s_{lambda'}(p) = s_{lambda}(p'), and a lies in
    {lambda_i - i + 1} iff 1 - a does not lie in {lambda'_i - i + 1}.  So
    K(a, b) = K_minus(1 - a, 1 - b | p').
    """

    tag = "FrobPlus"

    def __init__(self, p: ParameterSet, order: int):
        super().__init__(order)
        self.p = p
        self.minus = FrobMinusKernel(conjugate_params(p), order)

    def _entry(self, a, b):
        return self.minus(1 - a, 1 - b)

    def correlation(self, S) -> USeries:
        S = list(S)
        if not S:
            return self.one()
        A = self.restrict(S)
        n = len(S)
        IA = [[(self.one() if i == j else self.zero()) - A[i][j] for j in range(n)]
              for i in range(n)]
        return det_auto(IA, self.one())


class FrobHalfKernel(Kernel):
    """Kernel for shapes (b | b) on half-integers, doubled encoding.

    K(a, b) = sum_{l in Z+1/2} [z^{a+|l|}] E(z)E(1/z) [w^{|b|-l}] 1/(E(w)E(1/w)).
    The e-sequence may be any sequence (e.g. the Gaussian E(i z^2; p)), with
    z^k graded by u^{scale*k}.
    """

    tag = "FrobHalf"
    doubled = True

    def __init__(self, seq: ESequence, order: int, scale: int = 1):
        super().__init__(order)
        self.seq = seq
        inv = seq.inverse()
        self.C = LaurentTable(seq, seq, order, scale)
        self.D = LaurentTable(inv, inv, order, scale)
        self.scale = scale

    def _entry(self, a2, b2):
        if a2 % 2 == 0 or b2 % 2 == 0:
            raise ValueError("half-integer kernel takes doubled odd arguments")
        N, s = self.order, self.scale
        acc = self.zero()
        B2 = abs(b2)
        top = 2 * self.cut(a2, b2) + 1
        for l2 in range(-top, top + 1, 2):
            m = (a2 + abs(l2)) // 2
            n = (B2 - l2) // 2
            if s * (abs(m) + abs(n)) > N:
                continue
            acc = acc + self.C(m) * self.D(n)
        return acc


def frob_half_kernel(p, order: int) -> FrobHalfKernel:
    return FrobHalfKernel(as_sequence(p, order), order)


def rot_sequence(p, order: int) -> ESequence:
    """E(i z^2; p) as a Gaussian e-sequence of the given order."""
    return substituted_sequence(p, order, I, 2)


def rot_kernel(p, order: int) -> FrobHalfKernel:
    k = FrobHalfKernel(rot_sequence(p, order), order)
    k.tag = "Rot"
    return k


def frob_zero_sequence(p, order: int) -> ESequence:
    return as_sequence(p, order)


# -- convenience functions with the documented signatures --------------------


def k_U(a, b, p_plus, p_minus, order):
    return UKernel(p_plus, p_minus, order)(a, b)


def k_UU(a, b, p_plus, p_minus, order):
    return UUKernel(p_plus, p_minus, order)(a, b)


def k_O_split(u, v, a, b, p, alpha, order):
    return OSplitKernel(p, alpha, order)((u, a), (v, b))


def k_O_mixed(a, b, p, alpha, order):
    return OMixedKernel(p, alpha, order)(a, b)


def k_S_split(u, v, a, b, p, beta, order):
    return SSplitKernel(p, beta, order)((u, a), (v, b))


def k_S_mixed(a, b, p, beta, order):
    return SMixedKernel(p, beta, order)(a, b)


def k_u_class(u, v, a, b, p, alpha, order):
    return SmallUKernel(p, alpha, order)((u, a), (v, b))


def k_frob_minus(a, b, p, order):
    return FrobMinusKernel(p, order)(a, b)


def k_frob_plus(a, b, p, order):
    return FrobPlusKernel(p, order)(a, b)


def k_frob_half(a2, b2, p, order):
    return frob_half_kernel(p, order)(a2, b2)


def k_rot(a2, b2, p, order):
    return rot_kernel(p, order)(a2, b2)


# -- superset / disjoint blocks ---------------------------------------------


def extension_block(K: Kernel, S_plus, S_minus) -> list:
    """Matrix whose det (scalar K) or pf (block K) is Pr(S+ in T, S- disjoint from T).

    Scalar kernels: [[K(S+,S+), i K(S+,S-)], [i K(S-,S+), I - K(S-,S-)]].
    Block kernels: the same with J in place of I.
    """
    Sp, Sm = list(S_plus), list(S_minus)
    if set(Sp) & set(Sm):
        raise OverlappingSets("S+ and S- must be disjoint")
    N = K.order
    one, zero = USeries.one(N), USeries.zero(N)
    A = K.restrict(Sp + Sm) if Sp + Sm else []
    k = K.block_size
    np_ = k * len(Sp)
    n = len(A)
    out = [list(row) for row in A]
    for i in range(n):
        for j in range(n):
            x = out[i][j]
            top, left = i < np_, j < np_
            if top and left:
                continue
            if top != left:
                out[i][j] = x * I
                continue
            # lower-right block: I - K or J - K
            if k == 1:
                ident = one if i == j else zero
            else:
                ident = zero
                if (i - np_) // 2 == (j - np_) // 2:
                    r, c = (i - np_) % 2, (j - np_) % 2
                    ident = one if (r, c) == (0, 1) else (-one if (r, c) == (1, 0) else zero)
            out[i][j] = ident - x
    return out


def superset_disjoint(K: Kernel, S_plus, S_minus) -> USeries:
    M = extension_block(K, S_plus, S_minus)
    if not M:
        return USeries.one(K.order)
    if K.block_size == 2:
        return pfaffian_auto(M, USeries.one(K.order))
    return det_auto(M, USeries.one(K.order))
