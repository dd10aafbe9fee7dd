"""The antisymmetric matrices F(alpha, beta), Toeplitz sections, and
valuation probes for sections of infinite matrices and their inverses.

Infinite matrices are handled through finite sections.  A section of a
product with an upper-triangular Toeplitz factor is only exact away from the
far edge, so callers build sections with a margin and read off the top-left
block; ``section_margin`` gives a margin that is enough at order N for the
constructions in this module (tests confirm that enlarging it changes
nothing).
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import ESequence, USeries, e_sequence, rational, graded_power
from .linalg import (SingularConstantTerm, inverse_unit, matmul, msub, principal_minor,
                     transpose)


class SingularSection(ArithmeticError):
    pass


@dataclass(frozen=True)
class Graded:
    """A scalar entering series as value * u."""

    value: object

    def power(self, k: int, order: int) -> USeries:
        return graded_power(rational(self.value), k, order)

    def __neg__(self):
        return Graded(-rational(self.value))

    def __str__(self):
        return f"{self.value}u"


def scalar_power(x, k: int, order: int) -> USeries:
    """x^k as a series; x is a plain number or a :class:`Graded`; 0^0 = 1."""
    if isinstance(x, Graded):
        return x.power(k, order)
    x = rational(x)
    return USeries.const(x ** k if k else 1, order)


def negate(x):
    return -x if isinstance(x, Graded) else -rational(x)


def f_entry(alpha, beta, j: int, k: int, order: int) -> USeries:
    """F(alpha, beta)_{jk}, indices from 1."""
    if j == k:
        return USeries.zero(order)
    if k > j:
        return (scalar_power(alpha, k - j - 1, order) * scalar_power(beta, (j + 1) % 2, order)
                * scalar_power(beta, k % 2, order))
    return -f_entry(alpha, beta, k, j, order)


def f_matrix(alpha, beta, size: int, order: int) -> list:
    return [[f_entry(alpha, beta, j, k, order) for k in range(1, size + 1)]
            for j in range(1, size + 1)]


# -- Laurent symbols ------------------------------------------------------------


class Symbol:
    """Laurent series phi(z) given by its coefficient function n -> USeries."""

    def __init__(self, coeff, order: int):
        self._coeff = coeff
        self.order = order
        self._memo: dict = {}

    def __getitem__(self, n: int) -> USeries:
        hit = self._memo.get(n)
        if hit is None:
            hit = self._coeff(n)
            self._memo[n] = hit
        return hit


def e_symbol(p, order: int, inverse: bool = False, reciprocal: bool = False,
             step: int = 1) -> Symbol:
    """E(z^step; p) (or 1/E when ``inverse``), in z or, with ``reciprocal``, in 1/z.

    The coefficient of e_i is graded by u^i.
    """
    seq = p if isinstance(p, ESequence) else e_sequence(p, order)
    if inverse:
        seq = seq.inverse()

    def c(n):
        m = -n if reciprocal else n
        if m < 0 or m % step:
            return USeries.zero(order)
        i = m // step
        return USeries.monomial(seq[i], i, order) if i <= order else USeries.zero(order)
    return Symbol(c, order)


def geometric_symbol(alpha, order: int, reciprocal: bool = False, step: int = 1) -> Symbol:
    """(1 - alpha z^step)^{-1}, or in 1/z."""
    def c(n):
        m = -n if reciprocal else n
        if m < 0 or m % step:
            return USeries.zero(order)
        return scalar_power(alpha, m // step, order)
    return Symbol(c, order)


def linear_symbol(beta, order: int, reciprocal: bool = False) -> Symbol:
    """1 + beta z, or 1 + beta / z."""
    def c(n):
        if n == 0:
            return USeries.one(order)
        if n == (-1 if reciprocal else 1):
            return scalar_power(beta, 1, order)
        return USeries.zero(order)
    return Symbol(c, order)


def toeplitz(symbol: Symbol, size: int) -> list:
    """T(phi)_{jk} = [z^{k-j}] phi, a size x size section."""
    return [[symbol[k - j] for k in range(size)] for j in range(size)]


def section_margin(order: int) -> int:
    return 2 * order + 6


# -- gram matrices with exactly known inverses -----------------------------------


def _sandwich(A, F, B):
    return matmul(matmul(A, F), transpose(B))


def gram_U(p_x, p_y, size: int, order: int):
    """(M, M^{-1}) sections for M = T(E(z;y)) T(E(z;x))^t."""
    big = size + section_margin(order)
    Ty = toeplitz(e_symbol(p_y, order), big)
    Tx = toeplitz(e_symbol(p_x, order), big)
    M = matmul(Ty, transpose(Tx))
    # M^{-1} = T(1/E(z;x))^t T(1/E(z;y)): lower times upper, exact on any section
    Ax = toeplitz(e_symbol(p_x, order, inverse=True), size)
    Ay = toeplitz(e_symbol(p_y, order, inverse=True), size)
    Minv = matmul(transpose(Ax), Ay)
    return principal_minor(M, size), Minv


def gram_O(p, alpha, size: int, order: int):
    """M = T(E) F(alpha, 1) T(E)^t and M^{-1} = -T(1/E)^t F(-1, alpha) T(1/E)."""
    al = Graded(alpha)
    big = size + section_margin(order)
    T = toeplitz(e_symbol(p, order), big)
    M = _sandwich(T, f_matrix(al, 1, big, order), T)
    Ti = toeplitz(e_symbol(p, order, inverse=True), size)
    Minv = matmul(matmul(transpose(Ti), f_matrix(-1, al, size, order)), Ti)
    Minv = [[-x for x in row] for row in Minv]
    return principal_minor(M, size), Minv


def gram_S(p, beta, size: int, order: int):
    """M = T(E) F(1, beta) T(E)^t and M^{-1} = -T(1/E)^t F(-beta, 1) T(1/E)."""
    be = Graded(beta)
    big = size + section_margin(order)
    T = toeplitz(e_symbol(p, order), big)
    M = _sandwich(T, f_matrix(1, be, big, order), T)
    Ti = toeplitz(e_symbol(p, order, inverse=True), size)
    Minv = matmul(matmul(transpose(Ti), f_matrix(negate(be), 1, size, order)), Ti)
    Minv = [[-x for x in row] for row in Minv]
    return principal_minor(M, size), Minv


def gram_u(p, s, size: int, order: int):
    """M = T(E(z^2)) F(s, 0) T(E(z^2))^t with s = sqrt(alpha) graded (beta = 0).

    M^{-1} = -T(1/E(z^2))^t F(0, s) T(1/E(z^2)).
    """
    sg = Graded(s)
    big = size + section_margin(order)
    T = toeplitz(e_symbol(p, order, step=2), big)
    M = _sandwich(T, f_matrix(sg, 0, big, order), T)
    Ti = toeplitz(e_symbol(p, order, inverse=True, step=2), size)
    Minv = matmul(matmul(transpose(Ti), f_matrix(0, sg, size, order)), Ti)
    Minv = [[-x for x in row] for row in Minv]
    return principal_minor(M, size), Minv


# -- probes ---------------------------------------------------------------------


def _ceil_half(j):
    return (j + 1) // 2


def probe_bounds(kind: str, m: int, j: int, k: int) -> tuple:
    """Lower bounds (for M(n) - M^{-1}(n)^{-1}, for M(n)^{-1} - M^{-1}(n)), 1-based j, k.

    kind ``U``: n = m.  kinds ``OS`` and ``u``: n = 2m.
    """
    if kind == "U":
        b = 2 * m + 2 - j - k
        return b, b
    if kind == "OS":
        first = 4 * m + 1 - j - k
        if k > j:
            second = 2 * m + 2 + (j + 1) % 2 - k
        elif j > k:
            second = 2 * m + 2 + (k + 1) % 2 - j
        else:
            second = float("inf")
        return first, second
    if kind == "u":
        b = 2 * m + 2 - _ceil_half(j) - _ceil_half(k)
        return b, b
    raise ValueError(kind)


def _ord(x: USeries) -> int:
    return x.valuation()


@dataclass
class ProbeEntry:
    j: int
    k: int
    ord_direct: int
    bound_direct: float
    ord_inverse: int
    bound_inverse: float

    def ok(self, order: int) -> bool:
        cap = order + 1
        return (min(self.ord_direct, cap) >= min(self.bound_direct, cap)
                and min(self.ord_inverse, cap) >= min(self.bound_inverse, cap))


def minor_inverse_probe(M, Minv, m: int, order: int, kind: str = "U") -> list:
    """Valuation defects of the n-section inverses, n = m (kind U) or 2m.

    ``M`` and ``Minv`` are exact sections of an infinite matrix and of its
    inverse, of size at least n.  Each entry reports ord_u of
    (M(n) - M^{-1}(n)^{-1})_{jk} and of (M(n)^{-1} - M^{-1}(n))_{jk} next to
    the claimed lower bound; ord_u = order + 1 means zero modulo u^{order+1}.
    """
    n = m if kind == "U" else 2 * m
    A, B = principal_minor(M, n), principal_minor(Minv, n)
    try:
        Ainv, Binv = inverse_unit(A), inverse_unit(B)
    except SingularConstantTerm as exc:
        raise SingularSection(str(exc)) from exc
    d1, d2 = msub(A, Binv), msub(Ainv, B)
    out = []
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            b1, b2 = probe_bounds(kind, m, j, k)
            out.append(ProbeEntry(j, k, _ord(d1[j - 1][k - 1]), b1, _ord(d2[j - 1][k - 1]), b2))
    return out


def probe_passes(entries, order: int) -> bool:
    return all(e.ok(order) for e in entries)


def hypothesis_defects(M, kind: str) -> list:
    """Entries violating the valuation hypotheses of the probe ``kind``."""
    bad = []
    n = len(M)
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            x = M[j - 1][k - 1]
            v = x.valuation()
            if kind == "U":
                need = abs(j - k)
                if j == k and not x.is_unit():
                    bad.append((j, k))
            elif kind == "OS":
                need = abs(j - k) - 1
            else:
                need = abs(_ceil_half(j) - _ceil_half(k))
            if kind != "U" and j % 2 == 1 and k == j + 1 and not x.is_unit():
                bad.append((j, k))
            if v < min(need, x.order + 1):
                bad.append((j, k))
    return bad
