"""Exact determinants, pfaffians and inverses over commutative rings.

Matrices are plain lists of rows.  Entries are either scalars (ints, mpq,
Gauss) or :class:`~symcorr.exact.USeries`; every routine here works for both.
The truncated series ring has zero divisors, so the reference algorithms are
division free (Berkowitz for determinants, first-row expansion for
pfaffians).  For the large windows of the Fredholm module there are
elimination variants that pivot on an entry of minimal u-valuation, which is
exact modulo u^{N+1} (see ``det_eliminate``).
"""

from __future__ import annotations

from itertools import permutations
from typing import Sequence

from .exact import Gauss, USeries, ZERO, ONE, Rational


class NonSquare(ValueError):
    pass


class NotAntisymmetric(ValueError):
    pass


class SingularConstantTerm(ArithmeticError):
    pass


class IndexOutOfRange(IndexError):
    pass


class DuplicateIndex(ValueError):
    pass


Matrix = list


def _shape(M: Sequence) -> tuple[int, int]:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    for row in M:
        if len(row) != cols:
            raise ValueError("ragged matrix")
    return rows, cols


def _one_like(M: Sequence, one=None):
    if one is not None:
        return one
    for row in M:
        for x in row:
            if isinstance(x, USeries):
                return USeries.one(x.order)
    return ONE


def _zero_like(one):
    return one * 0


def identity(n: int, one=ONE) -> Matrix:
    zero = _zero_like(one)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(A: Sequence, B: Sequence) -> Matrix:
    n, k = _shape(A)
    k2, m = _shape(B) if B else (0, 0)
    if k != k2:
        raise ValueError("dimension mismatch")
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            acc = None
            for t in range(k):
                a = Ai[t]
                if isinstance(a, USeries):
                    if a.is_zero():
                        continue
                elif not a:
                    continue
                b = B[t][j]
                term = a * b
                acc = term if acc is None else acc + term
            if acc is None:
                acc = A[i][0] * 0 if k else ZERO
            row.append(acc)
        out.append(row)
    return out


def transpose(A: Sequence) -> Matrix:
    return [list(col) for col in zip(*A)] if A else []


def madd(A, B) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def msub(A, B) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mscale(A, c) -> Matrix:
    return [[a * c for a in row] for row in A]


def is_zero(x) -> bool:
    if isinstance(x, USeries):
        return x.is_zero()
    return not x


def is_antisymmetric(A: Sequence) -> bool:
    n, m = _shape(A)
    if n != m:
        return False
    for i in range(n):
        if not is_zero(A[i][i]):
            return False
        for j in range(i + 1, n):
            if not is_zero(A[i][j] + A[j][i]):
                return False
    return True


# -- determinants -----------------------------------------------------------


def charpoly(M: Sequence, one=None) -> list:
    """Coefficients [1, c1, ..., cn] of det(x I - M) by Berkowitz's method."""
    n, m = _shape(M)
    if n != m:
        raise NonSquare(f"{n}x{m} matrix")
    one = _one_like(M, one)
    zero = _zero_like(one)
    if n == 0:
        return [one]
    # grow from the bottom-right 1x1 block outwards
    poly = [one, -M[n - 1][n - 1]]
    for s in range(n - 2, -1, -1):
        a = M[s][s]
        R = M[s][s + 1:]
        C = [M[i][s] for i in range(s + 1, n)]
        sub = [row[s + 1:] for row in M[s + 1:]]
        k = n - s  # size of current block
        col = [one, -a]
        v = C
        for _ in range(k - 1):
            acc = zero
            for r, x in zip(R, v):
                acc = acc + r * x
            col.append(-acc)
            if len(col) > k:
                break
            v = [sum((row[t] * v[t] for t in range(len(v))), zero) for row in sub]
        col = col[: k + 1]
        # poly has length k; new poly = Toeplitz(col) (k+1 x k) @ poly
        new = []
        for i in range(k + 1):
            acc = zero
            for j in range(min(i, k - 1) + 1):
                acc = acc + col[i - j] * poly[j]
            new.append(acc)
        poly = new
    return poly


def determinant(M: Sequence, one=None):
    """Division-free determinant (Berkowitz)."""
    n, m = _shape(M)
    if n != m:
        raise NonSquare(f"{n}x{m} matrix")
    one = _one_like(M, one)
    if n == 0:
        return one
    c = charpoly(M, one)
    return c[-1] if n % 2 == 0 else -c[-1]


def det_cofactor(M: Sequence, one=None):
    """Laplace expansion along the first row; slow reference only."""
    n, m = _shape(M)
    if n != m:
        raise NonSquare(f"{n}x{m} matrix")
    one = _one_like(M, one)
    if n == 0:
        return one
    total = _zero_like(one)
    for j in range(n):
        if is_zero(M[0][j]):
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * det_cofactor(minor, one)
        total = total + term if j % 2 == 0 else total - term
    return total


def det_permutations(M: Sequence, one=None):
    """Leibniz formula; tiny matrices only."""
    n = len(M)
    one = _one_like(M, one)
    total = _zero_like(one)
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = one
        for i in range(n):
            term = term * M[i][perm[i]]
        total = total + term if sign > 0 else total - term
    return total


def _val(x) -> float:
    if isinstance(x, USeries):
        v = x.valuation()
        return v if v <= x.order else float("inf")
    return 0 if x else float("inf")


def _quotient_parts(x, p, v):
    """Return (x / p) for val(x) >= val(p) = v, exact to the precision it carries."""
    if isinstance(p, USeries):
        return x.shift(-v) * p.shift(-v).inverse()
    if isinstance(p, Gauss) or isinstance(x, Gauss):
        return Gauss.lift(x) * Gauss.lift(p).inverse()
    return Rational(x) / p


def _product_back(q, y, v):
    """q * y where q = x/p carries precision order-v and val(y) >= v."""
    if isinstance(y, USeries) and v:
        return (q * y.shift(-v)).raise_order(v)
    return q * y


def det_eliminate(M: Sequence, one=None):
    """Determinant by elimination with a minimal-valuation pivot.

    With p = u^v w (w a unit) of minimal valuation, every entry of the Schur
    complement a_ij - a_ik a_kj / p is known exactly modulo u^{N+1}: the
    quotient a_ik/p loses v orders of precision but is multiplied by a_kj,
    whose valuation is at least v.
    """
    n, m = _shape(M)
    if n != m:
        raise NonSquare(f"{n}x{m} matrix")
    one = _one_like(M, one)
    A = [list(row) for row in M]
    result = one
    size = n
    while size:
        best, bi, bj = float("inf"), -1, -1
        for i in range(size):
            for j in range(size):
                v = _val(A[i][j])
                if v < best:
                    best, bi, bj = v, i, j
                    if v == 0:
                        break
            if best == 0:
                break
        if best == float("inf"):
            return _zero_like(one)
        v = int(best)
        last = size - 1
        if bi != last:
            A[bi], A[last] = A[last], A[bi]
            result = -result
        if bj != last:
            for row in A:
                row[bj], row[last] = row[last], row[bj]
            result = -result
        p = A[last][last]
        result = result * p
        prow = A[last]
        for i in range(last):
            x = A[i][last]
            if is_zero(x):
                continue
            q = _quotient_parts(x, p, v)
            Ai = A[i]
            for j in range(last):
                y = prow[j]
                if is_zero(y):
                    continue
                Ai[j] = Ai[j] - _product_back(q, y, v)
        A = [row[:last] for row in A[:last]]
        size = last
    return result


# -- pfaffians --------------------------------------------------------------


def _check_antisymmetric(A):
    if not is_antisymmetric(A):
        raise NotAntisymmetric("matrix is not antisymmetric")


def pfaffian(A: Sequence, one=None, check: bool = True):
    """Pfaffian by memoized expansion along the lowest remaining index.

    Odd dimension gives 0 and the empty matrix gives 1.
    """
    n, m = _shape(A)
    if n != m:
        raise NonSquare(f"{n}x{m} matrix")
    if check:
        _check_antisymmetric(A)
    one = _one_like(A, one)
    zero = _zero_like(one)
    if n % 2:
        return zero
    memo: dict[int, object] = {0: one}

    def pf(mask: int):
        if mask in memo:
            return memo[mask]
        idx = [i for i in range(n) if mask >> i & 1]
        i0 = idx[0]
        rest = mask & ~(1 << i0)
        total = zero
        for pos, j in enumerate(idx[1:]):
            a = A[i0][j]
            if is_zero(a):
                continue
            term = a * pf(rest & ~(1 << j))
            total = total + term if pos % 2 == 0 else total - term
        memo[mask] = total
        return total

    return pf((1 << n) - 1)


def pf_eliminate(A: Sequence, one=None, check: bool = True):
    """Pfaffian by skew elimination on a minimal-valuation pivot pair.

    pf([[D, E], [-E^t, C]]) = pf(D) pf(C + E^t D^{-1} E) with D the 2x2 pivot
    block; exactness modulo u^{N+1} follows as for ``det_eliminate``.
    """
    n, m = _shape(A)
    if n != m:
        raise NonSquare(f"{n}x{m} matrix")
    if check:
        _check_antisymmetric(A)
    one = _one_like(A, one)
    zero = _zero_like(one)
    if n % 2:
        return zero
    B = [list(row) for row in A]
    idx = list(range(n))
    result = one
    while idx:
        best, bi, bj = float("inf"), -1, -1
        for s in range(len(idx)):
            row = B[idx[s]]
            for t in range(s + 1, len(idx)):
                v = _val(row[idx[t]])
                if v < best:
                    best, bi, bj = v, s, t
                    if v == 0:
                        break
            if best == 0:
                break
        if best == float("inf"):
            return zero
        v = int(best)
        i, j = idx[bi], idx[bj]
        if (bi + bj - 1) % 2:
            result = -result
        p = B[i][j]
        result = result * p
        rest = [k for k in idx if k != i and k != j]
        # quotients E_ik / p and E_jk / p
        qi = {k: _quotient_parts(B[i][k], p, v) for k in rest if not is_zero(B[i][k])}
        qj = {k: _quotient_parts(B[j][k], p, v) for k in rest if not is_zero(B[j][k])}
        for a_pos, k in enumerate(rest):
            for l in rest[a_pos + 1:]:
                # (E^t D^{-1} E)_{kl} = (E_jk E_il - E_ik E_jl) / p
                upd = None
                if k in qj and not is_zero(B[i][l]):
                    t = _product_back(qj[k], B[i][l], v)
                    upd = t
                if k in qi and not is_zero(B[j][l]):
                    t = _product_back(qi[k], B[j][l], v)
                    upd = -t if upd is None else upd - t
                if upd is not None:
                    val = B[k][l] + upd
                    B[k][l] = val
                    B[l][k] = -val
        idx = rest
    return result


def _has_series(A) -> bool:
    return any(isinstance(x, USeries) for row in A for x in row)


def pfaffian_auto(A: Sequence, one=None, check: bool = True):
    """Pfaffian by the expansion for small series matrices, elimination otherwise.

    Over a field (scalar entries) elimination is exact at any size.
    """
    if len(A) <= (12 if _has_series(A) else 4):
        return pfaffian(A, one, check)
    return pf_eliminate(A, one, check)


def det_auto(M: Sequence, one=None):
    if len(M) <= (8 if _has_series(M) else 4):
        return determinant(M, one)
    return det_eliminate(M, one)


# -- inverses and restrictions ---------------------------------------------


def adjugate(M: Sequence, one=None) -> Matrix:
    """Division-free adjugate via Cayley-Hamilton on the Berkowitz polynomial."""
    n, m = _shape(M)
    if n != m:
        raise NonSquare(f"{n}x{m} matrix")
    one = _one_like(M, one)
    if n == 0:
        return []
    c = charpoly(M, one)
    # adj(M) = (-1)^{n+1} (M^{n-1} + c1 M^{n-2} + ... + c_{n-1} I)
    acc = identity(n, one)
    for k in range(1, n):
        acc = madd(matmul(M, acc), mscale(identity(n, one), c[k]))
    return acc if n % 2 == 1 else mscale(acc, -1)


def inverse_unit(M: Sequence, one=None) -> Matrix:
    """Inverse as adjugate / det; requires a unit determinant."""
    one = _one_like(M, one)
    d = determinant(M, one)
    if isinstance(d, USeries):
        if not d.is_unit():
            raise SingularConstantTerm("determinant has zero constant term")
        dinv = d.inverse()
    else:
        if not d:
            raise SingularConstantTerm("singular matrix")
        dinv = Gauss.lift(d).inverse() if isinstance(d, Gauss) else ONE / d
    return [[x * dinv for x in row] for row in adjugate(M, one)]


def principal_minor(M: Sequence, m: int) -> Matrix:
    n, k = _shape(M)
    if m < 0 or m > min(n, k):
        raise IndexOutOfRange(m)
    return [list(row[:m]) for row in M[:m]]


def submatrix(M: Sequence, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return [[M[i][j] for j in cols] for i in rows]


def block_restrict(kernel, points: Sequence, cols: Sequence | None = None) -> Matrix:
    """Assemble K(S) (or K(S, S')) from a block-valued kernel.

    ``kernel(a, b)`` returns a k x k block (list of lists) or a scalar, which
    is treated as a 1 x 1 block.
    """
    rows = list(points)
    cols = rows if cols is None else list(cols)
    for pts in (rows, cols):
        if len(set(pts)) != len(pts):
            raise DuplicateIndex("repeated point in restriction")
    out: Matrix = []
    for a in rows:
        blocks = [kernel(a, b) for b in cols]
        blocks = [b if isinstance(b, list) else [[b]] for b in blocks]
        k = len(blocks[0]) if blocks else 1
        for r in range(k):
            line = []
            for b in blocks:
                line.extend(b[r])
            out.append(line)
    return out


def block_diag(*mats) -> Matrix:
    n = sum(len(m) for m in mats)
    zero = None
    for m in mats:
        for row in m:
            for x in row:
                zero = x * 0
                break
            break
        if zero is not None:
            break
    zero = ZERO if zero is None else zero
    out = [[zero] * n for _ in range(n)]
    off = 0
    for m in mats:
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(m)
    return out
