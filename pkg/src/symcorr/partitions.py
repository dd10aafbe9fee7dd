"""Partitions, descent sets and Schur weights from the dual Jacobi-Trudi determinant.

A partition is a plain tuple of weakly decreasing positive ints; the empty
tuple is the empty partition.  The descent set T(l) = {l_i - i : i >= 1}
contains a whole negative ray, so it is only ever exposed through a
membership predicate and finite windows.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from .exact import ESequence, ParameterSet, USeries, ZERO, e_sequence
from .linalg import determinant

Partition = tuple


class FrobeniusCoords(NamedTuple):
    alpha: tuple
    beta: tuple


def make_partition(parts) -> Partition:
    parts = tuple(int(x) for x in parts)
    if any(x < 0 for x in parts):
        raise ValueError("partition parts must be nonnegative")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"parts must be weakly decreasing: {parts}")
    return tuple(x for x in parts if x)


def weight(lam: Partition) -> int:
    return sum(lam)


@lru_cache(maxsize=None)
def _partitions_of(n: int, bound: int) -> tuple:
    """Partitions of n with largest part <= bound, reverse lexicographic."""
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, bound), 0, -1):
        for rest in _partitions_of(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(n: int) -> list:
    return list(_partitions_of(n, n))


def enumerate_partitions(max_weight: int) -> list:
    """All partitions of weight <= max_weight.

    Order: by weight, then reverse lexicographic within a weight, e.g.
    (), (1,), (2,), (1,1), (3,), (2,1), (1,1,1), ...
    """
    if max_weight < 0:
        raise ValueError("max_weight must be >= 0")
    out = []
    for n in range(max_weight + 1):
        out.extend(_partitions_of(n, n))
    return out


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def part(lam: Partition, i: int) -> int:
    """lambda_i with 1-based i, zero past the length."""
    return lam[i - 1] if i <= len(lam) else 0


def frobenius(lam: Partition) -> FrobeniusCoords:
    conj = conjugate(lam)
    d = sum(1 for i, x in enumerate(lam, 1) if x >= i)
    return FrobeniusCoords(tuple(lam[i] - i - 1 for i in range(d)),
                           tuple(conj[i] - i - 1 for i in range(d)))


def from_frobenius(coords: FrobeniusCoords) -> Partition:
    a, b = tuple(coords[0]), tuple(coords[1])
    if len(a) != len(b):
        raise ValueError("Frobenius coordinates of unequal length")
    d = len(a)
    if any(a[i] <= a[i + 1] for i in range(d - 1)) or any(b[i] <= b[i + 1] for i in range(d - 1)):
        raise ValueError("Frobenius coordinates must be strictly decreasing")
    if d and (a[-1] < 0 or b[-1] < 0):
        raise ValueError("Frobenius coordinates must be nonnegative")
    # arm lengths fix the first d rows; leg lengths fix the first d columns
    rows = [a[i] + i + 1 for i in range(d)]
    cols = [b[i] + i + 1 for i in range(d)]
    length = cols[0] if d else 0
    out = rows[:]
    for r in range(d, length):
        out.append(sum(1 for c in cols if c > r))
    return make_partition(out)


FROB_MINUS = "FrobMinus"
FROB_PLUS = "FrobPlus"
FROB_ZERO = "FrobZero"
OTHER = "Other"

_SHIFT = {FROB_MINUS: -1, FROB_PLUS: 1, FROB_ZERO: 0}


def in_shape_class(lam: Partition, kind: str) -> bool:
    """Whether lam = (b+s | b) with s = -1, +1, 0 for the three named classes.

    The empty partition belongs to every class.
    """
    a, b = frobenius(lam)
    s = _SHIFT[kind]
    return all(x == y + s for x, y in zip(a, b))


def shape_class(lam: Partition) -> tuple:
    """(class name, number of Frobenius parts).

    The empty partition lies in all three classes; it is reported as
    FrobZero, use :func:`in_shape_class` for membership tests.
    """
    d = len(frobenius(lam).alpha)
    for kind in (FROB_ZERO, FROB_MINUS, FROB_PLUS):
        if in_shape_class(lam, kind):
            return kind, d
    return OTHER, d


def frobenius_rank(lam: Partition) -> int:
    return len(frobenius(lam).alpha)


def descent_membership(lam: Partition, a: int) -> bool:
    n = len(lam)
    if a <= -n - 1:
        return True
    return any(lam[i] - i - 1 == a for i in range(n))


def descent_window(lam: Partition, lo: int, hi: int) -> frozenset:
    """T(lam) intersected with [lo, hi]."""
    n = len(lam)
    pts = {lam[i] - i - 1 for i in range(n)}
    pts.update(range(lo, min(hi, -n - 1) + 1))
    return frozenset(x for x in pts if lo <= x <= hi)


def balance_check(lam: Partition) -> tuple:
    """(|T cap {0,1,...}|, |{-1,-2,...} minus T|)."""
    n = len(lam)
    nonneg = sum(1 for i in range(n) if lam[i] - i - 1 >= 0)
    missing = sum(1 for a in range(-n, 0) if not descent_membership(lam, a))
    return nonneg, missing


def partition_stats(lam: Partition) -> tuple:
    """(even parts of the conjugate, odd parts of lam, weight)."""
    conj = conjugate(lam)
    return (sum(1 for x in conj if x % 2 == 0),
            sum(1 for x in lam if x % 2),
            sum(lam))


def odd_parts(lam: Partition) -> int:
    return sum(1 for x in lam if x % 2)


def even_parts(lam: Partition) -> int:
    return sum(1 for x in lam if x % 2 == 0)


def _as_sequence(p, size: int) -> ESequence:
    if isinstance(p, ParameterSet):
        return e_sequence(p, size)
    if isinstance(p, ESequence):
        return p
    raise TypeError("expected a ParameterSet or ESequence")


def dual_jacobi_trudi(lam: Partition, seq: ESequence):
    """Scalar det(e_{lam_k - k + j})_{j,k} = s_{lam'} for the given e-sequence."""
    n = len(lam)
    if not n:
        return 1
    need = lam[0] + n - 1
    if isinstance(seq, ESequence) and seq.order < need:
        raise ValueError(f"e-sequence too short: need order {need}")
    M = [[seq[lam[k] - k + j] if lam[k] - k + j >= 0 else ZERO for k in range(n)]
         for j in range(n)]
    return determinant(M)


def schur_dual_weight(lam: Partition, p, order: int) -> USeries:
    """u^{|lam|} s_{lam'}(p) as a series of the given order.

    ``p`` is a ParameterSet or an explicit e-sequence (for substituted
    specializations); the e_j are graded by u^j, so the whole determinant is
    homogeneous of degree |lam|.
    """
    w = sum(lam)
    if w > order:
        return USeries.zero(order)
    seq = _as_sequence(p, max(w, 1))
    return USeries.monomial(dual_jacobi_trudi(lam, seq), w, order)
