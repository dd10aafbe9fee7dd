"""Exact scalars, truncated u-series and parameter sets.

Every quantity in the package lives in the ring Q(i)[u]/(u^{N+1}).  The
grading variable ``u`` scales the specialization (e_j -> u^j e_j) and the
auxiliary parameters alpha, beta (each carries one power of u), which is what
makes all the infinite kernel sums terminate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

Rational = type(mpq(0))

ZERO = mpq(0)
ONE = mpq(1)


class InvertNonUnit(ArithmeticError):
    """Raised when inverting a series whose constant term vanishes."""


def rational(x) -> Rational:
    """Coerce int, str ("n/d"), Fraction or mpq into an exact rational."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational string")
        if "." in s or "e" in s.lower():
            raise ValueError(f"not an exact rational: {x!r}")
        return mpq(s)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def format_rational(x: Rational) -> str:
    return str(mpq(x))


class Gauss:
    """Gaussian rational re + im*i with exact parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = rational(re)
        self.im = rational(im)

    @staticmethod
    def lift(x) -> "Gauss":
        if isinstance(x, Gauss):
            return x
        return Gauss(x, 0)

    def __add__(self, other):
        if isinstance(other, Gauss):
            return Gauss(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Rational)):
            return Gauss(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, Gauss):
            return Gauss(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Rational)):
            return Gauss(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Gauss):
            return Gauss(self.re * other.re - self.im * other.im,
                         self.re * other.im + self.im * other.re)
        if isinstance(other, (int, Rational)):
            return Gauss(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> "Gauss":
        return Gauss(self.re, -self.im)

    def norm(self) -> Rational:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "Gauss":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("Gaussian rational zero has no inverse")
        return Gauss(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, Gauss):
            return self * other.inverse()
        if isinstance(other, (int, Rational)):
            return Gauss(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Gauss(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Gauss):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"Gauss({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"


I = Gauss(0, 1)


def split_parts(x) -> tuple[Rational, Rational]:
    if isinstance(x, Gauss):
        return x.re, x.im
    return rational(x), ZERO


def _conv(a: Sequence, b: Sequence, n: int) -> list:
    out = [ZERO] * (n + 1)
    lb = len(b)
    for i, ai in enumerate(a):
        if i > n:
            break
        if not ai:
            continue
        for j in range(min(n - i + 1, lb)):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


class USeries:
    """Power series in ``u`` truncated after ``u^order``, Gaussian rational coefficients.

    Real and imaginary parts are stored separately; ``im`` is ``None`` for a
    real series, so the common real case never pays for complex arithmetic.
    """

    __slots__ = ("order", "re", "im")

    def __init__(self, coeffs: Iterable = (), order: int = 0):
        if order < 0:
            raise ValueError("order must be >= 0")
        re = [ZERO] * (order + 1)
        im = [ZERO] * (order + 1)
        for k, c in enumerate(coeffs):
            if k > order:
                break
            re[k], im[k] = split_parts(c)
        self.order = order
        self.re = tuple(re)
        self.im = tuple(im) if any(im) else None

    @classmethod
    def _raw(cls, re, im, order: int) -> "USeries":
        s = cls.__new__(cls)
        s.order = order
        s.re = tuple(re)
        s.im = tuple(im) if (im is not None and any(im)) else None
        return s

    @classmethod
    def from_parts(cls, re: Sequence, im: Sequence | None, order: int) -> "USeries":
        re = [rational(x) for x in re][: order + 1]
        re += [ZERO] * (order + 1 - len(re))
        if im is not None:
            im = [rational(x) for x in im][: order + 1]
            im += [ZERO] * (order + 1 - len(im))
        return cls._raw(re, im, order)

    @classmethod
    def zero(cls, order: int) -> "USeries":
        return cls._raw((ZERO,) * (order + 1), None, order)

    @classmethod
    def one(cls, order: int) -> "USeries":
        return cls.const(1, order)

    @classmethod
    def const(cls, c, order: int) -> "USeries":
        return cls.monomial(c, 0, order)

    @classmethod
    def monomial(cls, c, k: int, order: int) -> "USeries":
        """``c * u^k`` (zero when k exceeds the order)."""
        if k < 0:
            raise ValueError("negative u-power")
        re = [ZERO] * (order + 1)
        im = [ZERO] * (order + 1)
        if k <= order:
            re[k], im[k] = split_parts(c)
        return cls._raw(re, im, order)

    # -- inspection -------------------------------------------------------

    def coeff(self, k: int):
        """Coefficient of u^k as a rational, or a Gauss when non-real."""
        if k < 0 or k > self.order:
            raise IndexError(k)
        if self.im is None or self.im[k] == 0:
            return self.re[k]
        return Gauss(self.re[k], self.im[k])

    def coeffs(self) -> list:
        return [self.coeff(k) for k in range(self.order + 1)]

    def is_real(self) -> bool:
        return self.im is None

    def is_zero(self) -> bool:
        return not any(self.re) and self.im is None

    def valuation(self) -> int:
        """Lowest nonzero u-power, or ``order + 1`` for the zero series."""
        for k in range(self.order + 1):
            if self.re[k] or (self.im is not None and self.im[k]):
                return k
        return self.order + 1

    def is_unit(self) -> bool:
        return bool(self.re[0]) or (self.im is not None and bool(self.im[0]))

    def truncate(self, order: int) -> "USeries":
        if order > self.order:
            raise ValueError("cannot raise the truncation order of a series")
        im = None if self.im is None else self.im[: order + 1]
        return USeries._raw(self.re[: order + 1], im, order)

    def shift(self, k: int) -> "USeries":
        """Multiply by u^k (k >= 0) or divide by u^{-k}, keeping the order.

        A negative shift requires the low coefficients to vanish and loses
        precision: the result is only meaningful up to ``order + k``.
        """
        n = self.order
        if k >= 0:
            pad = (ZERO,) * k
            re = (pad + self.re)[: n + 1]
            im = None if self.im is None else (pad + self.im)[: n + 1]
            return USeries._raw(re, im, n)
        k = -k
        if self.valuation() < k:
            raise ValueError("series not divisible by the requested power of u")
        m = n - k
        re = self.re[k:]
        im = None if self.im is None else self.im[k:]
        return USeries._raw(re, im, m)

    def raise_order(self, k: int) -> "USeries":
        """Multiply by u^k and extend the order by k (inverse of ``shift(-k)``)."""
        if k < 0:
            raise ValueError("negative u-power")
        pad = (ZERO,) * k
        im = None if self.im is None else pad + self.im
        return USeries._raw(pad + self.re, im, self.order + k)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "USeries | None":
        if isinstance(other, USeries):
            return other
        if isinstance(other, (int, Rational, Gauss, Fraction)):
            return USeries.const(other, self.order)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        re = [self.re[k] + o.re[k] for k in range(n + 1)]
        im = None
        if self.im is not None or o.im is not None:
            a = self.im or (ZERO,) * (self.order + 1)
            b = o.im or (ZERO,) * (o.order + 1)
            im = [a[k] + b[k] for k in range(n + 1)]
        return USeries._raw(re, im, n)

    __radd__ = __add__

    def __neg__(self):
        im = None if self.im is None else [-x for x in self.im]
        return USeries._raw([-x for x in self.re], im, self.order)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "USeries":
        cr, ci = split_parts(c)
        if ci == 0:
            im = None if self.im is None else [cr * x for x in self.im]
            return USeries._raw([cr * x for x in self.re], im, self.order)
        a, b = self.re, self.im or (ZERO,) * (self.order + 1)
        re = [cr * a[k] - ci * b[k] for k in range(self.order + 1)]
        im = [cr * b[k] + ci * a[k] for k in range(self.order + 1)]
        return USeries._raw(re, im, self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Rational, Gauss, Fraction)):
            return self.scale(other)
        if not isinstance(other, USeries):
            return NotImplemented
        n = min(self.order, other.order)
        rr = _conv(self.re, other.re, n)
        if self.im is None and other.im is None:
            return USeries._raw(rr, None, n)
        im = [ZERO] * (n + 1)
        if self.im is not None and other.im is not None:
            ii = _conv(self.im, other.im, n)
            rr = [x - y for x, y in zip(rr, ii)]
        if self.im is not None:
            im = [x + y for x, y in zip(im, _conv(self.im, other.re, n))]
        if other.im is not None:
            im = [x + y for x, y in zip(im, _conv(self.re, other.im, n))]
        return USeries._raw(rr, im, n)

    __rmul__ = __mul__

    def inverse(self) -> "USeries":
        if not self.is_unit():
            raise InvertNonUnit("series has zero constant term")
        n = self.order
        c0 = self.coeff(0)
        inv0 = (Gauss.lift(c0).inverse() if isinstance(c0, Gauss) else ONE / c0)
        if self.im is None:
            b = [ZERO] * (n + 1)
            b[0] = inv0
            a = self.re
            for m in range(1, n + 1):
                s = ZERO
                for k in range(1, m + 1):
                    if a[k]:
                        s += a[k] * b[m - k]
                b[m] = -s * inv0
            return USeries._raw(b, None, n)
        a = [self.coeff(k) for k in range(n + 1)]
        b = [Gauss(0)] * (n + 1)
        b[0] = Gauss.lift(inv0)
        for m in range(1, n + 1):
            s = Gauss(0)
            for k in range(1, m + 1):
                if a[k]:
                    s = s + a[k] * b[m - k]
            b[m] = -(s * b[0])
        return USeries(b, n)

    invert = inverse

    def __truediv__(self, other):
        if isinstance(other, USeries):
            return self * other.inverse()
        if isinstance(other, (int, Rational, Fraction)):
            return self.scale(ONE / rational(other))
        if isinstance(other, Gauss):
            return self.scale(other.inverse())
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = USeries.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Rational, Gauss, Fraction)):
            other = USeries.const(other, self.order)
        if not isinstance(other, USeries):
            return NotImplemented
        n = min(self.order, other.order)
        if self.re[: n + 1] != other.re[: n + 1]:
            return False
        a = self.im[: n + 1] if self.im is not None else (ZERO,) * (n + 1)
        b = other.im[: n + 1] if other.im is not None else (ZERO,) * (n + 1)
        return a == b

    def __hash__(self):
        return hash((self.order, self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"USeries({self!s}, order={self.order})"

    def __str__(self):
        terms = []
        for k in range(self.order + 1):
            c = self.coeff(k)
            if not c:
                continue
            terms.append((k, c))
        if not terms:
            return "0"
        out = ""
        for k, c in terms:
            neg = not isinstance(c, Gauss) and c < 0
            mag = -c if neg else c
            if k == 0:
                body = str(mag)
            elif mag == 1:
                body = "u" if k == 1 else f"u^{k}"
            else:
                body = f"{mag}*u" if k == 1 else f"{mag}*u^{k}"
            if not out:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    def to_json(self) -> dict:
        im = self.im or (ZERO,) * (self.order + 1)
        return {"order": self.order,
                "re": [format_rational(x) for x in self.re],
                "im": [format_rational(x) for x in im]}

    @classmethod
    def from_json(cls, obj: dict) -> "USeries":
        order = int(obj["order"])
        im = obj.get("im")
        return cls.from_parts(obj["re"], im, order)


def as_series(x, order: int) -> USeries:
    if isinstance(x, USeries):
        return x
    return USeries.const(x, order)


def graded_power(value, k: int, order: int) -> USeries:
    """``(value*u)^k`` with the convention 0^0 = 1."""
    if k < 0:
        raise ValueError("negative exponent of a graded scalar")
    if isinstance(value, Gauss):
        c = value ** k
    else:
        c = rational(value) ** k if k else ONE
    return USeries.monomial(c, k, order)


# -- parameter sets ---------------------------------------------------------


@dataclass(frozen=True)
class ParameterSet:
    """Specialization E(z;p) = prod(1+q z) / prod(1-r z) * exp(gamma z)."""

    q: tuple = ()
    r: tuple = ()
    gamma: Rational = field(default=ZERO)

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(rational(x) for x in self.q))
        object.__setattr__(self, "r", tuple(rational(x) for x in self.r))
        object.__setattr__(self, "gamma", rational(self.gamma))

    def union(self, other: "ParameterSet") -> "ParameterSet":
        return ParameterSet(self.q + other.q, self.r + other.r, self.gamma + other.gamma)

    def adjoin_q(self, beta) -> "ParameterSet":
        return ParameterSet(self.q + (rational(beta),), self.r, self.gamma)

    def adjoin_r(self, alpha) -> "ParameterSet":
        return ParameterSet(self.q, self.r + (rational(alpha),), self.gamma)

    def is_empty(self) -> bool:
        return not self.q and not self.r and self.gamma == 0

    def to_json(self) -> dict:
        return {"q": [format_rational(x) for x in self.q],
                "r": [format_rational(x) for x in self.r],
                "gamma": format_rational(self.gamma)}

    @classmethod
    def from_json(cls, obj: dict | None) -> "ParameterSet":
        obj = obj or {}
        unknown = set(obj) - {"q", "r", "gamma"}
        if unknown:
            raise ValueError(f"unknown parameter keys: {sorted(unknown)}")
        return cls(tuple(obj.get("q", ())), tuple(obj.get("r", ())), obj.get("gamma", 0))


EMPTY = ParameterSet()


def conjugate_params(p: ParameterSet) -> ParameterSet:
    """Conjugate specialization: E(z;p') equals the h-generating function of p."""
    return ParameterSet(p.r, p.q, p.gamma)


@dataclass(frozen=True)
class ESequence:
    """Coefficients [z^j] of a generating function with constant term 1.

    Coefficients are rationals, or Gauss values for substituted sequences.
    Downstream consumers attach u^j to the j-th coefficient.
    """

    coeffs: tuple

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, j):
        if isinstance(j, slice):
            return self.coeffs[j]
        if j < 0 or j >= len(self.coeffs):
            return ZERO
        return self.coeffs[j]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def convolve(self, other: "ESequence") -> "ESequence":
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            s = ZERO
            for j in range(k + 1):
                s = s + self.coeffs[j] * other.coeffs[k - j]
            out.append(s)
        return ESequence(tuple(out))

    def inverse(self) -> "ESequence":
        a = self.coeffs
        if a[0] != 1:
            raise InvertNonUnit("e-sequence must start with 1")
        b = [ONE]
        for m in range(1, len(a)):
            s = ZERO
            for k in range(1, m + 1):
                if a[k]:
                    s = s + a[k] * b[m - k]
            b.append(-s)
        return ESequence(tuple(b))

    def substitute(self, c, step: int) -> "ESequence":
        """Sequence of E(c * z^step), same order."""
        out = [ZERO] * (self.order + 1)
        for j, x in enumerate(self.coeffs):
            if j * step > self.order:
                break
            out[j * step] = (c ** j) * x if j else x
        return ESequence(tuple(out))

    def times_geometric(self, alpha) -> "ESequence":
        """Sequence of E(z)/(1 - alpha z): adjoin alpha as an r-parameter."""
        a = rational(alpha)
        out, acc = [], ZERO
        for x in self.coeffs:
            acc = acc * a + x
            out.append(acc)
        return ESequence(tuple(out))

    def times_linear(self, beta) -> "ESequence":
        """Sequence of E(z)(1 + beta z): adjoin beta as a q-parameter."""
        b = rational(beta)
        c = self.coeffs
        return ESequence(tuple(c[j] + (b * c[j - 1] if j else ZERO) for j in range(len(c))))


def e_sequence(p: ParameterSet, order: int) -> ESequence:
    """[z^j] E(z;p) for 0 <= j <= order."""
    if order < 0:
        raise ValueError("order must be >= 0")
    coeffs = [ONE] + [ZERO] * order
    seq = ESequence(tuple(coeffs))
    for q in p.q:
        seq = seq.times_linear(q)
    for r in p.r:
        seq = seq.times_geometric(r)
    if p.gamma:
        expo = ESequence(tuple(p.gamma ** j / math.factorial(j) for j in range(order + 1)))
        seq = seq.convolve(expo)
    return seq


def e_inverse_sequence(p: ParameterSet, order: int) -> ESequence:
    """[z^j] E(z;p)^{-1}."""
    return e_sequence(p, order).inverse()


def graded_series(seq: ESequence, order: int) -> USeries:
    """E(u) as a u-series: the j-th coefficient sits at u^j."""
    return USeries([seq[j] for j in range(min(order, seq.order) + 1)], order)
