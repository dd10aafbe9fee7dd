"""Correlation functions of finite pfaffian and determinantal models.

A :class:`FiniteModel` is a finite measure space (points with rational
weights), a family of functions on it and a pairing.  Five variants are
supported:

``pf``        one space, 2m functions phi, antisymmetric pairing eps
``pf2``       spaces X, Y, 2m functions phi on X and psi on Y, pairing kappa
``pf-self``   one space, 2m functions phi and psi, no pairing
``det2``      spaces X, Y, m functions phi on X and psi on Y, pairing kappa
``det``       one space, m functions phi and psi, no pairing

For each variant the correlation of a finite set can be computed from the
defining sum over completions (``correlation_direct``) or as a pfaffian or
determinant of the closed-form kernel (``correlation_closed``).  The two
must agree exactly.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import product

from .exact import ONE, ZERO, Gauss, rational
from .linalg import (determinant, det_auto, inverse_unit, pfaffian, pfaffian_auto, transpose,
                     block_restrict, SingularConstantTerm)

VARIANTS = ("pf", "pf2", "pf-self", "det2", "det")


class SingularGram(ArithmeticError):
    pass


def _vec(xs):
    return tuple(x if isinstance(x, Gauss) else rational(x) for x in xs)


@dataclass(frozen=True)
class FiniteModel:
    """Finite model; functions are tuples of values aligned with the point tuples.

    ``pairing`` is eps on X x X (variant ``pf``) or kappa on X x Y (``pf2``,
    ``det2``), given as a nested tuple indexed by point positions.
    """

    variant: str
    points: tuple
    weights: tuple
    phi: tuple
    psi: tuple = ()
    pairing: tuple = ()
    y_points: tuple = ()
    y_weights: tuple = ()

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        set_ = object.__setattr__
        set_(self, "weights", _vec(self.weights))
        set_(self, "y_weights", _vec(self.y_weights))
        set_(self, "phi", tuple(_vec(f) for f in self.phi))
        set_(self, "psi", tuple(_vec(f) for f in self.psi))
        set_(self, "pairing", tuple(_vec(r) for r in self.pairing))
        if len(set(self.points)) != len(self.points):
            raise ValueError("repeated point labels")
        if self.two_space and not self.y_points:
            raise ValueError("two-space variant needs Y points")
        if not self.two_space:
            set_(self, "y_points", self.points)
            set_(self, "y_weights", self.weights)
        for f in self.phi:
            if len(f) != len(self.points):
                raise ValueError("phi has wrong length")
        for f in self.psi:
            if len(f) != len(self.y_points):
                raise ValueError("psi has wrong length")
        if self.variant != "pf" and len(self.psi) != len(self.phi):
            raise ValueError("phi and psi must have the same size")
        if self.variant in ("pf", "pf2", "pf-self") and len(self.phi) % 2:
            raise ValueError("pfaffian variants need an even number of functions")
        if self.variant == "pf":
            e = self.pairing
            n = len(self.points)
            if any(e[i][j] != -e[j][i] for i in range(n) for j in range(n)):
                raise ValueError("eps must be antisymmetric")

    @property
    def two_space(self) -> bool:
        return self.variant in ("pf2", "det2")

    @property
    def pfaffian_type(self) -> bool:
        return self.variant in ("pf", "pf2", "pf-self")

    @property
    def config_size(self) -> int:
        """Points per configuration in each space (half the functions for pfaffian variants)."""
        n = len(self.phi)
        if self.variant == "pf":
            return n
        return n // 2 if self.pfaffian_type else n

    def x_index(self, label) -> int:
        return self.points.index(label)

    def y_index(self, label) -> int:
        return self.y_points.index(label)


def self_paired_as_two_space(model: FiniteModel) -> FiniteModel:
    """The ``pf-self`` model as a ``pf2`` model with Y = X and kappa = delta/weight."""
    if model.variant != "pf-self":
        raise ValueError("expected a pf-self model")
    n = len(model.points)
    kappa = tuple(tuple(ONE / model.weights[i] if i == j else ZERO for j in range(n))
                  for i in range(n))
    return FiniteModel("pf2", model.points, model.weights, model.phi, model.psi, kappa,
                       model.points, model.weights)


def union_model(model: FiniteModel) -> FiniteModel:
    """The ``pf`` model on X with eps = kappa - kappa^t for a pf2 model with Y = X, psi = phi."""
    if model.variant != "pf2" or model.y_points != model.points or model.psi != model.phi:
        raise ValueError("expected a pf2 model with Y = X and psi = phi")
    k = model.pairing
    n = len(model.points)
    eps = tuple(tuple(k[i][j] - k[j][i] for j in range(n)) for i in range(n))
    return FiniteModel("pf", model.points, model.weights, model.phi, (), eps)


# -- gram matrix ------------------------------------------------------------


def gram_matrix(model: FiniteModel) -> list:
    phi, psi, w, wy = model.phi, model.psi, model.weights, model.y_weights
    n, ny = len(model.points), len(model.y_points)
    r = len(phi)
    P = model.pairing
    M = [[ZERO] * r for _ in range(r)]
    for j in range(r):
        for k in range(r):
            acc = ZERO
            v = model.variant
            if v == "pf":
                for x in range(n):
                    for y in range(n):
                        if P[x][y]:
                            acc += phi[j][x] * P[x][y] * phi[k][y] * w[x] * w[y]
            elif v == "pf2":
                for x in range(n):
                    for y in range(ny):
                        if P[x][y]:
                            acc += (phi[j][x] * psi[k][y] - phi[k][x] * psi[j][y]) * P[x][y] * w[x] * wy[y]
            elif v == "pf-self":
                for x in range(n):
                    acc += (phi[j][x] * psi[k][x] - phi[k][x] * psi[j][x]) * w[x]
            elif v == "det2":
                for x in range(n):
                    for y in range(ny):
                        if P[x][y]:
                            acc += phi[j][x] * P[x][y] * psi[k][y] * w[x] * wy[y]
            else:
                for x in range(n):
                    acc += phi[j][x] * psi[k][x] * w[x]
            M[j][k] = acc
    return M


def gram_normalizer(model: FiniteModel):
    """pf(M) for pfaffian variants, det(M) otherwise."""
    M = gram_matrix(model)
    return pfaffian(M) if model.pfaffian_type else determinant(M)


# -- closed kernel ----------------------------------------------------------


class ClosedKernel:
    """Kernel of a finite model, callable on point labels.

    Pfaffian variants return 2x2 blocks; determinantal ones return scalars.
    Two-space variants take tagged points ``(0, x)`` for x in X and
    ``(1, y)`` for y in Y.
    """

    def __init__(self, model: FiniteModel):
        self.model = model
        self._cache = {}
        M = gram_matrix(model)
        try:
            self.Mt = transpose(inverse_unit(M))
        except SingularConstantTerm as exc:
            raise SingularGram("gram matrix is singular") from exc
        w, wy = model.weights, model.y_weights
        n, ny = len(model.points), len(model.y_points)
        P = model.pairing
        r = len(model.phi)
        # function values per point, as vectors over j
        self.phi_at = [tuple(model.phi[j][x] for j in range(r)) for x in range(n)]
        self.psi_at = [tuple(model.psi[j][y] for j in range(r)) for y in range(ny)] if model.psi else []
        if model.variant == "pf":
            self.eps_phi = [tuple(sum((P[x][y] * model.phi[j][y] * w[y] for y in range(n)), ZERO)
                                  for j in range(r)) for x in range(n)]
        if model.two_space:
            self.k_psi = [tuple(sum((P[x][y] * model.psi[j][y] * wy[y] for y in range(ny)), ZERO)
                                for j in range(r)) for x in range(n)]
            self.kt_phi = [tuple(sum((P[x][y] * model.phi[j][x] * w[x] for x in range(n)), ZERO)
                                 for j in range(r)) for y in range(ny)]

    def bil(self, a, b):
        Mt = self.Mt
        acc = ZERO
        for j, aj in enumerate(a):
            if not aj:
                continue
            row = Mt[j]
            for k, bk in enumerate(b):
                if bk:
                    acc = acc + aj * row[k] * bk
        return acc

    def __call__(self, a, b):
        key = (a, b)
        if key not in self._cache:
            self._cache[key] = self._entry(a, b)
        return self._cache[key]

    def _entry(self, a, b):
        md = self.model
        v = md.variant
        bil = self.bil
        if v == "pf":
            x, y = md.x_index(a), md.x_index(b)
            f, g = self.phi_at, self.eps_phi
            return [[bil(f[x], f[y]), bil(f[x], g[y])],
                    [bil(g[x], f[y]), -md.pairing[x][y] + bil(g[x], g[y])]]
        if v == "pf-self":
            x, y = md.x_index(a), md.x_index(b)
            f, g = self.phi_at, self.psi_at
            return [[bil(f[x], f[y]), bil(f[x], g[y])],
                    [bil(g[x], f[y]), bil(g[x], g[y])]]
        if v == "det":
            return bil(self.phi_at[md.x_index(a)], self.psi_at[md.x_index(b)])
        (s, a), (t, b) = a, b
        f, g, kp, ktf = self.phi_at, self.psi_at, self.k_psi, self.kt_phi
        kappa = md.pairing
        if v == "pf2":
            if s == 0 and t == 0:
                x, xx = md.x_index(a), md.x_index(b)
                return [[bil(f[x], f[xx]), bil(f[x], kp[xx])],
                        [bil(kp[x], f[xx]), bil(kp[x], kp[xx])]]
            if s == 0:
                x, y = md.x_index(a), md.y_index(b)
                return [[bil(f[x], ktf[y]), bil(f[x], g[y])],
                        [kappa[x][y] + bil(kp[x], ktf[y]), bil(kp[x], g[y])]]
            if t == 0:
                y, x = md.y_index(a), md.x_index(b)
                return [[bil(ktf[y], f[x]), -kappa[x][y] + bil(ktf[y], kp[x])],
                        [bil(g[y], f[x]), bil(g[y], kp[x])]]
            y, yy = md.y_index(a), md.y_index(b)
            return [[bil(ktf[y], ktf[yy]), bil(ktf[y], g[yy])],
                    [bil(g[y], ktf[yy]), bil(g[y], g[yy])]]
        # det2
        if s == 0 and t == 0:
            return bil(f[md.x_index(a)], kp[md.x_index(b)])
        if s == 0:
            return bil(f[md.x_index(a)], g[md.y_index(b)])
        if t == 0:
            y, x = md.y_index(a), md.x_index(b)
            return -kappa[x][y] + bil(ktf[y], kp[x])
        return bil(ktf[md.y_index(a)], g[md.y_index(b)])


def closed_kernel(model: FiniteModel) -> ClosedKernel:
    return ClosedKernel(model)


def _tagged(S0, S1):
    return [(0, x) for x in S0] + [(1, y) for y in S1]


def correlation_closed(model: FiniteModel, S=(), S1=None, kernel: ClosedKernel | None = None):
    """pf or det of the kernel restricted to S (or to the pair S, S1 for two-space models)."""
    K = kernel or closed_kernel(model)
    pts = _tagged(S, S1 or ()) if model.two_space else list(S)
    if not pts:
        return ONE
    A = block_restrict(K, pts)
    return pfaffian_auto(A) if model.pfaffian_type else det_auto(A)


# -- brute force ------------------------------------------------------------


def _weight_product(ws, idx):
    out = ONE
    for i in idx:
        out = out * ws[i]
    return out


def _completions(n, k, fixed):
    """Ordered k-tuples of indices in range(n) avoiding ``fixed`` and each other.

    Tuples with a repeated point give two equal columns in the function
    determinant, hence contribute zero, and are skipped.
    """
    for t in product(range(n), repeat=k):
        if len(set(t)) == k and not set(t) & fixed:
            yield t


def _raw_sum(model: FiniteModel, S=(), S1=()):
    """Defining sum over completions, before dividing by the normalizer."""
    v = model.variant
    phi, psi, P = model.phi, model.psi, model.pairing
    m = model.config_size
    total = ZERO
    if v in ("pf", "pf-self", "det"):
        xs0 = [model.x_index(x) for x in S]
        if len(set(xs0)) != len(xs0):
            raise ValueError("repeated point in S")
        l = len(xs0)
        if l > m:
            return ZERO, None
        k = m - l
        for t in _completions(len(model.points), k, set(xs0)):
            pts = xs0 + list(t)
            if v == "pf":
                D = determinant([[phi[j][x] for x in pts] for j in range(len(phi))])
                if not D:
                    continue
                E = pfaffian([[P[a][b] for b in pts] for a in pts], check=False)
                term = D * E
            elif v == "pf-self":
                cols = []
                for x in pts:
                    cols.append([phi[j][x] for j in range(len(phi))])
                    cols.append([psi[j][x] for j in range(len(psi))])
                term = determinant(transpose(cols))
            else:
                term = (determinant([[phi[j][x] for x in pts] for j in range(m)])
                        * determinant([[psi[j][x] for x in pts] for j in range(m)]))
            total = total + term * _weight_product(model.weights, t)
        return total, math.factorial(k)
    xs0 = [model.x_index(x) for x in S]
    ys0 = [model.y_index(y) for y in S1]
    if len(set(xs0)) != len(xs0) or len(set(ys0)) != len(ys0):
        raise ValueError("repeated point in S0 or S1")
    if len(xs0) > m or len(ys0) > m:
        return ZERO, None
    kx, ky = m - len(xs0), m - len(ys0)
    ny = len(model.y_points)
    ycomps = list(_completions(ny, ky, set(ys0)))
    for tx in _completions(len(model.points), kx, set(xs0)):
        xs = xs0 + list(tx)
        wx = _weight_product(model.weights, tx)
        for ty in ycomps:
            ys = ys0 + list(ty)
            C = determinant([[P[x][y] for y in ys] for x in xs])
            if not C:
                continue
            if v == "pf2":
                cols = []
                for x, y in zip(xs, ys):
                    cols.append([phi[j][x] for j in range(len(phi))])
                    cols.append([psi[j][y] for j in range(len(psi))])
                D = determinant(transpose(cols))
            else:
                D = (determinant([[phi[j][x] for x in xs] for j in range(m)])
                     * determinant([[psi[j][y] for y in ys] for j in range(m)]))
            total = total + D * C * wx * _weight_product(model.y_weights, ty)
    return total, math.factorial(kx) * math.factorial(ky)


def correlation_direct(model: FiniteModel, S=(), S1=None):
    """Correlation from the defining sum over ordered completions.

    Sets larger than a configuration give 0.  Raises SingularGram when the
    normalizer pf(M) (or det(M)) vanishes.
    """
    norm = gram_normalizer(model)
    if not norm:
        raise SingularGram("gram matrix is singular")
    total, fact = _raw_sum(model, tuple(S), tuple(S1 or ()))
    if fact is None:
        return ZERO
    return total / (fact * norm)


def debruijn_constant(model: FiniteModel):
    """Defining sum over full configurations divided by the factorials.

    For every variant this equals pf(M) (resp. det(M)).
    """
    total, fact = _raw_sum(model)
    return total / fact


# -- random models ----------------------------------------------------------


def random_model(variant: str, rng: random.Random, n_points: int = 4, m: int = 2,
                 n_y: int | None = None, max_tries: int = 100) -> FiniteModel:
    """Seeded random model with entries in -2..2, weights in {1, 2} and invertible gram matrix."""
    if variant not in VARIANTS:
        raise ValueError(variant)
    r = 2 * m if variant in ("pf", "pf2", "pf-self") else m
    n_y = n_points if n_y is None else n_y

    def vals(k):
        return tuple(rng.randint(-2, 2) for _ in range(k))

    for _ in range(max_tries):
        pts = tuple(range(1, n_points + 1))
        w = tuple(rng.randint(1, 2) for _ in pts)
        phi = tuple(vals(n_points) for _ in range(r))
        if variant == "pf":
            e = [[0] * n_points for _ in pts]
            for i in range(n_points):
                for j in range(i + 1, n_points):
                    c = rng.randint(-2, 2)
                    e[i][j], e[j][i] = c, -c
            model = FiniteModel(variant, pts, w, phi, (), tuple(map(tuple, e)))
        elif variant in ("pf-self", "det"):
            model = FiniteModel(variant, pts, w, phi, tuple(vals(n_points) for _ in range(r)))
        else:
            ypts = tuple(range(1, n_y + 1))
            wy = tuple(rng.randint(1, 2) for _ in ypts)
            psi = tuple(vals(n_y) for _ in range(r))
            kappa = tuple(vals(n_y) for _ in pts)
            model = FiniteModel(variant, pts, w, phi, psi, kappa, ypts, wy)
        if gram_normalizer(model):
            return model
    raise SingularGram("could not draw an invertible model")


def random_sl2(rng: random.Random):
    """Random integer matrix of determinant 1, for kernel gauge checks."""
    a, b = rng.randint(-3, 3), rng.randint(-3, 3)
    # [[1, a], [0, 1]] [[1, 0], [b, 1]]
    return [[ONE + a * b, rational(a)], [rational(b), ONE]]


def gauge_kernel(kernel, transforms: dict):
    """K'(x, y) = T(x) K(x, y) T(y)^t for a dict of 2x2 transforms."""
    def K(a, b):
        Ta, Tb = transforms[a], transforms[b]
        B = kernel(a, b)
        TB = [[sum((Ta[i][k] * B[k][j] for k in range(2)), ZERO) for j in range(2)] for i in range(2)]
        return [[sum((TB[i][k] * Tb[j][k] for k in range(2)), ZERO) for j in range(2)] for i in range(2)]
    return K
