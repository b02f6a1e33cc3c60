"""Elements of su(2,n) in explicit coordinates.

The group is realized as isometries of the indefinite Hermitian form

    <v|w> = v_1 conj(w_{n+2}) + v_2 conj(w_{n+1}) + sum_{i=3}^{n} v_i conj(w_i)
            + v_{n+1} conj(w_2) + v_{n+2} conj(w_1)

on C^{n+2}, so that A is positive diagonal and N is upper unitriangular.  An
element of the Lie algebra of AN is determined by the coordinates
(t1, t2, phi, x, y, eta, xx, yy) with t1, t2, xx, yy real, phi, eta complex,
and x, y row vectors in C^{n-2}; the matrix of such an element is

    [ t1   phi  x    eta   i*xx  ]
    [ 0    t2   y    i*yy  -eta~ ]
    [ 0    0    0    -y+   -x+   ]
    [ 0    0    0    -t2   -phi~ ]
    [ 0    0    0    0     -t1   ]

(~ conjugate, + conjugate transpose; middle block of size n-2).  The first two
rows determine the whole matrix.

The six coordinate slots phi, y, x, yy, eta, xx are the root spaces for
alpha, beta, alpha+beta, 2*beta, alpha+2*beta, 2*alpha+2*beta where
alpha(a) = a1/a2 and beta(a) = a2 on a = diag(a1, a2, 1, ..., 1/a2, 1/a1).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .config import DEFAULT
from .scalars import (
    QQi,
    abs2,
    as_exact_complex,
    as_exact_real,
    conj,
    herm,
    im,
    re,
    to_float_scalar,
)


class NotInAN(ValueError):
    """A matrix does not have the a+n coordinate pattern."""


# root name -> functional (c1, c2) meaning c1*t1 + c2*t2
ROOTS = {
    "alpha": (1, -1),
    "beta": (0, 1),
    "alpha+beta": (1, 0),
    "2beta": (0, 2),
    "alpha+2beta": (1, 1),
    "2alpha+2beta": (2, 0),
}

# root name -> coordinate slot it scales
ROOT_SLOT = {
    "alpha": "phi",
    "beta": "y",
    "alpha+beta": "x",
    "2beta": "yy",
    "alpha+2beta": "eta",
    "2alpha+2beta": "xx",
}

REDUCED_ROOTS = ("alpha", "beta", "alpha+beta", "alpha+2beta")

# Non-root functionals whose kernels appear as normalizer tori.
EXTENDED_FUNCTIONALS = {
    "alpha-beta": (1, -2),
    "2alpha+beta": (2, -1),
    "alpha-2beta": (1, -3),
}


def root_functional(name: str) -> tuple:
    if name in ROOTS:
        return ROOTS[name]
    return EXTENDED_FUNCTIONALS[name]


def root_value(root: str, t1, t2):
    c1, c2 = root_functional(root)
    return c1 * t1 + c2 * t2


def kernel_line(root: str) -> tuple:
    """Primitive integer generator of ker(root) in (t1, t2) coordinates."""
    c1, c2 = root_functional(root)
    from math import gcd

    g = gcd(abs(c1), abs(c2))
    p, q = -c2 // g, c1 // g
    if p < 0 or (p == 0 and q < 0):
        p, q = -p, -q
    return (p, q)


class AlgebraElement:
    """Immutable element of a+n for SU(2,n) in the coordinates above."""

    __slots__ = ("n", "mode", "t1", "t2", "phi", "x", "y", "eta", "xx", "yy")

    def __init__(self, n, *, t1=0, t2=0, phi=0, x=None, y=None, eta=0, xx=0, yy=0,
                 mode="exact"):
        if n < 3:
            raise ValueError("n must be >= 3")
        if mode not in ("exact", "float"):
            raise ValueError(f"bad mode {mode!r}")
        self.n = n
        self.mode = mode
        d = n - 2
        if x is None:
            x = [0] * d
        if y is None:
            y = [0] * d
        if len(x) != d or len(y) != d:
            raise ValueError(f"x, y must have length n-2 = {d}")
        if mode == "exact":
            self.t1 = as_exact_real(t1)
            self.t2 = as_exact_real(t2)
            self.phi = as_exact_complex(phi)
            self.eta = as_exact_complex(eta)
            self.x = tuple(as_exact_complex(v) for v in x)
            self.y = tuple(as_exact_complex(v) for v in y)
            self.xx = as_exact_real(xx)
            self.yy = as_exact_real(yy)
        else:
            self.t1 = float(t1)
            self.t2 = float(t2)
            self.phi = complex(phi)
            self.eta = complex(eta)
            self.x = tuple(complex(v) for v in x)
            self.y = tuple(complex(v) for v in y)
            self.xx = float(xx)
            self.yy = float(yy)

    # -- vector-space structure ----------------------------------------------

    def _like(self, **kw):
        base = dict(t1=self.t1, t2=self.t2, phi=self.phi, x=self.x, y=self.y,
                    eta=self.eta, xx=self.xx, yy=self.yy)
        base.update(kw)
        return AlgebraElement(self.n, mode=self.mode, **base)

    def __add__(self, other):
        self._check_compatible(other)
        return self._like(
            t1=self.t1 + other.t1, t2=self.t2 + other.t2,
            phi=self.phi + other.phi,
            x=[a + b for a, b in zip(self.x, other.x)],
            y=[a + b for a, b in zip(self.y, other.y)],
            eta=self.eta + other.eta, xx=self.xx + other.xx, yy=self.yy + other.yy)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        """Multiply by a real scalar (Fraction/int in exact mode)."""
        if self.mode == "exact":
            c = as_exact_real(c)
        else:
            c = float(c)
        return self._like(
            t1=c * self.t1, t2=c * self.t2, phi=self.phi * c,
            x=[v * c for v in self.x], y=[v * c for v in self.y],
            eta=self.eta * c, xx=c * self.xx, yy=c * self.yy)

    __rmul__ = scale
    __mul__ = scale

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.n == other.n and self.mode == other.mode
                and self.coords() == other.coords())

    def __hash__(self):
        return hash((self.n, self.mode, tuple(self.coords())))

    def _check_compatible(self, other):
        if not isinstance(other, AlgebraElement):
            raise TypeError("expected AlgebraElement")
        if other.n != self.n:
            raise ValueError(f"size mismatch: n={self.n} vs n={other.n}")
        if other.mode != self.mode:
            raise ValueError("mixed exact/floating modes")

    # -- structure -------------------------------------------------------------

    def is_nilpotent(self):
        return not self.t1 and not self.t2

    def is_zero(self):
        return not any(self.coords())

    def a_part(self):
        return AlgebraElement(self.n, t1=self.t1, t2=self.t2, mode=self.mode)

    def nilpotent_part(self):
        return self._like(t1=0, t2=0)

    def coords(self, include_a=True):
        """Real coordinate vector; exact mode gives Fractions."""
        out = []
        if include_a:
            out += [self.t1, self.t2]
        out += [re(self.phi), im(self.phi)]
        for v in self.x:
            out += [re(v), im(v)]
        for v in self.y:
            out += [re(v), im(v)]
        out += [re(self.eta), im(self.eta), self.xx, self.yy]
        return out

    @staticmethod
    def coord_dim(n, include_a=True):
        return (2 if include_a else 0) + 4 * (n - 2) + 6

    @staticmethod
    def from_coords(n, vec, mode="exact", include_a=True):
        it = iter(vec)
        t1 = t2 = 0
        if include_a:
            t1, t2 = next(it), next(it)
        d = n - 2
        pr, pi = next(it), next(it)
        x = []
        for _ in range(d):
            a, b = next(it), next(it)
            x.append(QQi(a, b) if mode == "exact" else complex(a, b))
        y = []
        for _ in range(d):
            a, b = next(it), next(it)
            y.append(QQi(a, b) if mode == "exact" else complex(a, b))
        er, ei = next(it), next(it)
        xx, yy = next(it), next(it)
        phi = QQi(pr, pi) if mode == "exact" else complex(pr, pi)
        eta = QQi(er, ei) if mode == "exact" else complex(er, ei)
        return AlgebraElement(n, t1=t1, t2=t2, phi=phi, x=x, y=y, eta=eta,
                              xx=xx, yy=yy, mode=mode)

    def root_component(self, root: str):
        """The root-space component as a new element (a-part dropped)."""
        slot = ROOT_SLOT[root]
        zeroed = dict(t1=0, t2=0, phi=0, x=[0] * (self.n - 2),
                      y=[0] * (self.n - 2), eta=0, xx=0, yy=0)
        zeroed[slot] = getattr(self, slot)
        return AlgebraElement(self.n, mode=self.mode, **zeroed)

    def to_float(self):
        if self.mode == "float":
            return self
        return AlgebraElement(
            self.n, mode="float",
            t1=float(self.t1), t2=float(self.t2),
            phi=complex(self.phi), eta=complex(self.eta),
            x=[complex(v) for v in self.x], y=[complex(v) for v in self.y],
            xx=float(self.xx), yy=float(self.yy))

    def __repr__(self):
        parts = []
        for name in ("t1", "t2", "phi", "eta", "xx", "yy"):
            v = getattr(self, name)
            if v:
                parts.append(f"{name}={v}")
        if any(self.x):
            parts.append(f"x={list(self.x)}")
        if any(self.y):
            parts.append(f"y={list(self.y)}")
        return f"AlgebraElement(n={self.n}, {', '.join(parts) or '0'})"


def root_project(u: AlgebraElement, root: str) -> AlgebraElement:
    """Project onto a single root space (nilpotent part only)."""
    return u.root_component(root)


def matrix_of(u: AlgebraElement):
    """The (n+2)x(n+2) matrix of an algebra element.

    Exact mode returns nested lists of GaussianRationals; floating mode a
    complex numpy array.
    """
    n, m = u.n, u.n + 2
    if u.mode == "exact":
        i_ = QQi(0, 1)
        z = QQi(0)
        M = [[z for _ in range(m)] for _ in range(m)]
        M[0][0] = QQi(u.t1)
        M[1][1] = QQi(u.t2)
        M[n][n] = QQi(-u.t2)
        M[m - 1][m - 1] = QQi(-u.t1)
    else:
        i_ = 1j
        M = np.zeros((m, m), dtype=complex)
        M[0][0] = u.t1
        M[1][1] = u.t2
        M[n][n] = -u.t2
        M[m - 1][m - 1] = -u.t1
    M[0][1] = u.phi
    for j in range(n - 2):
        M[0][2 + j] = u.x[j]
        M[1][2 + j] = u.y[j]
        M[2 + j][n] = -conj(u.y[j])
        M[2 + j][m - 1] = -conj(u.x[j])
    M[0][n] = u.eta
    M[0][m - 1] = i_ * u.xx
    M[1][n] = i_ * u.yy
    M[1][m - 1] = -conj(u.eta)
    M[n][m - 1] = -conj(u.phi)
    if u.mode == "exact":
        return M
    return M


def element_from_matrix(M, n, mode="exact", check=True) -> AlgebraElement:
    """Read coordinates from a matrix; raises NotInAN on pattern mismatch."""
    m = n + 2
    i_xx = M[0][m - 1]
    i_yy = M[1][n]
    if mode == "exact":
        if im(M[0][0]) != 0 or im(M[1][1]) != 0:
            raise NotInAN("complex diagonal")
        u = AlgebraElement(
            n, t1=re(M[0][0]), t2=re(M[1][1]), phi=M[0][1],
            x=[M[0][2 + j] for j in range(n - 2)],
            y=[M[1][2 + j] for j in range(n - 2)],
            eta=M[0][n], xx=im(i_xx), yy=im(i_yy), mode="exact")
        if check:
            expected = matrix_of(u)
            for i in range(m):
                for j in range(m):
                    if expected[i][j] != M[i][j]:
                        raise NotInAN(f"entry ({i},{j}) breaks the a+n pattern")
        return u
    u = AlgebraElement(
        n, t1=M[0][0].real, t2=M[1][1].real, phi=M[0][1],
        x=[M[0][2 + j] for j in range(n - 2)],
        y=[M[1][2 + j] for j in range(n - 2)],
        eta=M[0][n], xx=i_xx.imag, yy=i_yy.imag, mode="float")
    if check:
        expected = matrix_of(u)
        scale = max(1.0, float(np.abs(np.asarray(M)).max()))
        if float(np.abs(np.asarray(M) - expected).max()) > DEFAULT.derived_rtol * scale:
            raise NotInAN("matrix breaks the a+n pattern")
    return u


def bracket(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Lie bracket [u, v] in coordinates.

    For nilpotent parts this is the closed-form slot computation; a-parts act
    diagonally on the root slots (alpha+beta scales x by t1, etc.).  The
    result is always nilpotent since a is abelian and normalizes n.
    """
    u._check_compatible(v)
    two = 2
    # nilpotent x nilpotent part
    x_slot = [u.phi * yv - v.phi * yu for yu, yv in zip(u.y, v.y)]
    i_ = QQi(0, 1) if u.mode == "exact" else 1j
    eta_slot = (-herm(u.x, v.y) + herm(v.x, u.y)
                + i_ * (u.phi * v.yy) - i_ * (v.phi * u.yy))
    yy_slot = -two * im(herm(u.y, v.y))
    xx_slot = -two * im(herm(u.x, v.x) + u.phi * conj(v.eta) - v.phi * conj(u.eta))
    out = AlgebraElement(u.n, phi=0, x=x_slot, y=[0] * (u.n - 2), eta=eta_slot,
                         xx=xx_slot, yy=yy_slot, mode=u.mode)
    # a-part action
    if u.t1 or u.t2 or v.t1 or v.t2:
        def ad_a(t1, t2, w):
            return AlgebraElement(
                w.n, phi=w.phi * root_value("alpha", t1, t2),
                y=[root_value("beta", t1, t2) * c for c in w.y],
                x=[root_value("alpha+beta", t1, t2) * c for c in w.x],
                yy=root_value("2beta", t1, t2) * w.yy,
                eta=w.eta * root_value("alpha+2beta", t1, t2),
                xx=root_value("2alpha+2beta", t1, t2) * w.xx,
                mode=w.mode)
        out = out + ad_a(u.t1, u.t2, v.nilpotent_part()) - ad_a(v.t1, v.t2, u.nilpotent_part())
    return out


def _mat_mul(A, B, m):
    return [[sum((A[i][k] * B[k][j] for k in range(m)), QQi(0)) for j in range(m)]
            for i in range(m)]


def exp_series(u: AlgebraElement) -> "GroupElement":
    """Matrix exponential by series; the oracle for exp_closed.

    n is nilpotent of step <= 4, so the series terminates at the fourth
    power.  Elements with an a-part are only supported in floating mode
    (their exponentials are transcendental), via scipy's expm.
    """
    m = u.n + 2
    if u.is_nilpotent():
        if u.mode == "exact":
            M = matrix_of(u)
            acc = [[QQi(1 if i == j else 0) for j in range(m)] for i in range(m)]
            P = [[QQi(1 if i == j else 0) for j in range(m)] for i in range(m)]
            fact = 1
            for k in range(1, 5):
                P = _mat_mul(P, M, m)
                fact *= k
                inv = Fraction(1, fact)
                acc = [[acc[i][j] + P[i][j] * inv for j in range(m)] for i in range(m)]
            return GroupElement(u.n, acc, mode="exact")
        M = matrix_of(u)
        acc = np.eye(m, dtype=complex)
        P = np.eye(m, dtype=complex)
        fact = 1.0
        for k in range(1, 5):
            P = P @ M
            fact *= k
            acc = acc + P / fact
        return GroupElement(u.n, acc, mode="float")
    if u.mode == "exact":
        raise ValueError("exact exponentials need a nilpotent element")
    from scipy.linalg import expm

    return GroupElement(u.n, expm(matrix_of(u)), mode="float")


def _exp_rows_general(u):
    """First two rows (and derived data) of exp(u) per the general display."""
    mode = u.mode
    half = Fraction(1, 2) if mode == "exact" else 0.5
    sixth = Fraction(1, 6) if mode == "exact" else 1 / 6
    i_ = QQi(0, 1) if mode == "exact" else 1j
    c24 = Fraction(1, 24) if mode == "exact" else 1 / 24
    third = Fraction(1, 3) if mode == "exact" else 1 / 3
    xyd = herm(u.x, u.y)
    ax2 = sum((abs2(v) for v in u.x), Fraction(0) if mode == "exact" else 0.0)
    ay2 = sum((abs2(v) for v in u.y), Fraction(0) if mode == "exact" else 0.0)
    aphi2 = abs2(u.phi)
    x_row = [xv + half * (u.phi * yv) for xv, yv in zip(u.x, u.y)]
    e1n = u.eta - half * xyd + half * (i_ * (u.phi * u.yy)) - sixth * (u.phi * ay2)
    corner_re = -half * ax2 - re(u.phi * conj(u.eta)) + c24 * aphi2 * ay2
    corner_im = u.xx - sixth * aphi2 * u.yy + third * im(conj(u.phi) * xyd)
    e1m = corner_re + i_ * corner_im
    e2n = i_ * u.yy - half * ay2
    e2m = (-conj(u.eta) - half * herm(u.y, u.x)
           - half * (i_ * (conj(u.phi) * u.yy)) + sixth * (conj(u.phi) * ay2))
    mid_n = [-conj(yv) for yv in u.y]
    mid_m = [-conj(xv) + half * (conj(u.phi) * conj(yv)) for xv, yv in zip(u.x, u.y)]
    return x_row, e1n, e1m, e2n, e2m, mid_n, mid_m


def exp_closed(u: AlgebraElement) -> "GroupElement":
    """Closed-form exp for nilpotent elements, exact in exact mode.

    Implements the general display; the phi = 0 and y = 0 specializations are
    recomputed and compared against it whenever they apply, as a structural
    self-check (they are distinct displayed formulas, not shortcuts).
    """
    if not u.is_nilpotent():
        raise ValueError("exp_closed needs a nilpotent element (t1 = t2 = 0)")
    n, m, mode = u.n, u.n + 2, u.mode
    x_row, e1n, e1m, e2n, e2m, mid_n, mid_m = _exp_rows_general(u)

    phi_zero = not u.phi if mode == "exact" else u.phi == 0
    y_zero = not any(u.y) if mode == "exact" else all(v == 0 for v in u.y)
    if phi_zero:
        _check_phi0_form(u, x_row, e1n, e1m, e2n, e2m)
    if y_zero:
        _check_y0_form(u, x_row, e1n, e1m, e2n, e2m)

    if mode == "exact":
        M = [[QQi(1 if i == j else 0) for j in range(m)] for i in range(m)]
    else:
        M = np.eye(m, dtype=complex)
    M[0][1] = u.phi
    for j in range(n - 2):
        M[0][2 + j] = x_row[j]
        M[1][2 + j] = u.y[j]
        M[2 + j][n] = mid_n[j]
        M[2 + j][m - 1] = mid_m[j]
    M[0][n] = e1n
    M[0][m - 1] = e1m
    M[1][n] = e2n
    M[1][m - 1] = e2m
    M[n][m - 1] = -conj(u.phi)
    return GroupElement(u.n, M, mode=mode)


def _eq_scalar(a, b, mode):
    if mode == "exact":
        return a == b
    return abs(complex(a) - complex(b)) <= DEFAULT.identity_rtol * (1 + abs(complex(a)))


def _check_phi0_form(u, x_row, e1n, e1m, e2n, e2m):
    mode = u.mode
    half = Fraction(1, 2) if mode == "exact" else 0.5
    i_ = QQi(0, 1) if mode == "exact" else 1j
    xyd = herm(u.x, u.y)
    ax2 = sum((abs2(v) for v in u.x), Fraction(0) if mode == "exact" else 0.0)
    ok = all(_eq_scalar(xr, xv, mode) for xr, xv in zip(x_row, u.x))
    ok = ok and _eq_scalar(e1n, u.eta - half * xyd, mode)
    ok = ok and _eq_scalar(e1m, i_ * u.xx - half * ax2, mode)
    ok = ok and _eq_scalar(e2m, -conj(u.eta) - half * herm(u.y, u.x), mode)
    if not ok:
        raise AssertionError("phi=0 exponential display disagrees with general form")


def _check_y0_form(u, x_row, e1n, e1m, e2n, e2m):
    mode = u.mode
    half = Fraction(1, 2) if mode == "exact" else 0.5
    sixth = Fraction(1, 6) if mode == "exact" else 1 / 6
    i_ = QQi(0, 1) if mode == "exact" else 1j
    ax2 = sum((abs2(v) for v in u.x), Fraction(0) if mode == "exact" else 0.0)
    aphi2 = abs2(u.phi)
    ok = all(_eq_scalar(xr, xv, mode) for xr, xv in zip(x_row, u.x))
    ok = ok and _eq_scalar(e1n, u.eta + half * (i_ * (u.phi * u.yy)), mode)
    ok = ok and _eq_scalar(
        e1m, -half * ax2 - re(u.phi * conj(u.eta)) + i_ * (u.xx - sixth * aphi2 * u.yy),
        mode)
    ok = ok and _eq_scalar(e2n, i_ * u.yy, mode)
    ok = ok and _eq_scalar(e2m, -conj(u.eta) - half * (i_ * (conj(u.phi) * u.yy)), mode)
    if not ok:
        raise AssertionError("y=0 exponential display disagrees with general form")


def delta_formula(u: AlgebraElement):
    """Delta(exp u) from the fully expanded coordinate formula."""
    mode = u.mode
    if mode == "exact":
        q = Fraction
        zero = Fraction(0)
    else:
        q = lambda a, b: a / b  # noqa: E731
        zero = 0.0
    xyd = herm(u.x, u.y)
    ax2 = sum((abs2(v) for v in u.x), zero)
    ay2 = sum((abs2(v) for v in u.y), zero)
    aphi2 = abs2(u.phi)
    re_part = (-abs2(u.eta) + u.xx * u.yy - q(1, 4) * ax2 * ay2
               + q(1, 4) * abs2(xyd) - q(1, 6) * ay2 * re(u.eta * conj(u.phi))
               - q(1, 6) * u.yy * im(xyd * conj(u.phi))
               + q(1, 12) * u.yy * u.yy * aphi2
               - q(1, 144) * ay2 * ay2 * aphi2)
    im_part = (q(1, 24) * u.yy * aphi2 * ay2 + im(xyd * conj(u.eta))
               + q(1, 2) * u.xx * ay2 + q(1, 2) * u.yy * ax2)
    i_ = QQi(0, 1) if mode == "exact" else 1j
    return re_part + i_ * im_part


def gram_matrix(n, mode="exact"):
    """Gram matrix J of the Hermitian form (J^2 = identity)."""
    m = n + 2
    if mode == "exact":
        J = [[QQi(0) for _ in range(m)] for _ in range(m)]
        one = QQi(1)
    else:
        J = np.zeros((m, m), dtype=complex)
        one = 1.0
    J[0][m - 1] = one
    J[1][n] = one
    for i in range(2, n):
        J[i][i] = one
    J[n][1] = one
    J[m - 1][0] = one
    return J


def form_value(v, w, n=None):
    """<v|w> for coordinate vectors of length n+2."""
    if len(v) != len(w):
        raise ValueError("length mismatch")
    m = len(v)
    n = m - 2 if n is None else n
    if m != n + 2:
        raise ValueError("vectors must have length n+2")
    total = v[0] * conj(w[m - 1]) + v[1] * conj(w[n])
    for i in range(2, n):
        total = total + v[i] * conj(w[i])
    total = total + v[n] * conj(w[1]) + v[m - 1] * conj(w[0])
    return total


class GroupElement:
    """An (n+2)x(n+2) matrix preserving the Hermitian form, det 1."""

    __slots__ = ("n", "mode", "mat")

    def __init__(self, n, mat, mode="exact", check=False):
        self.n = n
        self.mode = mode
        if mode == "float":
            self.mat = np.asarray(mat, dtype=complex)
        else:
            self.mat = [list(row) for row in mat]
        if check:
            ok, why = self.check_invariants()
            if not ok:
                raise ValueError(f"not a group element: {why}")

    @staticmethod
    def identity(n, mode="exact"):
        m = n + 2
        if mode == "exact":
            return GroupElement(n, [[QQi(1 if i == j else 0) for j in range(m)]
                                    for i in range(m)], mode="exact")
        return GroupElement(n, np.eye(m, dtype=complex), mode="float")

    @staticmethod
    def diagonal(n, a1, a2, mode="float"):
        """diag(a1, a2, 1, ..., 1, 1/a2, 1/a1); a point of A when a1,a2 > 0."""
        m = n + 2
        if mode == "exact":
            a1, a2 = as_exact_real(a1), as_exact_real(a2)
            M = [[QQi(0) for _ in range(m)] for _ in range(m)]
            M[0][0] = QQi(a1)
            M[1][1] = QQi(a2)
            for i in range(2, n):
                M[i][i] = QQi(1)
            M[n][n] = QQi(1 / a2)
            M[m - 1][m - 1] = QQi(1 / a1)
            return GroupElement(n, M, mode="exact")
        d = np.ones(m, dtype=complex)
        d[0], d[1], d[n], d[m - 1] = a1, a2, 1 / a2, 1 / a1
        return GroupElement(n, np.diag(d), mode="float")

    def __matmul__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.n != self.n or other.mode != self.mode:
            raise ValueError("incompatible group elements")
        if self.mode == "float":
            return GroupElement(self.n, self.mat @ other.mat, mode="float")
        m = self.n + 2
        return GroupElement(self.n, _mat_mul(self.mat, other.mat, m), mode="exact")

    def inverse(self):
        """g^{-1} = J g^dagger J, using g^dagger J g = J."""
        m = self.n + 2
        if self.mode == "float":
            J = gram_matrix(self.n, "float")
            return GroupElement(self.n, J @ self.mat.conj().T @ J, mode="float")
        J = gram_matrix(self.n, "exact")
        gd = [[conj(self.mat[j][i]) for j in range(m)] for i in range(m)]
        return GroupElement(self.n, _mat_mul(_mat_mul(J, gd, m), J, m), mode="exact")

    def dagger(self):
        m = self.n + 2
        if self.mode == "float":
            return GroupElement(self.n, self.mat.conj().T, mode="float")
        return GroupElement(self.n, [[conj(self.mat[j][i]) for j in range(m)]
                                     for i in range(m)], mode="exact")

    def det(self):
        if self.mode == "float":
            return complex(np.linalg.det(self.mat))
        # fraction-free enough: plain elimination over the Gaussian rationals
        m = self.n + 2
        a = [row[:] for row in self.mat]
        det = QQi(1)
        for c in range(m):
            piv = next((r for r in range(c, m) if a[r][c]), None)
            if piv is None:
                return QQi(0)
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det = det * a[c][c]
            inv = QQi(1) / a[c][c]
            for r in range(c + 1, m):
                if a[r][c]:
                    f = a[r][c] * inv
                    a[r] = [v - f * w for v, w in zip(a[r], a[c])]
        return det

    def check_invariants(self):
        """(g^dagger J g == J, det == 1) — exact or within tolerance."""
        m = self.n + 2
        if self.mode == "float":
            J = gram_matrix(self.n, "float")
            res = self.mat.conj().T @ J @ self.mat - J
            scale = max(1.0, float(np.abs(self.mat).max()) ** 2)
            if float(np.abs(res).max()) > 1e-10 * scale:
                return False, "form residual too large"
            if abs(self.det() - 1) > 1e-8 * scale:
                return False, "determinant != 1"
            return True, ""
        J = gram_matrix(self.n, "exact")
        lhs = _mat_mul(_mat_mul([[conj(self.mat[j][i]) for j in range(m)]
                                 for i in range(m)], J, m), self.mat, m)
        for i in range(m):
            for j in range(m):
                if lhs[i][j] != J[i][j]:
                    return False, f"form not preserved at ({i},{j})"
        if self.det() != QQi(1):
            return False, "determinant != 1"
        return True, ""

    def to_float(self):
        if self.mode == "float":
            return self
        m = self.n + 2
        arr = np.array([[to_float_scalar(v) for v in row] for row in self.mat],
                       dtype=complex)
        return GroupElement(self.n, arr, mode="float")

    def entry(self, i, j):
        return self.mat[i][j]

    def __repr__(self):
        return f"GroupElement(n={self.n}, mode={self.mode})"


def delta(g: GroupElement):
    """det of the 2x2 block in rows 1,2 and columns n+1, n+2."""
    n = g.n
    a, b = g.mat[0][n], g.mat[0][n + 1]
    c, d = g.mat[1][n], g.mat[1][n + 1]
    return a * d - b * c
