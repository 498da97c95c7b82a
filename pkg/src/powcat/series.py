"""Recurrences, reference sequences, and the kernel-method series check.

Everything here is exact: coefficients are Python integers, series are
truncated power series in x whose coefficients are Laurent polynomials in a
single auxiliary variable a (negative exponents allowed), and the one
rational operation (division by (1+a)^3) is expanded only far enough to
read off the a^0 term.  No floating point enters this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .gentree import label_distribution

# bundled prefixes for the two sequences whose general terms this package
# does not compute (their closed forms live in other work); sizes 1..13
BAXTER_PREFIX = (1, 2, 6, 22, 92, 422, 2074, 10754, 58202, 326240, 1882960, 11140560, 67329992)
SEMIBAXTER_PREFIX = (1, 2, 6, 23, 104, 530, 2958, 17734, 112657, 750726, 5207910, 37387881, 276467208)


class LaurentPoly:
    """Laurent polynomial in one variable with integer coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        self._c = {int(e): int(v) for e, v in (coeffs or {}).items() if v != 0}

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls({exp: coeff})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    def coeff(self, exp) -> int:
        return self._c.get(exp, 0)

    def items(self):
        return sorted(self._c.items())

    @property
    def min_exp(self):
        return min(self._c) if self._c else 0

    def is_zero(self) -> bool:
        return not self._c

    def __add__(self, other):
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, 0) + v
        return LaurentPoly(out)

    def __sub__(self, other):
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, 0) - v
        return LaurentPoly(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: v * other for e, v in self._c.items()})
        out: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + v1 * v2
        return LaurentPoly(out)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self._c == other._c

    def __hash__(self):
        return hash(tuple(self.items()))

    def __repr__(self):
        if not self._c:
            return "0"
        return " + ".join(f"{v}*a^{e}" for e, v in self.items())


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series in x modulo x^(order+1), Laurent-polynomial coefficients."""

    order: int
    coeffs: tuple[LaurentPoly, ...]

    @classmethod
    def zero(cls, order):
        return cls(order, tuple(LaurentPoly.zero() for _ in range(order + 1)))

    @classmethod
    def constant(cls, order, poly: LaurentPoly):
        return cls(order, (poly,) + tuple(LaurentPoly.zero() for _ in range(order)))

    def coeff(self, n) -> LaurentPoly:
        return self.coeffs[n]

    def __add__(self, other):
        return TruncatedSeries(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return TruncatedSeries(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return TruncatedSeries(self.order, tuple(c * other for c in self.coeffs))
        out = [LaurentPoly.zero() for _ in range(self.order + 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(self.order, tuple(out))

    def shift_x(self, k=1):
        """Multiply by x^k."""
        pad = tuple(LaurentPoly.zero() for _ in range(k))
        return TruncatedSeries(self.order, (pad + self.coeffs)[: self.order + 1])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)


@dataclass(frozen=True)
class CountTriangle:
    """Integer table c[n][k] for 0 <= k <= n <= n_max."""

    rows: tuple[tuple[int, ...], ...]

    def value(self, n, k) -> int:
        if 0 <= n < len(self.rows) and 0 <= k <= n:
            return self.rows[n][k]
        return 0

    def row(self, n) -> tuple[int, ...]:
        return self.rows[n]

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.rows)


# -- recurrences -----------------------------------------------------------------


def e3_sequence(n_max: int) -> list[int]:
    """Terms E3(0..n_max) of A108307 via the second-order recurrence
    8(n+3)(n+1)E(n) + (7n^2+53n+88)E(n+1) = (n+8)(n+7)E(n+2); every forward
    step must divide exactly."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    seq = [1, 1]
    for n in range(0, n_max - 1):
        num = 8 * (n + 3) * (n + 1) * seq[n] + (7 * n * n + 53 * n + 88) * seq[n + 1]
        den = (n + 8) * (n + 7)
        q, r = divmod(num, den)
        if r:
            raise ArithmeticError(f"recurrence step n={n} is not an exact division")
        seq.append(q)
    return seq[: n_max + 1]


def callan_triangle(n_max: int) -> CountTriangle:
    """Triangle c[n][k]: c[0][0]=1, c[n][0]=0, and
    c[n][k] = c[n-1][k-1] + k * sum_{j>=k} c[n-1][j]."""
    rows = [(1,)]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        row = [0]
        for k in range(1, n + 1):
            above = prev[k - 1] if k - 1 < len(prev) else 0
            tail = sum(prev[j] for j in range(k, len(prev)))
            row.append(above + k * tail)
        rows.append(tuple(row))
    return CountTriangle(tuple(rows))


def catalan_number(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def powered_catalan_number(n: int) -> int:
    return sum(callan_triangle(n).row(n))


def reference_sequence(name: str, n_max: int) -> list[int]:
    """Reference terms for sizes 1..n_max.

    catalan and a108307 and pcat are computed (closed form / recurrences);
    baxter and semibaxter are bundled prefixes and error out beyond them.
    """
    if name == "catalan":
        return [catalan_number(n) for n in range(1, n_max + 1)]
    if name == "a108307":
        return e3_sequence(n_max)[1:]
    if name == "pcat":
        return list(callan_triangle(n_max).row_sums()[1:])
    if name in ("baxter", "semibaxter"):
        prefix = BAXTER_PREFIX if name == "baxter" else SEMIBAXTER_PREFIX
        if n_max > len(prefix):
            raise ValueError(f"{name} terms are bundled only up to size {len(prefix)}")
        return list(prefix[:n_max])
    raise KeyError(f"unknown sequence {name!r}")


# -- kernel-method series ----------------------------------------------------------


def kernel_w(order: int) -> TruncatedSeries:
    """The unique power series with zero constant term satisfying
    W = x * (1/a) * (W + 1 + a) * (W + a + a^2), modulo x^(order+1).

    Fixed-point iteration from 0 settles one x-order per step because the
    right side carries a factor x; the defining equation's residual is
    asserted to vanish before returning.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    a = LaurentPoly.monomial(1)
    abar = LaurentPoly.monomial(-1)
    one_a = LaurentPoly({0: 1, 1: 1})
    a_a2 = LaurentPoly({1: 1, 2: 1})
    w = TruncatedSeries.zero(order)

    def rhs(s):
        f1 = s + TruncatedSeries.constant(order, one_a)
        f2 = s + TruncatedSeries.constant(order, a_a2)
        return ((f1 * f2) * abar).shift_x(1)

    for _ in range(order):
        w = rhs(w)
    if not (rhs(w) - w).is_zero():
        raise ArithmeticError("fixed-point iteration failed to satisfy the kernel equation")
    return w


_Q_COEFFS = (
    # coefficient Laurent polys of W^1 .. W^4
    LaurentPoly({-6: -1, -5: -3, -4: -3, -3: -1, 0: 1, 1: 3, 2: 3, 3: 1}),
    LaurentPoly({-5: 1, -4: 1, -1: -1, 0: -1}),
    LaurentPoly({-6: 1, -4: -1, -3: 1, -1: -1}),
    LaurentPoly({-5: -1, -4: 1}),
)


def kernel_q(order: int) -> TruncatedSeries:
    """Q(a, W): quartic in W with the fixed Laurent-polynomial coefficients."""
    w = kernel_w(order)
    total = TruncatedSeries.zero(order)
    power = TruncatedSeries.constant(order, LaurentPoly.one())
    for q in _Q_COEFFS:
        power = power * w
        total = total + power * q
    return total


def kernel_a11(order: int) -> list[int]:
    """Size generating-function coefficients [x^n] A(1,1) for n = 1..order.

    A(1+a,1+a) is the non-negative-a part of Q(a,W)/(1+a)^3; setting a = 0
    keeps only the a^0 coefficient, which equals
    sum_j (-1)^j binom(j+2,2) [a^-j] Q_n since 1/(1+a)^3 expands with those
    coefficients and only non-positive exponents of Q_n can contribute.
    """
    q = kernel_q(order)
    out = []
    for n in range(1, order + 1):
        poly = q.coeff(n)
        total = 0
        for j in range(0, -poly.min_exp + 1):
            c = poly.coeff(-j)
            if c:
                total += (-1) ** j * comb(j + 2, 2) * c
        out.append(total)
    return out


# -- functional-equation residual ----------------------------------------------------
# Bivariate polynomials in (y, z) are dicts (h, k) -> int; one per x-level.


def _biv_sub(p, q):
    out = dict(p)
    for key, v in q.items():
        out[key] = out.get(key, 0) - v
        if out[key] == 0:
            del out[key]
    return out


def _biv_at_y1(p):
    """Substitute y = 1."""
    out: dict[tuple[int, int], int] = {}
    for (h, k), v in p.items():
        key = (0, k)
        out[key] = out.get(key, 0) + v
        if out[key] == 0:
            del out[key]
    return out


def _biv_at_z_eq_y(p):
    """Substitute z = y."""
    out: dict[tuple[int, int], int] = {}
    for (h, k), v in p.items():
        key = (h + k, 0)
        out[key] = out.get(key, 0) + v
        if out[key] == 0:
            del out[key]
    return out


def _div_by_one_minus_y(p):
    """Exact quotient p / (1 - y); p must vanish at y = 1."""
    if not p:
        return {}
    out: dict[tuple[int, int], int] = {}
    for k in {k for (_, k) in p}:
        cs = {h: v for (h, kk), v in p.items() if kk == k}
        run = 0
        top = max(cs)
        for h in range(0, top + 1):
            run += cs.get(h, 0)
            if h < top and run:
                out[(h, k)] = run
        if run != 0:
            raise ArithmeticError("polynomial is not divisible by (1 - y)")
    return out


def _div_by_z_minus_y(p):
    """Exact quotient p / (z - y); p must vanish at z = y."""
    if not p:
        return {}
    out: dict[tuple[int, int], int] = {}
    # view as polynomial in z with coefficients in y: c_k(y)
    by_k: dict[int, dict[int, int]] = {}
    top_k = 0
    for (h, k), v in p.items():
        by_k.setdefault(k, {})[h] = v
        top_k = max(top_k, k)
    carry: dict[int, int] = {}
    for k in range(top_k, 0, -1):
        # quotient coefficient of z^(k-1) is c_k(y) + y * q_k(y)
        qk = dict(by_k.get(k, {}))
        for h, v in carry.items():
            qk[h + 1] = qk.get(h + 1, 0) + v
        qk = {h: v for h, v in qk.items() if v != 0}
        for h, v in qk.items():
            out[(h, k - 1)] = v
        carry = qk
    # remainder = c_0(y) + y * q_0(y) must vanish
    rem = dict(by_k.get(0, {}))
    for h, v in carry.items():
        rem[h + 1] = rem.get(h + 1, 0) + v
    if any(v != 0 for v in rem.values()):
        raise ArithmeticError("polynomial is not divisible by (z - y)")
    return out


def _biv_shift(p, dh, dk):
    return {(h + dh, k + dk): v for (h, k), v in p.items()}


@lru_cache(maxsize=None)
def _rule_levels(order: int):
    return label_distribution("i-geq3", order)


def functional_equation_residual(order: int):
    """Residual of the two-catalytic-variable equation
    A = xyz + xz(A(1,z) - A(y,z))/(1-y) + xyz(A(y,z) - A(y,y))/(z-y),
    with A assembled from the i-geq3 rule's label distribution
    (x-degree = level, y-degree = h, z-degree = k).

    Returns a list of per-level residual dicts for x^1..x^order; all empty
    when the equation holds.  Both divided differences are performed as
    exact polynomial quotients, whose remainders are asserted to vanish.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    levels = _rule_levels(order)
    a_levels = [dict(lvl) for lvl in levels]  # a_levels[m] is the x^(m+1) slice
    residuals = []
    for n in range(1, order + 1):
        lhs = a_levels[n - 1]
        rhs: dict[tuple[int, int], int] = {(1, 1): 1} if n == 1 else {}
        if n >= 2:
            prev = a_levels[n - 2]
            q1 = _div_by_one_minus_y(_biv_sub(_biv_at_y1(prev), prev))
            q2 = _div_by_z_minus_y(_biv_sub(prev, _biv_at_z_eq_y(prev)))
            for key, v in _biv_shift(q1, 0, 1).items():  # * z
                rhs[key] = rhs.get(key, 0) + v
            for key, v in _biv_shift(q2, 1, 1).items():  # * y * z
                rhs[key] = rhs.get(key, 0) + v
        residuals.append(_biv_sub(lhs, rhs))
    return residuals


def residual_is_zero(order: int) -> bool:
    return all(not r for r in functional_equation_residual(order))
