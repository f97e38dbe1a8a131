"""Exact Gaussian-rational scalars, principal-root gauge scalars and
arbitrary-precision complex evaluation.

Everything exact in the package lives in Q(i).  The only irrational
constants that appear in synthesized solutions are principal m-th roots
``beta = base**(-1/m)``; they are kept symbolic as :class:`RootScalar` so
that identities such as ``beta**m * base == 1`` can be checked algebraically.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import mpmath

from .errors import DivisionByZero, ZeroBase

PRECISIONS = (53, 256)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _fmt_frac(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts.

    Instances are immutable and hashable.  ``Fraction`` keeps both parts in
    lowest terms with a positive denominator, so structural equality is
    value equality.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            re, im = re.re, re.im
        object.__setattr__(self, "_re", _frac(re))
        object.__setattr__(self, "_im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            if not (x.real.is_integer() and x.imag.is_integer()):
                raise TypeError("only integral complex literals convert exactly")
            return cls(int(x.real), int(x.imag))
        return cls(x)

    # -- field operations -------------------------------------------------
    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self._re + o._re, self._im + o._im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self._re - o._re, self._im - o._im)

    def __rsub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self._re, self._im, o._re, o._im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self._re, -self._im)

    def __pos__(self):
        return self

    def norm(self) -> Fraction:
        """Squared modulus ``re**2 + im**2``."""
        return self._re * self._re + self._im * self._im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self._re, -self._im)

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise DivisionByZero("inverse of zero Gaussian rational")
        return GaussianRational(self._re / n, -self._im / n)

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparisons / hashing -------------------------------------------
    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self._re == o._re and self._im == o._im

    def __hash__(self):
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    def __bool__(self):
        return bool(self._re) or bool(self._im)

    def sort_key(self):
        return (self._re, self._im)

    def is_real(self) -> bool:
        return self._im == 0

    def is_integer(self) -> bool:
        return self._im == 0 and self._re.denominator == 1

    def __complex__(self):
        return complex(float(self._re), float(self._im))

    # -- text form ---------------------------------------------------------
    def __str__(self):
        re, im = self._re, self._im
        if im == 0:
            return _fmt_frac(re)
        if im == 1:
            ims = "i"
        elif im == -1:
            ims = "-i"
        else:
            ims = f"{_fmt_frac(im)}*i"
        if re == 0:
            return ims
        sign = "-" if im < 0 else "+"
        if im in (1, -1):
            tail = "i"
        else:
            tail = f"{_fmt_frac(abs(im))}*i"
        return f"({_fmt_frac(re)}{sign}{tail})"

    def __repr__(self):
        return f"GaussianRational({self._re!r}, {self._im!r})"

    def latex(self) -> str:
        def lf(f):
            if f.denominator == 1:
                return str(f.numerator)
            sign = "-" if f < 0 else ""
            return f"{sign}\\frac{{{abs(f.numerator)}}}{{{f.denominator}}}"

        re, im = self._re, self._im
        if im == 0:
            return lf(re)
        ims = "i" if abs(im) == 1 else f"{lf(abs(im))}i"
        if re == 0:
            return ("-" if im < 0 else "") + ims
        return f"({lf(re)}{'-' if im < 0 else '+'}{ims})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gq_arith(op: str, a, b=None) -> GaussianRational:
    """Dispatch ``add, sub, mul, div, neg, inv`` on Gaussian rationals."""
    a = GaussianRational.coerce(a)
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if b is None:
        raise TypeError(f"operation {op!r} needs two operands")
    b = GaussianRational.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# numeric evaluation
# ---------------------------------------------------------------------------

def _check_precision(precision):
    if precision not in PRECISIONS:
        raise ValueError(f"precision must be one of {PRECISIONS}, got {precision}")


def _gq_to_mpc(x: GaussianRational) -> mpmath.mpc:
    re = mpmath.mpf(x.re.numerator) / x.re.denominator
    im = mpmath.mpf(x.im.numerator) / x.im.denominator
    return mpmath.mpc(re, im)


class RootScalar:
    """Symbolic principal root ``beta`` with ``beta**degree * base == 1``.

    ``beta = exp(-(1/degree) * Log(base))`` with the principal logarithm.
    The value is never computed eagerly; :meth:`value` evaluates it on
    demand.  :attr:`exact` holds ``beta`` as a Gaussian rational whenever the
    principal root happens to lie in Q(i) (e.g. base 4, degree 2).
    """

    __slots__ = ("base", "degree", "exact")

    def __init__(self, base, degree: int):
        base = GaussianRational.coerce(base)
        if not base:
            raise ZeroBase("root scalar base must be nonzero")
        if not isinstance(degree, int) or degree < 1:
            raise ValueError("root degree must be a positive integer")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "exact", self._find_exact())

    def __setattr__(self, name, value):
        raise AttributeError("RootScalar is immutable")

    def _find_exact(self):
        if self.degree == 1:
            return self.base.inverse()
        with mpmath.workprec(256):
            v = self._value_mp()
            cand = GaussianRational(
                Fraction(mpmath.nstr(v.real, 70)).limit_denominator(10**12),
                Fraction(mpmath.nstr(v.imag, 70)).limit_denominator(10**12),
            )
            if cand ** self.degree * self.base != ONE:
                return None
            if abs(_gq_to_mpc(cand) - v) > mpmath.mpf(2) ** -200:
                return None
        return cand

    def _value_mp(self):
        return mpmath.exp(-mpmath.log(_gq_to_mpc(self.base)) / self.degree)

    def value(self, precision: int = 53) -> mpmath.mpc:
        _check_precision(precision)
        with mpmath.workprec(precision + 10):
            v = self._value_mp()
        with mpmath.workprec(precision):
            return +v

    def defining_relation_holds(self) -> bool:
        """``beta**m * base == 1`` holds by construction; re-checked exactly
        when ``beta`` is a Gaussian rational."""
        if self.exact is not None:
            return self.exact ** self.degree * self.base == ONE
        return True

    def __eq__(self, other):
        if not isinstance(other, RootScalar):
            return NotImplemented
        return self.base == other.base and self.degree == other.degree

    def __hash__(self):
        return hash(("root", self.base, self.degree))

    def __str__(self):
        if self.exact is not None:
            return str(self.exact)
        return f"root({self.base}, {self.degree})"

    def __repr__(self):
        return f"RootScalar(base={self.base!s}, degree={self.degree})"

    def latex(self) -> str:
        if self.exact is not None:
            return self.exact.latex()
        return f"{self.base.latex()}^{{-1/{self.degree}}}"

    def to_json(self):
        return {"base": str(self.base), "m": self.degree}


def root_scalar_make(base, m: int) -> RootScalar:
    return RootScalar(base, m)


def complex_eval(x, precision: int = 53) -> mpmath.mpc:
    """Evaluate a Gaussian rational, root scalar or gauge scalar as an mpmath
    complex at ``precision`` bits."""
    _check_precision(precision)
    if isinstance(x, (RootScalar, AlgebraicScalar)):
        return x.value(precision)
    x = GaussianRational.coerce(x)
    with mpmath.workprec(precision):
        return _gq_to_mpc(x)


# ---------------------------------------------------------------------------
# sums of root monomials
# ---------------------------------------------------------------------------

def _monomial_mul(m1, m2):
    """Multiply two root monomials; returns (coefficient, monomial)."""
    exps = dict()
    for base, deg, k in m1 + m2:
        exps[(base, deg)] = exps.get((base, deg), 0) + k
    coeff = ONE
    out = []
    for (base, deg), k in exps.items():
        q, k = divmod(k, deg)
        if q:
            # beta**deg == 1/base
            coeff = coeff * base.inverse() ** q
        if k:
            out.append((base, deg, k))
    out.sort(key=lambda t: (t[0].sort_key(), t[1]))
    return coeff, tuple(out)


class AlgebraicScalar:
    """Finite sum ``sum_k c_k * prod_j beta_j**e_j`` of Gaussian rationals
    times products of root scalars, with ``0 <= e_j < degree_j``.

    Closed under addition and multiplication; used as the coefficient ring
    of exponential-polynomial sums during verification.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = GaussianRational.coerce(c)
            if c:
                clean[mono] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraicScalar is immutable")

    @classmethod
    def of(cls, x) -> "AlgebraicScalar":
        if isinstance(x, AlgebraicScalar):
            return x
        if isinstance(x, RootScalar):
            if x.exact is not None:
                return cls({(): x.exact})
            return cls({((x.base, x.degree, 1),): ONE})
        return cls({(): GaussianRational.coerce(x)})

    def __add__(self, other):
        other = AlgebraicScalar.of(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, ZERO) + c
        return AlgebraicScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicScalar({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-AlgebraicScalar.of(other))

    def __mul__(self, other):
        other = AlgebraicScalar.of(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                k, mono = _monomial_mul(m1, m2)
                out[mono] = out.get(mono, ZERO) + c1 * c2 * k
        return AlgebraicScalar(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, AlgebraicScalar):
            try:
                other = AlgebraicScalar.of(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def value(self, precision: int = 53) -> mpmath.mpc:
        _check_precision(precision)
        with mpmath.workprec(precision + 20):
            total = mpmath.mpc(0)
            for mono, c in self.terms.items():
                v = _gq_to_mpc(c)
                for base, deg, k in mono:
                    v *= RootScalar(base, deg)._value_mp() ** k
                total += v
        with mpmath.workprec(precision):
            return +total

    def decide_one(self):
        """Decide whether the scalar equals 1.

        Returns ``(verdict, method)``.  A single monomial ``c * R`` is decided
        exactly up to the choice of an L-th root of unity: ``(c*R)**L`` is a
        Gaussian rational computed exactly (L = lcm of the root degrees), and
        if it equals 1 the remaining root of unity is selected numerically,
        where distinct candidates are separated by ``2*sin(pi/L)``.  Sums of
        several monomials fall back to a 256-bit numeric comparison.
        """
        if not self.terms:
            return False, "exact"
        if len(self.terms) == 1:
            (mono, c), = self.terms.items()
            if not mono:
                return c == ONE, "exact"
            L = 1
            for _, deg, _ in mono:
                L = L * deg // math.gcd(L, deg)
            power = c ** L
            for base, deg, k in mono:
                power = power * base.inverse() ** (k * L // deg)
            if power != ONE:
                return False, "exact"
            with mpmath.workprec(256):
                close = abs(self.value(256) - 1) < mpmath.sin(mpmath.pi / L)
            return bool(close), "exact+branch"
        with mpmath.workprec(256):
            close = abs(self.value(256) - 1) < mpmath.mpf(2) ** -200
        return bool(close), "numeric"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items(), key=lambda t: repr(t[0])):
            factors = [str(c)] + [
                f"root({b}, {d})" + (f"^{k}" if k > 1 else "") for b, d, k in mono
            ]
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"AlgebraicScalar({self})"
