"""Sparse multivariate polynomials over the Gaussian rationals.

Variables are indexed from 0 internally and rendered as ``z1 .. zn``.
Exponent vectors are plain tuples of length ``nvars``.
"""

from __future__ import annotations

from typing import Mapping, Sequence

import mpmath

from .errors import DegreeCapExceeded, PreconditionViolation, ZeroDivisorPolynomial
from .scalar import ONE, ZERO, GaussianRational, _check_precision, _gq_to_mpc, complex_eval

MAX_VARS = 64
DEGREE_CAP = 64
TERM_CAP = 100_000


def _to_mpc(x):
    if isinstance(x, GaussianRational):
        return _gq_to_mpc(x)
    return mpmath.mpmathify(x)


class MultiPoly:
    """Immutable sparse polynomial ``sum c_e * z**e``.

    Zero coefficients are never stored, so the zero polynomial has an empty
    term map and equality is a dictionary comparison.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        if not isinstance(nvars, int) or nvars < 0 or nvars > MAX_VARS:
            raise PreconditionViolation(f"nvars must be in 0..{MAX_VARS}, got {nvars}")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise PreconditionViolation(
                    f"exponent vector {exps} does not have length {nvars}"
                )
            if any(e < 0 for e in exps):
                raise PreconditionViolation("negative exponent")
            c = GaussianRational.coerce(c)
            if c:
                clean[exps] = clean.get(exps, ZERO) + c
                if not clean[exps]:
                    del clean[exps]
        if len(clean) > TERM_CAP:
            raise DegreeCapExceeded(f"term count exceeds {TERM_CAP}")
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, coeff=1) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise PreconditionViolation(f"variable index {i} out of range")
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): coeff})

    @classmethod
    def univariate(cls, coeffs: Sequence) -> "MultiPoly":
        """Polynomial in one variable from ascending coefficients."""
        return cls(1, {(k,): c for k, c in enumerate(coeffs)})

    # -- accessors --------------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self._terms), default=-1)

    def constant_term(self) -> GaussianRational:
        return self._terms.get((0,) * self.nvars, ZERO)

    def is_constant(self) -> bool:
        return self.degree() <= 0

    def variables(self) -> frozenset:
        """Indices of the variables that actually occur."""
        used = set()
        for e in self._terms:
            used.update(i for i, k in enumerate(e) if k)
        return frozenset(used)

    def coeff(self, exps) -> GaussianRational:
        return self._terms.get(tuple(exps), ZERO)

    def univariate_coeffs(self) -> list:
        """Ascending coefficient list of a polynomial in one variable."""
        if self.nvars != 1:
            raise PreconditionViolation("not a univariate polynomial")
        d = self.degree()
        return [self._terms.get((k,), ZERO) for k in range(d + 1)]

    def sorted_terms(self):
        """Terms in graded lexicographic order, highest first."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, MultiPoly):
            return MultiPoly.const(self.nvars, GaussianRational.coerce(other))
        if other.nvars != self.nvars:
            raise PreconditionViolation(
                f"nvars mismatch: {self.nvars} vs {other.nvars}"
            )
        return other

    def __add__(self, other):
        try:
            other = self._check(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, ZERO) + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._check(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        c = GaussianRational.coerce(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly(self.nvars, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._check(other)
        if self.degree() + other.degree() > DEGREE_CAP:
            raise DegreeCapExceeded(
                f"product degree {self.degree() + other.degree()} exceeds cap {DEGREE_CAP}"
            )
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, ZERO) + c1 * c2
                if len(out) > TERM_CAP:
                    raise DegreeCapExceeded(f"term count exceeds {TERM_CAP}")
        return MultiPoly(self.nvars, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        if k and self.degree() * k > DEGREE_CAP:
            raise DegreeCapExceeded(f"power degree exceeds cap {DEGREE_CAP}")
        result = MultiPoly.const(self.nvars, ONE)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            c = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self == MultiPoly.const(self.nvars, c)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.nvars, frozenset(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- calculus / substitution -----------------------------------------------
    def diff(self, i: int) -> "MultiPoly":
        return partial_derivative(self, i)

    def embed(self, nvars: int, index_map: Sequence[int]) -> "MultiPoly":
        """Re-index into ``nvars`` variables; variable k goes to ``index_map[k]``."""
        out = {}
        for e, c in self._terms.items():
            ne = [0] * nvars
            for k, a in enumerate(e):
                if a:
                    ne[index_map[k]] += a
            ne = tuple(ne)
            out[ne] = out.get(ne, ZERO) + c
        return MultiPoly(nvars, out)

    def restrict_to(self, i: int) -> "MultiPoly":
        """Set every variable except ``z_i`` to zero; result is univariate."""
        out = {}
        for e, c in self._terms.items():
            if all(a == 0 for k, a in enumerate(e) if k != i):
                out[(e[i],)] = c
        return MultiPoly(1, out)

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: c for e, c in self._terms.items() if sum(e) == d})

    def __call__(self, *point, precision: int = 256):
        return evaluate(self, point, precision)

    # -- rendering ------------------------------------------------------------------
    def render(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"z{k + 1}" for k in range(self.nvars)]
        if not self._terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[k] + (f"^{a}" if a > 1 else "") for k, a in enumerate(e) if a
            )
            negative = (c.im == 0 and c.re < 0) or (c.re == 0 and c.im < 0)
            if negative:
                c = -c
            coef = _coeff_text(c)
            if not mono:
                body = coef
            elif c == ONE:
                body = mono
            else:
                body = f"{coef}*{mono}"
            if not out:
                out.append(("-" if negative else "") + body)
            else:
                out.append((" - " if negative else " + ") + body)
        return "".join(out)

    def latex(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"z_{{{k + 1}}}" for k in range(self.nvars)]
        if not self._terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = "".join(
                names[k] + (f"^{{{a}}}" if a > 1 else "") for k, a in enumerate(e) if a
            )
            if mono and c == ONE:
                body = mono
            elif mono and c == -ONE:
                body = "-" + mono
            else:
                body = c.latex() + mono
            if out and not body.startswith("-"):
                out.append("+")
            out.append(body)
        return "".join(out)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.render()!r})"


def _coeff_text(c: GaussianRational) -> str:
    """Coefficient text that parses back as a single factor."""
    s = str(c)
    if c.im == 0 and c.re.denominator != 1:
        return f"({s})"
    if c.re == 0 and c.im != 0 and c.im.denominator != 1:
        return f"({s})"
    return s


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def poly_arith(op: str, p: MultiPoly, q) -> MultiPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(q)
    if op == "pow":
        if not isinstance(q, int) or q < 0:
            raise PreconditionViolation("pow needs a nonnegative integer exponent")
        if q > DEGREE_CAP:
            raise DegreeCapExceeded(f"exponent {q} exceeds cap {DEGREE_CAP}")
        return p ** q
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(p: MultiPoly, i: int) -> MultiPoly:
    if not 0 <= i < p.nvars:
        raise PreconditionViolation(f"variable index {i} out of range 0..{p.nvars - 1}")
    out = {}
    for e, c in p.items():
        a = e[i]
        if a:
            ne = e[:i] + (a - 1,) + e[i + 1:]
            out[ne] = c * a
    return MultiPoly(p.nvars, out)


def evaluate(p: MultiPoly, point: Sequence, precision: int = 256) -> mpmath.mpc:
    """Evaluate at a complex point by Horner's scheme in the first variable,
    recursing on the remaining ones."""
    _check_precision(precision)
    if len(point) != p.nvars:
        raise PreconditionViolation(
            f"point has {len(point)} coordinates, polynomial has {p.nvars} variables"
        )
    with mpmath.workprec(precision + 10):
        z = [_to_mpc(x) for x in point]
        value = _horner(list(p.items()), z, 0)
    with mpmath.workprec(precision):
        return +value


def _horner(terms, z, k):
    if not terms:
        return mpmath.mpc(0)
    if k == len(z):
        total = mpmath.mpc(0)
        for _, c in terms:
            total += _to_mpc(c)
        return total
    by_power = {}
    for e, c in terms:
        by_power.setdefault(e[k], []).append((e, c))
    top = max(by_power)
    acc = mpmath.mpc(0)
    for a in range(top, -1, -1):
        acc = acc * z[k]
        if a in by_power:
            acc += _horner(by_power[a], z, k + 1)
    return acc


class LinearForm:
    """Linear form ``sum_j coeffs[j] * z_j`` with every support coefficient
    nonzero.  The anchor is the least support index."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs: Mapping[int, object]):
        clean = {}
        for j, c in coeffs.items():
            if not 0 <= j < nvars:
                raise PreconditionViolation(f"variable index {j} out of range")
            c = GaussianRational.coerce(c)
            if c:
                clean[int(j)] = c
        if not clean:
            raise PreconditionViolation("linear form must have nonempty support")
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __setattr__(self, name, value):
        raise AttributeError("LinearForm is immutable")

    @property
    def support(self) -> tuple:
        return tuple(self.coeffs)

    @property
    def anchor(self) -> int:
        return self.support[0]

    def to_poly(self) -> MultiPoly:
        p = MultiPoly.zero(self.nvars)
        for j, c in self.coeffs.items():
            p = p + MultiPoly.var(self.nvars, j, c)
        return p

    def product(self) -> GaussianRational:
        out = ONE
        for c in self.coeffs.values():
            out = out * c
        return out

    def __call__(self, point, precision: int = 256):
        with mpmath.workprec(precision + 10):
            total = mpmath.mpc(0)
            for j, c in self.coeffs.items():
                total += complex_eval(c, 256) * _to_mpc(point[j])
        with mpmath.workprec(precision):
            return +total

    def __eq__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.nvars, tuple(self.coeffs.items())))

    def render(self) -> str:
        return self.to_poly().render()

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"LinearForm({self.render()!r})"


def compose_linear(G: MultiPoly, ell: LinearForm) -> MultiPoly:
    """Expand ``G(ell(z))`` for univariate ``G``."""
    if G.nvars != 1:
        raise PreconditionViolation("compose_linear needs a univariate outer polynomial")
    if G.degree() > DEGREE_CAP:
        raise DegreeCapExceeded(f"degree {G.degree()} exceeds cap {DEGREE_CAP}")
    L = ell.to_poly()
    acc = MultiPoly.zero(ell.nvars)
    for c in reversed(G.univariate_coeffs()):
        acc = acc * L + c
    return acc


def substitute_linear_map(g: MultiPoly, M: Sequence[Sequence]) -> MultiPoly:
    """Return ``g(M w)``: variable ``z_i`` is replaced by ``sum_j M[i][j] w_j``."""
    n = g.nvars
    if len(M) != n or any(len(row) != n for row in M):
        raise PreconditionViolation(f"matrix must be {n}x{n}")
    images = []
    for i in range(n):
        row = MultiPoly.zero(n)
        for j in range(n):
            c = GaussianRational.coerce(M[i][j])
            if c:
                row = row + MultiPoly.var(n, j, c)
        images.append(row)
    powers = [{0: MultiPoly.const(n, ONE)} for _ in range(n)]

    def power(i, a):
        cache = powers[i]
        if a not in cache:
            cache[a] = power(i, a - 1) * images[i]
        return cache[a]

    out = MultiPoly.zero(n)
    for e, c in g.items():
        term = MultiPoly.const(n, c)
        for i, a in enumerate(e):
            if a:
                term = term * power(i, a)
        out = out + term
    return out


def const_ratio(p: MultiPoly, q: MultiPoly):
    """Return ``c`` with ``p == c*q`` exactly, or ``None``."""
    if q.is_zero():
        raise ZeroDivisorPolynomial("const_ratio by the zero polynomial")
    if p.is_zero():
        return ZERO
    (ep, cp), = p.sorted_terms()[:1]
    (eq, cq), = q.sorted_terms()[:1]
    if ep != eq:
        return None
    c = cp / cq
    if p - q.scale(c) == MultiPoly.zero(p.nvars):
        return c
    return None

