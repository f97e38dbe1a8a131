"""Expression trees with ``exp`` nodes, for inputs that are not polynomials.

A tree is built from :class:`Const`, :class:`Var`, :class:`Sum`,
:class:`Product`, :class:`IntPow` and :class:`Exp`.  Trees are immutable and
can be differentiated symbolically and evaluated at any supported precision.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Union

import mpmath

from .errors import EvaluationOverflow, NonPolynomial, PreconditionViolation
from .multipoly import MultiPoly
from .scalar import ONE, ZERO, GaussianRational, _check_precision, _gq_to_mpc

MAX_DEPTH = 64


@dataclass(frozen=True)
class Const:
    value: object  # GaussianRational or mpmath.mpc


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Sum:
    children: tuple


@dataclass(frozen=True)
class Product:
    children: tuple


@dataclass(frozen=True)
class IntPow:
    child: object
    k: int


@dataclass(frozen=True)
class Exp:
    child: object


ExprNode = Union[Const, Var, Sum, Product, IntPow, Exp]

_ZERO = Const(ZERO)
_ONE = Const(ONE)


def _is_const(e, value) -> bool:
    return isinstance(e, Const) and isinstance(e.value, GaussianRational) and e.value == value


def make_sum(children) -> ExprNode:
    kids = [c for c in children if not _is_const(c, ZERO)]
    if not kids:
        return _ZERO
    if len(kids) == 1:
        return kids[0]
    return Sum(tuple(kids))


def make_product(children) -> ExprNode:
    kids = []
    for c in children:
        if _is_const(c, ZERO):
            return _ZERO
        if not _is_const(c, ONE):
            kids.append(c)
    if not kids:
        return _ONE
    if len(kids) == 1:
        return kids[0]
    return Product(tuple(kids))


def depth(e: ExprNode) -> int:
    if isinstance(e, (Const, Var)):
        return 1
    if isinstance(e, (Sum, Product)):
        return 1 + max(depth(c) for c in e.children)
    return 1 + depth(e.child)


def variables(e: ExprNode) -> frozenset:
    if isinstance(e, Var):
        return frozenset([e.index])
    if isinstance(e, Const):
        return frozenset()
    if isinstance(e, (Sum, Product)):
        out = frozenset()
        for c in e.children:
            out |= variables(c)
        return out
    return variables(e.child)


def contains_exp(e: ExprNode) -> bool:
    if isinstance(e, Exp):
        return True
    if isinstance(e, (Sum, Product)):
        return any(contains_exp(c) for c in e.children)
    if isinstance(e, IntPow):
        return contains_exp(e.child)
    return False


def diff_expr(e: ExprNode, i: int) -> ExprNode:
    """Symbolic partial derivative with respect to ``z_i`` (0-based)."""
    if isinstance(e, Const):
        return _ZERO
    if isinstance(e, Var):
        return _ONE if e.index == i else _ZERO
    if isinstance(e, Sum):
        return make_sum(diff_expr(c, i) for c in e.children)
    if isinstance(e, Product):
        parts = []
        kids = e.children
        for k, c in enumerate(kids):
            dc = diff_expr(c, i)
            if _is_const(dc, ZERO):
                continue
            parts.append(make_product(kids[:k] + (dc,) + kids[k + 1:]))
        return make_sum(parts)
    if isinstance(e, IntPow):
        if e.k == 0:
            return _ZERO
        dc = diff_expr(e.child, i)
        if _is_const(dc, ZERO):
            return _ZERO
        lower = e.child if e.k == 2 else IntPow(e.child, e.k - 1)
        if e.k == 1:
            return dc
        return make_product([Const(GaussianRational(e.k)), lower, dc])
    if isinstance(e, Exp):
        dc = diff_expr(e.child, i)
        return make_product([dc, e])
    raise TypeError(f"not an expression node: {e!r}")


def _mp(value):
    if isinstance(value, GaussianRational):
        return _gq_to_mpc(value)
    return mpmath.mpmathify(value)


def eval_expr(e: ExprNode, point, precision: int = 256) -> mpmath.mpc:
    """Evaluate at a complex point.  Raises :class:`EvaluationOverflow` when a
    53-bit evaluation leaves the double range or any value is not finite."""
    _check_precision(precision)
    with mpmath.workprec(precision + 10):
        z = [_mp(x) for x in point]
        v = _eval(e, z, precision)
    with mpmath.workprec(precision):
        return +v


def _guard(v, precision):
    if not mpmath.isfinite(v) or (precision == 53 and abs(v) > sys.float_info.max):
        raise EvaluationOverflow(f"value {mpmath.nstr(v, 5)} out of range")
    return v


def _eval(e, z, precision):
    if isinstance(e, Const):
        return _mp(e.value)
    if isinstance(e, Var):
        if e.index >= len(z):
            raise PreconditionViolation(f"variable z{e.index + 1} has no coordinate")
        return z[e.index]
    if isinstance(e, Sum):
        total = mpmath.mpc(0)
        for c in e.children:
            total += _eval(c, z, precision)
        return _guard(total, precision)
    if isinstance(e, Product):
        total = mpmath.mpc(1)
        for c in e.children:
            total *= _eval(c, z, precision)
        return _guard(total, precision)
    if isinstance(e, IntPow):
        return _guard(_eval(e.child, z, precision) ** e.k, precision)
    if isinstance(e, Exp):
        return _guard(mpmath.exp(_eval(e.child, z, precision)), precision)
    raise TypeError(f"not an expression node: {e!r}")


def to_multipoly(e: ExprNode, nvars: int) -> MultiPoly:
    """Expand an exp-free tree into a polynomial."""
    if isinstance(e, Const):
        if not isinstance(e.value, GaussianRational):
            raise NonPolynomial("inexact constant in polynomial input")
        return MultiPoly.const(nvars, e.value)
    if isinstance(e, Var):
        return MultiPoly.var(nvars, e.index)
    if isinstance(e, Sum):
        out = MultiPoly.zero(nvars)
        for c in e.children:
            out = out + to_multipoly(c, nvars)
        return out
    if isinstance(e, Product):
        out = MultiPoly.const(nvars, ONE)
        for c in e.children:
            out = out * to_multipoly(c, nvars)
        return out
    if isinstance(e, IntPow):
        return to_multipoly(e.child, nvars) ** e.k
    if isinstance(e, Exp):
        raise NonPolynomial("exp(...) is not allowed in a polynomial")
    raise TypeError(f"not an expression node: {e!r}")


def from_multipoly(p: MultiPoly) -> ExprNode:
    terms = []
    for exps, c in p.sorted_terms():
        factors = [Const(c)]
        for k, a in enumerate(exps):
            if a:
                factors.append(Var(k) if a == 1 else IntPow(Var(k), a))
        terms.append(make_product(factors))
    return make_sum(terms)


def render_expr(e: ExprNode) -> str:
    if isinstance(e, Const):
        v = e.value
        if isinstance(v, GaussianRational):
            s = str(v)
            if (v.is_integer() and v.re >= 0) or s.startswith("("):
                return s
            return f"({s})"
        return f"({mpmath.nstr(v, 17)})"
    if isinstance(e, Var):
        return f"z{e.index + 1}"
    if isinstance(e, Sum):
        return "(" + " + ".join(render_expr(c) for c in e.children) + ")"
    if isinstance(e, Product):
        return "*".join(render_expr(c) for c in e.children)
    if isinstance(e, IntPow):
        inner = render_expr(e.child)
        if not isinstance(e.child, (Var, Sum)) and not inner.startswith("("):
            inner = f"({inner})"
        return f"{inner}^{e.k}"
    if isinstance(e, Exp):
        inner = render_expr(e.child)
        if inner.startswith("(") and inner.endswith(")") and isinstance(e.child, Sum):
            return f"exp{inner}"
        return f"exp({inner})"
    raise TypeError(f"not an expression node: {e!r}")
