"""Exact and numeric verification of solutions.

The gradient of a :class:`SolutionForm` has a closed form: every component
is a finite sum ``sum_k c_k * exp(q_k(z))`` (:class:`ExpPolySum`) with
polynomial exponents and algebraic scalar coefficients.  The symbolic check
multiplies the components (or the matrix rows ``row_i(A) . grad u``) and
requires the exponents to add up to ``g`` and the scalars to multiply to 1,
both exactly.  The numeric checks sample the equation in a polydisk,
integrate the antiderivative terms by Gauss-Legendre quadrature and compare
closed-form partials with central differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath
import numpy as np

from .errors import EvaluationOverflow, PreconditionViolation
from .expr import diff_expr, eval_expr
from .multipoly import MultiPoly, compose_linear, evaluate
from .scalar import ONE, AlgebraicScalar, _check_precision, complex_eval

QUADRATURE_NODES = (16, 32, 64, 128)

PASS = "pass"
FAIL = "fail"
TOL_EXCEEDED = "TolExceeded"


class ExpPolySum:
    """Canonical sum ``sum_k c_k * exp(q_k)``; equal exponents are merged and
    zero coefficients dropped."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        merged = {}
        for q, c in (terms.items() if isinstance(terms, dict) else (terms or [])):
            c = AlgebraicScalar.of(c)
            merged[q] = merged[q] + c if q in merged else c
        self.nvars = nvars
        self.terms = {q: c for q, c in merged.items() if not c.is_zero()}

    def __add__(self, other: "ExpPolySum") -> "ExpPolySum":
        return ExpPolySum(self.nvars, list(self.terms.items()) + list(other.terms.items()))

    def scale(self, c) -> "ExpPolySum":
        c = AlgebraicScalar.of(c)
        return ExpPolySum(self.nvars, [(q, v * c) for q, v in self.terms.items()])

    def __mul__(self, other: "ExpPolySum") -> "ExpPolySum":
        return ExpPolySum(
            self.nvars,
            [(q1 + q2, c1 * c2) for q1, c1 in self.terms.items() for q2, c2 in other.terms.items()],
        )

    def __eq__(self, other):
        if not isinstance(other, ExpPolySum):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def is_single(self) -> bool:
        return len(self.terms) == 1

    def single(self):
        (q, c), = self.terms.items()
        return q, c

    def value(self, point, precision: int = 256):
        with mpmath.workprec(precision + 10):
            total = mpmath.mpc(0)
            for q, c in self.terms.items():
                total += c.value(precision) * mpmath.exp(evaluate(q, point, precision))
        return total

    def log_value(self, point, precision: int = 256):
        """A logarithm of the value, computed without forming huge exponentials."""
        with mpmath.workprec(precision + 10):
            qs = [(evaluate(q, point, precision), c) for q, c in self.terms.items()]
            if not qs:
                return None
            q0 = max(qs, key=lambda t: t[0].real)[0]
            s = mpmath.mpc(0)
            for qv, c in qs:
                s += c.value(precision) * mpmath.exp(qv - q0)
            if s == 0:
                return None
            return q0 + mpmath.log(s)

    def __repr__(self):
        parts = [f"({c})*exp({q.render()})" for q, c in self.terms.items()]
        return "ExpPolySum(" + " + ".join(parts) + ")"


def gradient_closed_form(s) -> list:
    """``[du/dz_1, ..., du/dz_n]`` as exponential-polynomial sums."""
    comps = [ExpPolySum(s.nvars) for _ in range(s.nvars)]
    for t in s.terms:
        q = compose_linear(t.p, t.ell)
        beta = AlgebraicScalar.of(t.beta)
        for j, a in t.ell.coeffs.items():
            comps[j] = comps[j] + ExpPolySum(s.nvars, {q: beta * a})
    return comps


def _rows(comps, matrix):
    if matrix is None:
        return comps
    n = len(comps)
    rows = []
    for i in range(n):
        acc = ExpPolySum(n)
        for j in range(n):
            a = matrix[i, j] if hasattr(matrix, "entries") else matrix[i][j]
            if a:
                acc = acc + comps[j].scale(a)
        rows.append(acc)
    return rows


@dataclass
class VerifyReport:
    symbolic: str | None = None
    symbolic_detail: str = ""
    witness: str | None = None
    row: int | None = None
    scalar_identity: str | None = None
    scalar_method: str | None = None
    numeric: dict | None = None
    max_residual: float | None = None
    crosschecks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        ok = self.symbolic in (None, PASS)
        if self.numeric is not None:
            ok = ok and self.numeric["verdict"] == PASS
        return ok

    def to_json(self) -> dict:
        out = {}
        if self.symbolic is not None:
            out["symbolic"] = {
                "verdict": self.symbolic,
                "exponent_witness": self.witness,
                "row": None if self.row is None else self.row + 1,
                "scalar_identity": self.scalar_identity,
                "scalar_method": self.scalar_method,
                "detail": self.symbolic_detail,
            }
        if self.numeric is not None:
            out["numeric"] = self.numeric
        if self.crosschecks:
            out["crosschecks"] = self.crosschecks
        return out


def symbolic_verify(s, g: MultiPoly, matrix=None) -> VerifyReport:
    """Exact check of ``prod_i rows_i = exp(g)``; rows are the gradient
    components (plain mode) or ``row_i(A) . grad u`` (matrix mode)."""
    rep = VerifyReport()
    if g.nvars != s.nvars:
        raise PreconditionViolation("solution and g have different variable counts")
    rows = _rows(gradient_closed_form(s), matrix)
    exponent = MultiPoly.zero(s.nvars)
    scalar = AlgebraicScalar.of(ONE)
    for i, r in enumerate(rows):
        if len(r) == 0:
            rep.symbolic, rep.row = FAIL, i
            rep.symbolic_detail = f"row {i + 1} vanishes identically"
            return rep
        if not r.is_single():
            rep.symbolic, rep.row = FAIL, i
            rep.symbolic_detail = (
                f"NotSingleExponential: row {i + 1} has {len(r)} distinct exponentials"
            )
            return rep
        q, c = r.single()
        exponent = exponent + q
        scalar = scalar * c
    diff = exponent - g
    ok_scalar, method = scalar.decide_one()
    rep.scalar_identity = PASS if ok_scalar else FAIL
    rep.scalar_method = method
    if not diff.is_zero():
        rep.symbolic = FAIL
        rep.witness = diff.render()
        rep.symbolic_detail = "sum of exponents minus g is not zero"
        return rep
    if not ok_scalar:
        rep.symbolic = FAIL
        rep.symbolic_detail = f"scalar product {scalar} is not 1"
        return rep
    rep.symbolic = PASS
    rep.symbolic_detail = "exponents sum to g and scalars multiply to 1"
    return rep


def sample_points(n: int, samples: int, radius: float, seed: int) -> list:
    """Points uniform in the polydisk ``|z_i| <= radius``, fixed by ``seed``."""
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.random((samples, n)))
    theta = 2 * np.pi * rng.random((samples, n))
    pts = r * np.exp(1j * theta)
    return [[complex(x) for x in row] for row in pts]


def _fmt(x) -> str:
    return f"{float(x):.6e}"


def numeric_verify(u, g, samples: int = 100, radius: float = 1.0, tol: float = 1e-9,
                   seed: int = 0, precision: int = 256, matrix=None,
                   nvars: int | None = None) -> VerifyReport:
    """Sample ``|prod_i rows_i(z) / exp(g(z)) - 1|`` at seeded points.

    ``u`` is a :class:`SolutionForm` (closed-form gradient, residual formed
    in log space) or an expression tree (symbolic derivatives, raw product).
    ``g`` is a :class:`MultiPoly` or an expression tree.
    """
    _check_precision(precision)
    if samples < 1 or radius <= 0 or tol <= 0:
        raise PreconditionViolation("samples, radius and tol must be positive")
    closed = hasattr(u, "terms")
    if nvars is None:
        nvars = u.nvars if closed else getattr(g, "nvars", None)
    if nvars is None:
        raise PreconditionViolation("nvars unknown: pass it explicitly for expression inputs")
    n = nvars
    if closed:
        rows = _rows(gradient_closed_form(u), matrix)
    else:
        partials = [diff_expr(u, j) for j in range(n)]

    def g_at(z):
        if isinstance(g, MultiPoly):
            return evaluate(g, z, precision)
        return eval_expr(g, z, precision)

    residuals, excluded = [], []
    for k, z in enumerate(sample_points(n, samples, radius, seed)):
        try:
            with mpmath.workprec(precision):
                if closed:
                    logs = [r.log_value(z, precision) for r in rows]
                    if any(v is None for v in logs):
                        res = mpmath.inf
                    else:
                        res = abs(mpmath.expm1(mpmath.fsum(logs) - g_at(z)))
                else:
                    vals = [eval_expr(d, z, precision) for d in partials]
                    if matrix is not None:
                        vals = [
                            mpmath.fsum(complex_eval(matrix[i, j], 256) * vals[j]
                                        for j in range(n))
                            for i in range(n)
                        ]
                    prod = mpmath.fprod(vals)
                    eg = mpmath.exp(g_at(z))
                    if precision == 53 and not mpmath.isfinite(complex(eg)):
                        raise EvaluationOverflow("exp(g) overflows")
                    res = abs(prod - eg) / abs(eg)
        except EvaluationOverflow as exc:
            excluded.append({"index": k, "reason": str(exc)})
            continue
        residuals.append(float(res) if mpmath.isfinite(res) else math.inf)
    if residuals:
        worst = max(residuals)
        mean = sum(residuals) / len(residuals)
    else:
        worst = mean = math.inf
    verdict = PASS if worst < tol else TOL_EXCEEDED
    rep = VerifyReport()
    rep.numeric = {
        "verdict": verdict,
        "max_residual": _fmt(worst),
        "mean_residual": _fmt(mean),
        "samples": samples,
        "evaluated": len(residuals),
        "excluded": excluded,
        "radius": radius,
        "tol": tol,
        "seed": seed,
        "precision": precision,
    }
    rep.max_residual = worst
    return rep


@lru_cache(maxsize=None)
def gauss_legendre(nodes: int, precision: int = 256):
    """Nodes and weights on [-1, 1] by Newton iteration on the Legendre
    recurrence, at ``precision`` bits."""
    with mpmath.workprec(precision + 32):
        xs, ws = [], []
        eps = mpmath.mpf(2) ** (-(precision + 16))
        for i in range(1, nodes + 1):
            x = mpmath.cos(mpmath.pi * (i - mpmath.mpf(1) / 4) / (nodes + mpmath.mpf(1) / 2))
            for _ in range(100):
                p0, p1 = mpmath.mpf(1), x
                for k in range(2, nodes + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = nodes * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < eps:
                    break
            p0, p1 = mpmath.mpf(1), x
            for k in range(2, nodes + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = nodes * (x * p1 - p0) / (x * x - 1)
            xs.append(x)
            ws.append(2 / ((1 - x * x) * dp * dp))
    return tuple(xs), tuple(ws)


def quadrature_eval(t, point, nodes: int = 64, precision: int = 256):
    """``f(ell(z)) = int_0^{ell(z)} beta*exp(p(s)) ds`` along the segment
    from 0; the integrand is entire so any path gives the same value."""
    if nodes not in QUADRATURE_NODES:
        raise PreconditionViolation(f"nodes must be one of {QUADRATURE_NODES}")
    _check_precision(precision)
    xs, ws = gauss_legendre(nodes, 256)
    with mpmath.workprec(precision + 10):
        w = t.ell(point, 256)
        coeffs = [complex_eval(c, 256) for c in t.p.univariate_coeffs()]
        total = mpmath.mpc(0)
        for x, wt in zip(xs, ws):
            s = w * (x + 1) / 2
            total += wt * mpmath.exp(mpmath.polyval(coeffs[::-1], s) if coeffs else 0)
        value = t.beta.value(256) * total * w / 2
        if not mpmath.isfinite(value):
            raise EvaluationOverflow("quadrature value is not finite")
    with mpmath.workprec(precision):
        return +value


def solution_value(s, point, nodes: int = 64, precision: int = 256):
    with mpmath.workprec(precision + 10):
        total = mpmath.fsum(quadrature_eval(t, point, nodes, precision) for t in s.terms)
    return total


def fd_crosscheck(s, point, h: float = 1e-6, nodes: int = 64, precision: int = 256) -> float:
    """Max over ``j`` of ``|central difference - closed form| / max(|closed form|, 1)``."""
    if not 1e-8 <= h <= 1e-4:
        raise PreconditionViolation("step must lie in [1e-8, 1e-4]")
    comps = gradient_closed_form(s)
    worst = 0.0
    with mpmath.workprec(precision + 10):
        z = [mpmath.mpmathify(x) for x in point]
        for j in range(s.nvars):
            zp, zm = list(z), list(z)
            zp[j] += h
            zm[j] -= h
            fd = (solution_value(s, zp, nodes, precision)
                  - solution_value(s, zm, nodes, precision)) / (2 * h)
            cf = comps[j].value(z, precision)
            dev = abs(fd - cf) / max(abs(cf), 1)
            worst = max(worst, float(dev))
    return worst
