"""Closed-form entire solutions of ``u_{z_1} ... u_{z_n} = exp(g)``.

A solution is a sum of terms ``f(ell(z))`` where ``f'(t) = beta * exp(p(t))``.

* a singleton block ``{i}`` with polynomial ``g_i(z_i)`` gives
  ``ell = z_i``, ``p = g_i``, ``beta = 1``;
* a ridge block ``G(ell(z))`` on ``m`` variables gives ``p = G/m`` and
  ``beta = root(prod A_j, m)``, so that the ``m`` gradient components of the
  block multiply to exactly ``exp(G(ell))``.

The constant term ``kappa`` of ``g`` is folded into the first block.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations

from .errors import NoEntireSolution, PreconditionViolation
from .multipoly import LinearForm, MultiPoly
from .parsing import parse_scalar
from .scalar import ONE, ZERO, GaussianRational, RootScalar
from .structure import (
    NO_SOLUTION,
    RIDGE,
    SINGLETON,
    Block,
    VariablePartition,
    classification_of,
    classify,
    ridge_detect,
)

MAX_MERGE_CAP = 32


@dataclass(frozen=True)
class SolutionTerm:
    """The term ``f(ell(z))`` with ``f'(t) = beta * exp(p(t))``."""

    ell: LinearForm
    p: MultiPoly
    beta: RootScalar
    m: int = 1

    @property
    def support(self) -> tuple:
        return self.ell.support

    def is_linear(self) -> bool:
        return self.p.is_constant()

    def gauge_holds(self) -> bool:
        """``beta**m * prod(A_j) == 1`` for canonical terms."""
        return self.beta.degree == self.m and self.beta.base == self.ell.product()

    def to_json(self) -> dict:
        return {
            "support": [j + 1 for j in self.support],
            "ell": [str(c) for c in self.ell.coeffs.values()],
            "p": [str(c) for c in self.p.univariate_coeffs()] or ["0"],
            "beta": self.beta.to_json(),
            "m": self.m,
        }

    @classmethod
    def from_json(cls, data: dict, nvars: int) -> "SolutionTerm":
        support = [int(j) - 1 for j in data["support"]]
        coeffs = [parse_scalar(c) for c in data["ell"]]
        if len(support) != len(coeffs):
            raise PreconditionViolation("support and ell lengths differ")
        ell = LinearForm(nvars, dict(zip(support, coeffs)))
        p = MultiPoly.univariate([parse_scalar(c) for c in data.get("p", ["0"])])
        beta = data.get("beta") or {"base": "1", "m": 1}
        return cls(
            ell,
            p,
            RootScalar(parse_scalar(beta["base"]), int(beta["m"])),
            int(data.get("m", beta["m"])),
        )


@dataclass(frozen=True)
class SolutionForm:
    nvars: int
    terms: tuple
    canonical: bool = True
    kappa_term: int | None = 0
    family: dict = field(default_factory=dict, compare=False)

    def total_degree(self):
        """1 when every term is linear in ``z``, ``None`` otherwise
        (the antiderivatives are then transcendental)."""
        if all(t.is_linear() for t in self.terms):
            return 1
        return None

    def supports_partition(self) -> bool:
        seen = []
        for t in self.terms:
            seen.extend(t.support)
        return sorted(seen) == list(range(self.nvars))

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "canonical": self.canonical,
            "kappa_term": self.kappa_term,
            "terms": [t.to_json() for t in self.terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SolutionForm":
        n = int(data["nvars"])
        terms = tuple(SolutionTerm.from_json(t, n) for t in data["terms"])
        sf = cls(n, terms, canonical=bool(data.get("canonical", True)),
                 kappa_term=data.get("kappa_term"))
        if sf.canonical and not sf.supports_partition():
            sf = replace(sf, canonical=False)
        return sf


def _family_note(terms) -> dict:
    params = [f"c{k + 1}" for k in range(len(terms))]
    constraint = " * ".join(
        f"{c}^{t.m}" if t.m > 1 else c for c, t in zip(params, terms)
    ) + " = 1"
    return {
        "representative": "u = sum of the listed terms",
        "parameters": params + ["C"],
        "general": "u = C + " + " + ".join(f"{c}*term{k + 1}" for k, c in enumerate(params)),
        "constraint": constraint,
    }


def synthesize_partition(part: VariablePartition) -> SolutionForm:
    """Build the canonical solution for an already classified partition."""
    n = part.nvars
    terms = []
    for k, b in enumerate(part.blocks):
        kappa = part.kappa if k == 0 else ZERO
        if b.kind == SINGLETON:
            i = b.vars[0]
            p = b.poly.restrict_to(i) + kappa
            terms.append(SolutionTerm(LinearForm(n, {i: ONE}), p, RootScalar(ONE, 1), 1))
        elif b.kind == RIDGE:
            m = b.size
            p = (b.G + kappa).scale(GaussianRational(1, 0) / m)
            terms.append(SolutionTerm(b.ell, p, RootScalar(b.ell.product(), m), m))
        else:
            raise PreconditionViolation(f"block {b.vars} has not been classified")
    return SolutionForm(n, tuple(terms), canonical=True, kappa_term=0,
                        family=_family_note(terms))


def synthesize(g: MultiPoly) -> SolutionForm:
    """Canonical entire solution; raises :class:`NoEntireSolution` when a
    block of ``g`` is not a ridge polynomial."""
    part, cls_ = classify(g)
    if cls_.tag == NO_SOLUTION:
        raise NoEntireSolution(part, cls_)
    return synthesize_partition(part)


def _affine_blocks(part: VariablePartition) -> list:
    out = []
    for b in part.blocks:
        if b.poly.degree() == 1 and b.kind in (SINGLETON, RIDGE):
            out.append(b)
    return out


def _pair_partitions(items):
    """Set partitions of ``items`` into parts of size >= 2, in a fixed order."""
    if not items:
        yield []
        return
    if len(items) == 1:
        return
    first, rest = items[0], items[1:]
    for size in range(1, len(rest) + 1):
        for mates in combinations(rest, size):
            remaining = [x for x in rest if x not in mates]
            for tail in _pair_partitions(remaining):
                yield [(first,) + mates] + tail


def _merge_groups(k):
    """All ways to merge affine blocks ``0..k-1``: first by how many blocks
    take part, then lexicographically."""
    for s in range(2, k + 1):
        for chosen in combinations(range(k), s):
            yield from _pair_partitions(list(chosen))


def enumerate_affine_merges(part: VariablePartition, cap: int = 8) -> tuple:
    """Alternative partitions obtained by merging affine blocks into ridge
    groups with affine profile.

    Returns ``(partitions, truncated)``; at most ``cap`` partitions are
    produced and ``truncated`` tells whether more exist.
    """
    if not 1 <= cap <= MAX_MERGE_CAP:
        raise PreconditionViolation(f"merge cap must be in 1..{MAX_MERGE_CAP}")
    affine = _affine_blocks(part)
    results = []
    truncated = False
    for groups in _merge_groups(len(affine)):
        if len(results) == cap:
            truncated = True
            break
        merged_ids = set()
        new_blocks = []
        for grp in groups:
            blocks = [affine[k] for k in grp]
            merged_ids.update(id(b) for b in blocks)
            vars_ = tuple(sorted(v for b in blocks for v in b.vars))
            poly = MultiPoly.zero(part.nvars)
            for b in blocks:
                poly = poly + b.poly
            found = ridge_detect(poly, vars_)
            if found is None or found[1].degree() != 1:
                raise AssertionError(f"merged affine block {vars_} failed ridge validation")
            ell, G = found
            new_blocks.append(Block(vars_, poly, RIDGE, ell, G))
        kept = [b for b in part.blocks if id(b) not in merged_ids]
        blocks = tuple(sorted(kept + new_blocks, key=lambda b: b.vars[0]))
        results.append(replace(part, blocks=blocks))
    return results, truncated


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _paren(text: str) -> str:
    return f"({text})" if any(ch in text for ch in " +-") else text


def _scalar_prefix(beta: RootScalar, const: GaussianRational) -> list:
    factors = []
    if not (beta.exact is not None and beta.exact == ONE):
        factors.append(_paren(str(beta)))
    if const:
        factors.append(f"exp({const})")
    return factors


def _render_text(s: SolutionForm) -> str:
    parts, notes = [], []
    for k, t in enumerate(s.terms):
        ell = t.ell.render()
        if t.is_linear():
            factors = _scalar_prefix(t.beta, t.p.constant_term())
            parts.append("*".join(factors + [_paren(ell)]) if factors else ell)
        elif t.m == 1 and len(t.support) == 1 and t.beta.exact == ONE:
            parts.append(f"Int(exp({t.p.render(['t'])}) dt, t = {ell})")
        else:
            name = f"f{k + 1}"
            parts.append(f"{name}({ell})")
            factors = _scalar_prefix(t.beta, ZERO)
            lead = "*".join(factors) + "*" if factors else ""
            notes.append(f"{name}'(t) = {lead}exp({t.p.render(['t'])})")
    lines = ["u = " + " + ".join(parts)]
    lines.extend("  " + n for n in notes)
    if any("root(" in line for line in lines):
        lines.append("  root(b, m) := principal branch of b^(-1/m)")
    return "\n".join(lines)


def _render_latex(s: SolutionForm) -> str:
    parts, notes = [], []
    for k, t in enumerate(s.terms):
        ell = t.ell.to_poly().latex()
        beta = "" if t.beta.exact == ONE else t.beta.latex()
        if t.is_linear():
            c = t.p.constant_term()
            e = f"e^{{{c.latex()}}}" if c else ""
            parts.append(f"{beta}{e}({ell})" if beta or e else ell)
        elif t.m == 1 and len(t.support) == 1 and t.beta.exact == ONE:
            parts.append(f"\\int_0^{{{ell}}} e^{{{t.p.latex(['t'])}}}\\,dt")
        else:
            parts.append(f"f_{{{k + 1}}}({ell})")
            notes.append(f"f_{{{k + 1}}}'(t) = {beta}e^{{{t.p.latex(['t'])}}}")
    out = "u = " + " + ".join(parts)
    if notes:
        out += ",\\quad " + ",\\quad ".join(notes)
    return out


def render_solution(s: SolutionForm, fmt: str = "text") -> str:
    if fmt == "text":
        return _render_text(s)
    if fmt == "latex":
        return _render_latex(s)
    raise ValueError(f"unknown format {fmt!r}")


def partition_summary(part: VariablePartition) -> dict:
    cls_ = classification_of(part)
    return {
        "case": cls_.tag,
        "blocks": [
            {"vars": [v + 1 for v in b.vars], "kind": b.kind, "poly": b.poly.render()}
            for b in part.blocks
        ],
    }
