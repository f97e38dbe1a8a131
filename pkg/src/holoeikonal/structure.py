"""Variable-interaction structure of the exponent polynomial ``g``.

The interaction graph joins ``z_i`` and ``z_j`` when the mixed partial
``d^2 g / dz_i dz_j`` is not identically zero.  Its connected components give
the finest additive decomposition of ``g``; each multi-variable component is
then tested for ridge form ``G(A_1 z_1 + ... + A_m z_m)``.  A component that
is not a ridge polynomial certifies that no entire solution exists.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations

from .errors import PreconditionViolation
from .multipoly import LinearForm, MultiPoly, compose_linear, const_ratio, partial_derivative
from .scalar import ZERO, GaussianRational

SINGLETON = "singleton"
RIDGE = "ridge"
UNRESOLVED = "unresolved"

CASE_A = "a"
CASE_B = "b"
CASE_C = "c"
NO_SOLUTION = "none"


@dataclass(frozen=True)
class InteractionGraph:
    nvars: int
    edges: frozenset  # of (i, j) with i < j

    def neighbours(self, i: int) -> list:
        return sorted({j for e in self.edges for j in e if i in e and j != i})


@dataclass(frozen=True)
class Block:
    vars: tuple
    poly: MultiPoly
    kind: str = UNRESOLVED
    ell: LinearForm | None = None
    G: MultiPoly | None = None

    @property
    def size(self) -> int:
        return len(self.vars)

    def is_affine(self) -> bool:
        return self.poly.degree() <= 1


@dataclass(frozen=True)
class VariablePartition:
    nvars: int
    blocks: tuple
    kappa: GaussianRational = ZERO

    @property
    def J(self) -> tuple:
        return tuple(b.vars[0] for b in self.blocks if b.kind == SINGLETON)

    @property
    def chi(self) -> tuple:
        return tuple(sorted(v for b in self.blocks if b.kind != SINGLETON for v in b.vars))

    def ridge_groups(self) -> list:
        return [b for b in self.blocks if b.kind == RIDGE]

    def reconstruct(self) -> MultiPoly:
        total = MultiPoly.const(self.nvars, self.kappa)
        for b in self.blocks:
            total = total + b.poly
        return total

    def block_sets(self) -> list:
        return [frozenset(b.vars) for b in self.blocks]


@dataclass(frozen=True)
class Classification:
    tag: str
    t: int = 0
    nu: int = 0
    witness: Block | None = None
    detail: str = ""

    @property
    def has_solution(self) -> bool:
        return self.tag != NO_SOLUTION


def interaction_graph(g: MultiPoly) -> InteractionGraph:
    n = g.nvars
    firsts = [partial_derivative(g, i) for i in range(n)]
    edges = set()
    for i, j in combinations(range(n), 2):
        if not partial_derivative(firsts[i], j).is_zero():
            edges.add((i, j))
    return InteractionGraph(n, frozenset(edges))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller index as root so roots are block minima
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def additive_split(g: MultiPoly) -> VariablePartition:
    """Split ``g`` into the connected components of its interaction graph.

    The constant term is removed from every block and returned as ``kappa``.
    """
    n = g.nvars
    uf = _UnionFind(n)
    for i, j in interaction_graph(g).edges:
        uf.union(i, j)
    comps = {}
    for v in range(n):
        comps.setdefault(uf.find(v), []).append(v)
    polys = {root: {} for root in comps}
    zero_exp = (0,) * n
    for e, c in g.items():
        if e == zero_exp:
            continue
        v = next(k for k, a in enumerate(e) if a)
        polys[uf.find(v)][e] = c
    blocks = []
    for root in sorted(comps):
        vars_ = tuple(comps[root])
        kind = SINGLETON if len(vars_) == 1 else UNRESOLVED
        blocks.append(Block(vars_, MultiPoly(n, polys[root]), kind))
    return VariablePartition(n, tuple(blocks), g.constant_term())


def ridge_detect(h: MultiPoly, vars_) -> tuple | None:
    """Return ``(ell, G)`` with ``h == G(ell(z))`` and ``ell``'s anchor
    coefficient equal to 1, or ``None`` if ``h`` is not a ridge polynomial."""
    vars_ = tuple(sorted(vars_))
    if len(vars_) < 2:
        raise PreconditionViolation("ridge detection needs at least two variables")
    if h.variables() != frozenset(vars_):
        raise PreconditionViolation(
            f"polynomial uses variables {sorted(h.variables())}, block is {list(vars_)}"
        )
    anchor = vars_[0]
    d_anchor = partial_derivative(h, anchor)
    coeffs = {anchor: GaussianRational(1)}
    for j in vars_[1:]:
        ratio = const_ratio(partial_derivative(h, j), d_anchor)
        if ratio is None:
            return None
        coeffs[j] = ratio
    ell = LinearForm(h.nvars, coeffs)
    G = h.restrict_to(anchor)
    if compose_linear(G, ell) != h:
        return None
    return ell, G


def classify(g: MultiPoly) -> tuple:
    """Return ``(partition, classification)`` for ``g``."""
    part = additive_split(g)
    blocks = []
    for b in part.blocks:
        if b.kind == SINGLETON:
            blocks.append(b)
            continue
        found = ridge_detect(b.poly, b.vars)
        if found is None:
            detail = (
                "block {%s} is not of the form G(A.z): its first partials are not "
                "pairwise constant multiples" % ", ".join(f"z{v + 1}" for v in b.vars)
            )
            return part, Classification(NO_SOLUTION, witness=b, detail=detail)
        ell, G = found
        blocks.append(replace(b, kind=RIDGE, ell=ell, G=G))
    part = replace(part, blocks=tuple(blocks))
    return part, classification_of(part)


def classification_of(part: VariablePartition) -> Classification:
    nu = len(part.J)
    t = len(part.ridge_groups())
    if nu == part.nvars:
        return Classification(CASE_A, t=0, nu=nu)
    if nu == 0:
        return Classification(CASE_B, t=t, nu=0)
    return Classification(CASE_C, t=t, nu=nu)
