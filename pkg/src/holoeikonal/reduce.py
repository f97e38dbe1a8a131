"""Matrix form ``prod_i (row_i(A) . grad u) = exp(g)`` with ``det A != 0``.

Substituting ``z = A^T w`` turns the equation into
``v_{w_1} ... v_{w_n} = exp(g(A^T w))`` for ``v(w) = u(A^T w)``.  We solve
that with :func:`synthesize` and map every linear form back through
``w = (A^T)^{-1} z``.  All linear algebra is exact.
"""

from __future__ import annotations

from dataclasses import replace

from .errors import PreconditionViolation, SingularMatrix
from .multipoly import LinearForm, MultiPoly, substitute_linear_map
from .scalar import ONE, ZERO, GaussianRational
from .synthesize import SolutionForm, synthesize


class MatrixA:
    """Square matrix of Gaussian rationals; the determinant is cached."""

    def __init__(self, entries):
        rows = tuple(tuple(GaussianRational.coerce(x) for x in row) for row in entries)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise PreconditionViolation("matrix must be square and nonempty")
        self.entries = rows
        self._det = None

    def __eq__(self, other):
        if not isinstance(other, MatrixA):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "MatrixA([%s])" % ", ".join(
            "[" + ", ".join(str(x) for x in r) + "]" for r in self.entries
        )

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list:
        return [list(r) for r in self.entries]

    def transpose(self) -> "MatrixA":
        return MatrixA(list(zip(*self.entries)))

    def __matmul__(self, other: "MatrixA") -> "MatrixA":
        n = self.n
        return MatrixA(
            [[sum((self[i, k] * other[k, j] for k in range(n)), ZERO) for j in range(n)]
             for i in range(n)]
        )

    def determinant(self) -> GaussianRational:
        if self._det is None:
            self._det = determinant(self)
        return self._det

    @classmethod
    def identity(cls, n: int) -> "MatrixA":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])


def determinant(A) -> GaussianRational:
    """Exact determinant by Bareiss fraction-free elimination."""
    M = [list(r) for r in (A.entries if isinstance(A, MatrixA) else A)]
    M = [[GaussianRational.coerce(x) for x in r] for r in M]
    n = len(M)
    sign = ONE
    prev = ONE
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((r for r in range(k + 1, n) if M[r][k]), None)
            if swap is None:
                return ZERO
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division: Bareiss guarantees divisibility in the ring,
                # and Q(i) is a field anyway
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev
            M[i][k] = ZERO
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else ONE


def inverse(A: MatrixA) -> MatrixA:
    """Exact inverse by Gauss-Jordan elimination over Q(i)."""
    n = A.n
    M = [list(A.entries[i]) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        M[c], M[piv] = M[piv], M[c]
        inv = M[c][c].inverse()
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return MatrixA([row[n:] for row in M])


def _singular_message(A: MatrixA) -> str:
    return (
        f"det(A) = 0 for the {A.n}x{A.n} coefficient matrix; the reduction to "
        "u_{w1}...u_{wn} = exp(g) needs an invertible matrix, and without it the "
        "linear-solution conclusion can fail"
    )


def transform_g(g: MultiPoly, A: MatrixA) -> MultiPoly:
    """``g(A^T w)``."""
    if A.n != g.nvars:
        raise PreconditionViolation(f"matrix is {A.n}x{A.n}, g has {g.nvars} variables")
    if not A.determinant():
        raise SingularMatrix(_singular_message(A))
    return substitute_linear_map(g, A.transpose().rows())


def reduce_solve_backsub(A: MatrixA, g: MultiPoly) -> SolutionForm:
    """Solve the matrix-form equation; raises :class:`SingularMatrix` or
    :class:`~holoeikonal.errors.NoEntireSolution`."""
    g_tilde = transform_g(g, A)
    v = synthesize(g_tilde)
    # ell(w) = c . w with w = (A^T)^{-1} z, so ell'(z) = ((A^T)^{-1})^T c = A^{-1} c
    A_inv = inverse(A)
    n = A.n
    terms = []
    for t in v.terms:
        c = [t.ell.coeffs.get(k, ZERO) for k in range(n)]
        new = {
            i: sum((A_inv[i, k] * c[k] for k in range(n)), ZERO) for i in range(n)
        }
        terms.append(replace(t, ell=LinearForm(n, new)))
    return replace(v, terms=tuple(terms), canonical=False)
