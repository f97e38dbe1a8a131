import random

import pytest

from generators import rand_gq, random_instance, seeded
from oracles import cofactor_det
from holoeikonal import (
    MatrixA,
    MultiPoly,
    determinant,
    inverse,
    numeric_verify,
    parse_poly,
    reduce_solve_backsub,
    symbolic_verify,
    transform_g,
)
from holoeikonal.errors import SingularMatrix
from holoeikonal.scalar import GaussianRational as Q

I = Q(0, 1)


def P(text, n):
    return parse_poly(text, n)


def rand_matrix(rng, n):
    return MatrixA([[Q(rng.randint(-2, 2), rng.randint(-1, 1)) for _ in range(n)] for _ in range(n)])


def test_determinant_examples():
    assert determinant(MatrixA.identity(3)) == 1
    assert determinant(MatrixA([[1, I], [1, -I]])) == Q(0, -2)
    assert determinant(MatrixA([[1, 2, I], [3, 4, 5], [1, 2, I]])) == 0


@pytest.mark.parametrize("seed", range(30))
def test_determinant_matches_cofactor(seed):
    rng = random.Random(seed)
    A = rand_matrix(rng, rng.randint(1, 5))
    assert determinant(A) == cofactor_det(A.rows())


@pytest.mark.parametrize("seed", range(20))
def test_determinant_multiplicative(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(2, 4)
    A, B = rand_matrix(rng, n), rand_matrix(rng, n)
    assert determinant(A @ B) == determinant(A) * determinant(B)
    assert determinant(A.transpose()) == determinant(A)


@pytest.mark.parametrize("seed", range(20))
def test_inverse(seed):
    rng = random.Random(200 + seed)
    n = rng.randint(1, 5)
    A = rand_matrix(rng, n)
    if not determinant(A):
        with pytest.raises(SingularMatrix):
            inverse(A)
        return
    assert A @ inverse(A) == MatrixA.identity(n)


def test_transform_examples():
    rng = random.Random(3)
    for _ in range(5):
        A = rand_matrix(rng, 3)
        if determinant(A):
            assert transform_g(P("7/2 - i", 3), A) == P("7/2 - i", 3)
    assert transform_g(P("z1", 2), MatrixA([[0, 1], [1, 0]])) == P("z2", 2)
    w1, w2 = P("z1", 2), P("z2", 2)
    got = transform_g(P("z1*z2", 2), MatrixA([[1, 1], [1, -1]]))
    assert got == (w1 + w2) * (w1 - w2) == P("z1^2 - z2^2", 2)


def test_singular_raises():
    A = MatrixA([[1, 2, 3], [1, 2, 3], [0, 1, I]])
    with pytest.raises(SingularMatrix):
        transform_g(MultiPoly.zero(3), A)
    with pytest.raises(SingularMatrix):
        reduce_solve_backsub(A, P("z1^2", 3))


def test_identity_zero_gives_sum():
    s = reduce_solve_backsub(MatrixA.identity(3), MultiPoly.zero(3))
    assert [t.ell.coeffs for t in s.terms] == [{0: 1}, {1: 1}, {2: 1}]
    assert s.total_degree() == 1


def test_eikonal_factorization_matrix():
    A = MatrixA([[1, I], [1, -I]])
    g = MultiPoly.zero(2)
    s = reduce_solve_backsub(A, g)
    assert s.total_degree() == 1
    assert symbolic_verify(s, g, A).symbolic == "pass"
    # u = a z1 + b z2 with (a + i b)(a - i b) = 1
    a = sum((t.ell.coeffs.get(0, 0) for t in s.terms), Q(0))
    b = sum((t.ell.coeffs.get(1, 0) for t in s.terms), Q(0))
    assert (a + I * b) * (a - I * b) == 1


@pytest.mark.parametrize("seed", range(15))
def test_reduce_round_trip(seed):
    rng = seeded(300 + seed)
    inst = random_instance(rng, n_max=4)
    n = inst.g.nvars
    while True:
        A = rand_matrix(rng, n)
        if determinant(A):
            break
    # g = g~(A^{-T} z) has transform g~
    g = transform_g(inst.g, inverse(A))
    assert transform_g(g, A) == inst.g
    s = reduce_solve_backsub(A, g)
    assert symbolic_verify(s, g, A).symbolic == "pass"
    rep = numeric_verify(s, g, samples=5, radius=0.5, matrix=A)
    assert rep.numeric["verdict"] == "pass"


@pytest.mark.parametrize("seed", range(20))
def test_constant_g_is_linear(seed):
    rng = random.Random(400 + seed)
    n = rng.randint(2, 5)
    while True:
        A = rand_matrix(rng, n)
        if determinant(A):
            break
    g = MultiPoly.const(n, rand_gq(rng))
    s = reduce_solve_backsub(A, g)
    assert s.total_degree() == 1
    assert symbolic_verify(s, g, A).symbolic == "pass"
