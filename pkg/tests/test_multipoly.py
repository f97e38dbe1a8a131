import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import gaussian_rationals, nonzero_gaussian_rationals, polys
from oracles import central_difference, cooccurrence_edges
from holoeikonal import (
    LinearForm,
    MultiPoly,
    compose_linear,
    const_ratio,
    evaluate,
    parse_poly,
    partial_derivative,
    poly_arith,
    substitute_linear_map,
)
from holoeikonal.errors import DegreeCapExceeded, ZeroDivisorPolynomial
from holoeikonal.scalar import GaussianRational as Q


def P(text, n):
    return parse_poly(text, n)


def test_poly_arith_examples():
    assert poly_arith("add", P("z1", 1), P("-z1", 1)).is_zero()
    assert poly_arith("mul", P("z1+z2", 2), P("z1-z2", 2)) == P("z1^2-z2^2", 2)
    assert poly_arith("pow", P("z1+2*z2", 2), 2) == P("z1^2+4*z1*z2+4*z2^2", 2)
    assert poly_arith("scale", P("z1", 1), Q(0, 1)) == P("i*z1", 1)


def test_degree_cap():
    with pytest.raises(DegreeCapExceeded):
        poly_arith("pow", P("z1", 1), 65)
    with pytest.raises(DegreeCapExceeded):
        P("z1^40", 1) * P("z1^30", 1)


def test_partial_derivative_examples():
    assert partial_derivative(P("z1^2*z2", 2), 0) == P("2*z1*z2", 2)
    assert partial_derivative(P("z1^2", 2), 1).is_zero()
    p = P("z1*z2+z3^2", 3)
    d12 = partial_derivative(partial_derivative(p, 0), 1)
    d21 = partial_derivative(partial_derivative(p, 1), 0)
    assert d12 == d21 == MultiPoly.const(3, 1)


def test_evaluate_examples():
    assert evaluate(P("z1^2+z2", 2), [2, 3]) == 7
    assert evaluate(P("z1*z2", 2), [1j, 1j]) == -1
    assert evaluate(P("(z1+2*z2)^3", 2), [1, 1]) == 27


def test_compose_linear_examples():
    t2 = MultiPoly.univariate([0, 0, 1])
    assert compose_linear(t2, LinearForm(2, {0: 1, 1: 1})) == P("z1^2+2*z1*z2+z2^2", 2)
    assert compose_linear(MultiPoly.univariate([0, 1]), LinearForm(2, {1: 3})) == P("3*z2", 2)
    t3 = MultiPoly.univariate([0, 0, 0, 1])
    ell = LinearForm(2, {0: 1, 1: 2})
    # oracle: repeated multiplication
    L = P("z1+2*z2", 2)
    assert compose_linear(t3, ell) == L * L * L == P("z1^3+6*z1^2*z2+12*z1*z2^2+8*z2^3", 2)


def test_substitute_linear_map_examples():
    assert substitute_linear_map(P("z1*z2", 2), [[1, 0], [0, 1]]) == P("z1*z2", 2)
    assert substitute_linear_map(P("z1", 2), [[0, 1], [1, 0]]) == P("z2", 2)
    M = [[1, 1], [Q(0, 1), Q(0, -1)]]
    w1, w2 = P("z1", 2), P("z2", 2)
    expected = (w1 + w2) ** 2 + (w1.scale(Q(0, 1)) - w2.scale(Q(0, 1))) ** 2
    got = substitute_linear_map(P("z1^2+z2^2", 2), M)
    assert got == expected == P("4*z1*z2", 2)


def test_const_ratio_examples():
    assert const_ratio(P("2*z1+2*z2", 2), P("z1+z2", 2)) == 2
    assert const_ratio(P("z1", 2), P("z2", 2)) is None
    assert const_ratio(MultiPoly.zero(1), P("z1^2", 1)) == 0
    with pytest.raises(ZeroDivisorPolynomial):
        const_ratio(P("z1", 1), MultiPoly.zero(1))


def test_render_example():
    p = P("(1/2)*z1^2*z2 + i*z3 + 5", 3)
    assert p.render() == "(1/2)*z1^2*z2 + i*z3 + 5"
    assert P("-z1 - (1/3)*i*z2 + (1+2*i)", 2).render() == "-z1 - (1/3*i)*z2 + (1+2*i)"


@given(polys())
def test_mixed_partials_commute(p):
    for i in range(p.nvars):
        for j in range(p.nvars):
            a = partial_derivative(partial_derivative(p, i), j)
            b = partial_derivative(partial_derivative(p, j), i)
            assert a == b


@given(polys(max_exp=4), st.data())
def test_derivative_matches_central_difference(p, data):
    z = [complex(data.draw(st.floats(-0.8, 0.8)), data.draw(st.floats(-0.8, 0.8)))
         for _ in range(p.nvars)]
    for i in range(p.nvars):
        exact = evaluate(partial_derivative(p, i), z, 256)
        fd = central_difference(lambda w: evaluate(p, w, 256), z, i)
        scale = max(1, abs(exact))
        assert abs(exact - fd) / scale < 1e-6


@given(st.lists(gaussian_rationals, min_size=1, max_size=5),
       st.lists(nonzero_gaussian_rationals, min_size=1, max_size=4), st.data())
def test_compose_linear_agrees_with_univariate_evaluation(gc, ac, data):
    G = MultiPoly.univariate(gc)
    n = len(ac)
    ell = LinearForm(n, dict(enumerate(ac)))
    z = [complex(data.draw(st.floats(-1, 1)), data.draw(st.floats(-1, 1))) for _ in range(n)]
    lhs = evaluate(compose_linear(G, ell), z, 256)
    rhs = evaluate(G, [ell(z)], 256)
    assert abs(lhs - rhs) <= 1e-12 * max(1, abs(rhs))


@given(polys(max_terms=6, max_exp=2))
def test_mixed_partial_zero_iff_no_cooccurrence(p):
    edges = cooccurrence_edges(p)
    for i in range(p.nvars):
        for j in range(i + 1, p.nvars):
            mixed = partial_derivative(partial_derivative(p, i), j)
            assert mixed.is_zero() == ((i, j) not in edges)


@given(polys(), st.integers(1, 3))
def test_pow_matches_repeated_mul(p, k):
    acc = MultiPoly.const(p.nvars, 1)
    for _ in range(k):
        acc = acc * p
    assert p ** k == acc


def test_evaluate_precision_53_vs_256():
    p = P("(1/3)*z1^3 + i*z1*z2 - 7", 2)
    z = [0.3 + 0.1j, -0.7j]
    assert abs(evaluate(p, z, 53) - evaluate(p, z, 256)) < 1e-14
    with pytest.raises(ValueError):
        evaluate(p, z, 64)
    assert isinstance(evaluate(p, z), mpmath.mpc)
