from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from virtualih.exactmath import (ExactMatrix, QuadraticField, QuadraticNumber, RowReducer,
                                 annihilator, bareiss_rank, determinant, dim_sym, field_from_spec,
                                 format_scalar, inverse, monomial_basis, parse_scalar, poly_mul,
                                 rank_and_kernel, restrict_polynomial, sign, solve_linear)
from virtualih.exactmath.poly import Substitution

small = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


# -- scalars -------------------------------------------------------------------

def test_rational_parse_and_format():
    assert parse_scalar("3/6") == Fraction(1, 2)
    assert format_scalar(Fraction(-4, 2)) == "-2"
    assert format_scalar(parse_scalar("7/3")) == "7/3"


def test_quadratic_sign_is_exact():
    K = QuadraticField(5)
    phi = K.parse("1/2+1/2*sqrt(5)")
    assert phi * phi == phi + 1
    assert sign(phi - Fraction(1618, 1000)) == 1
    assert sign(phi - Fraction(1619, 1000)) == -1
    assert sign(QuadraticNumber(Fraction(3), Fraction(-4, 3), 5)) == 1   # 3 exceeds (4/3) sqrt 5 narrowly
    assert sign(QuadraticNumber(3, -2, 5)) == -1


@pytest.mark.parametrize("text", ["1/2+1/2*sqrt(5)", "-3*sqrt(5)", "2-sqrt(5)", "7/4"])
def test_quadratic_round_trip(text):
    K = QuadraticField(5)
    x = K.parse(text)
    assert K.parse(format_scalar(x)) == x


def test_field_spec():
    assert field_from_spec("Q(sqrt 5)") == QuadraticField(5)
    with pytest.raises(ValueError):
        field_from_spec("Q(sqrt 4)")
    with pytest.raises(ValueError):
        QuadraticField(12)


@given(small, small, small, small)
def test_quadratic_field_axioms(a, b, c, e):
    x = QuadraticNumber(a, b, 3)
    y = QuadraticNumber(c, e, 3)
    assert (x + y) - y == x
    if y:
        assert (x * y) / y == x


# -- linear algebra --------------------------------------------------------------

def test_rank_and_kernel_examples():
    assert rank_and_kernel(ExactMatrix.identity(3)) == (3, [])
    r, k = rank_and_kernel(ExactMatrix.zeros(2, 5))
    assert r == 0 and len(k) == 5
    r, k = rank_and_kernel(ExactMatrix.from_rows([[1, 1], [1, 1]]))
    assert r == 1 and len(k) == 1
    assert k[0][0] == -k[0][1] != 0


def test_solve_linear_examples():
    assert solve_linear(ExactMatrix.identity(2), [3, 4]) == [3, 4]
    assert solve_linear(ExactMatrix.from_rows([[2]]), [1]) == [Fraction(1, 2)]
    assert solve_linear(ExactMatrix.from_rows([[1], [1]]), [0, 1]) is None
    with pytest.raises(ValueError):
        solve_linear(ExactMatrix.identity(2), [1])


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rank_agrees_with_bareiss(rows):
    m = ExactMatrix.from_rows(rows)
    r, kernel = rank_and_kernel(m)
    assert r == bareiss_rank(rows)
    assert r == m.T.rank()
    assert r + len(kernel) == m.ncols
    for v in kernel:
        assert all(x == 0 for x in m.apply(v))


@settings(max_examples=50, deadline=None)
@given(matrices(4, 4))
def test_solve_reproduces_rhs(rows):
    m = ExactMatrix.from_rows(rows)
    rhs = [sum(rows[i]) for i in range(len(rows))]
    x = solve_linear(m, rhs)
    assert x is not None and m.apply(x) == rhs


def test_determinant_and_inverse():
    M = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    assert determinant(M) == 18
    inv = inverse(M)
    prod = ExactMatrix.from_rows(M) @ ExactMatrix.from_rows(inv)
    assert prod == ExactMatrix.identity(3)


def test_row_reducer_kernel_and_forbidden():
    red = RowReducer(3)
    assert red.add({0: Fraction(1), 1: Fraction(1)})
    assert not red.add({0: Fraction(2), 1: Fraction(2)})
    assert red.rank == 1 and len(red.kernel()) == 2


def test_annihilator():
    forms = annihilator([[1, 1, 0]], 3)
    assert len(forms) == 2
    assert all(f[0] + f[1] == 0 for f in forms)


# -- polynomials -------------------------------------------------------------------

def test_monomial_basis_examples():
    assert monomial_basis(2, 0).basis == ((0, 0),)
    assert monomial_basis(2, 1).basis == ((1, 0), (0, 1))
    b = monomial_basis(3, 2)
    assert b.size == 6 == dim_sym(3, 2)
    assert b.degree == 4
    assert b.basis[:3] == ((2, 0, 0), (1, 1, 0), (1, 0, 1))


def test_restrict_polynomial_examples():
    assert restrict_polynomial([1, 0], 1, [[1, 0]]) == [1]
    assert restrict_polynomial([0, 1], 1, [[1, 0]]) == [0]
    # x1 x2 on the diagonal line
    assert restrict_polynomial([0, 1, 0], 2, [[1, 1]]) == [1]
    with pytest.raises(ValueError):
        restrict_polynomial([1, 0], 1, [[1, 0], [2, 0]])


def _poly(coeffs, n, q):
    return monomial_basis(n, q).to_poly(coeffs)


@settings(max_examples=60, deadline=None)
@given(st.lists(small, min_size=6, max_size=6), st.lists(small, min_size=3, max_size=3),
       st.lists(st.lists(small, min_size=2, max_size=2), min_size=3, max_size=3))
def test_restriction_is_a_ring_homomorphism(p, q, M):
    sub = Substitution(M)
    a, b = _poly(p, 3, 2), _poly(q, 3, 1)
    assert sub(poly_mul(a, b)) == poly_mul(sub(a), sub(b))


def test_restriction_composes_along_chains():
    # R^3 -> plane x3 = 0 -> line x1 = x2 inside the plane
    p = [1, 2, 0, 3, 0, 5]
    plane = [[1, 0, 0], [0, 1, 0]]
    step = restrict_polynomial(restrict_polynomial(p, 2, plane), 2, [[1, 1]])
    direct = restrict_polynomial(p, 2, [[1, 1, 0]])
    assert step == direct
