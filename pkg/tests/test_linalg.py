from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quotbench import linalg as la
from quotbench.linalg import PrimeField, RationalField, Subspace

F7 = PrimeField(7)
F101 = PrimeField(101)


def matrix_units_mult(F, n):
    """Structure constants of the n x n matrix algebra on the basis E_ij."""
    d = n * n
    mult = F.zeros((d, d, d))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                mult[i * n + j, j * n + k, i * n + k] = 1
    return mult


def upper_triangular_mult(F):
    """Basis E11, E12, E22 of upper triangular 2 x 2 matrices."""
    idx = {(0, 0): 0, (0, 1): 1, (1, 1): 2}
    mult = F.zeros((3, 3, 3))
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if j == k:
                mult[a, b, idx[(i, l)]] = 1
    return mult


def truncated_poly_mult(F, n):
    """k[t]/(t^n) on the monomial basis."""
    mult = F.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            if i + j < n:
                mult[i, j, i + j] = 1
    return mult


matrices = st.tuples(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**31)).map(
    lambda t: F7.random((t[0], t[1]), np.random.default_rng(t[2]))
)


# ---------------------------------------------------------
# Fields
# ---------------------------------------------------------
def test_prime_field_inverse():
    for a in range(1, 7):
        assert (a * F7.inv(a)) % 7 == 1


def test_field_from_spec_variants():
    assert la.field_from_spec(101) == F101
    assert la.field_from_spec({"kind": "prime", "p": 7}) == F7
    assert isinstance(la.field_from_spec("Q"), RationalField)
    with pytest.raises(ValueError):
        la.field_from_spec(8)


def test_rational_rref_is_exact():
    Q = RationalField()
    a = Q.array([[1, 2], [3, 4]])
    inv = la.inverse(Q, a)
    assert inv[0, 0] == Fraction(-2) and inv[1, 0] == Fraction(3, 2)
    assert np.array_equal(Q.dot(a, inv), Q.eye(2))


# ---------------------------------------------------------
# Subspace calculus
# ---------------------------------------------------------
@given(matrices)
@settings(max_examples=60, deadline=None)
def test_rank_nullity(a):
    ker = la.subspace_calculus("kernel", a, F=F7)
    assert ker.dim + la.rank(F7, a) == a.shape[1]
    for v in ker.basis:
        assert la.is_zero(F7.dot(a, v))


@given(st.integers(1, 6), st.integers(0, 2**31))
@settings(max_examples=60, deadline=None)
def test_sum_intersection_dimension_formula(n, seed):
    rng = np.random.default_rng(seed)
    u = Subspace.span(F7, n, F7.random((int(rng.integers(0, n + 1)), n), rng))
    v = Subspace.span(F7, n, F7.random((int(rng.integers(0, n + 1)), n), rng))
    s = la.subspace_calculus("sum", u, v, F=F7)
    i = la.subspace_calculus("intersection", u, v, F=F7)
    assert s.dim + i.dim == u.dim + v.dim
    assert u.contains_subspace(i) and v.contains_subspace(i)
    assert s.contains_subspace(u) and s.contains_subspace(v)


@given(matrices, st.integers(0, 2**31))
@settings(max_examples=60, deadline=None)
def test_solve_returns_solution_or_none(a, seed):
    rng = np.random.default_rng(seed)
    x_true = F7.random(a.shape[1], rng)
    b = F7.dot(a, x_true)
    x, ker = la.solve(F7, a, b)
    assert np.array_equal(F7.dot(a, x), b)
    assert ker == la.kernel(F7, a)
    if la.rank(F7, a) < a.shape[0]:
        # something outside the image has no solution
        img = la.image(F7, a)
        comp = la.annihilator(img)
        w = comp.basis[0]
        assert la.solve(F7, a, F7.reduce(b + w)) is None


def test_subspace_coords_roundtrip():
    u = Subspace.span(F101, 4, [[1, 2, 0, 3], [0, 1, 1, 1]])
    v = F101.reduce(5 * u.basis[0] + 7 * u.basis[1])
    assert np.array_equal(u.from_coords(u.coords(v)), v)
    assert not u.contains([1, 0, 0, 0])


def test_quotient_space():
    ambient = Subspace.full(F101, 3)
    sub = Subspace.span(F101, 3, [[1, 1, 0]])
    q = la.QuotientSpace(ambient, sub)
    assert q.dim == 2
    assert la.is_zero(q.coords(F101.array([1, 1, 0])))
    c = q.coords(F101.array([2, 0, 5]))
    assert np.array_equal(q.coords(q.lift(c)), c)


# ---------------------------------------------------------
# Finite-dimensional algebras
# ---------------------------------------------------------
def test_radical_of_matrix_algebra_is_zero():
    mult = matrix_units_mult(F101, 2)
    assert la.algebra_radical(F101, mult).dim == 0
    assert not la.is_local(F101, mult)


def test_radical_upper_triangular():
    mult = upper_triangular_mult(F101)
    rad = la.algebra_radical(F101, mult)
    assert rad == Subspace.span(F101, 3, [[0, 1, 0]])
    quo, _ = la.quotient_algebra(F101, mult, rad)
    assert la.algebra_radical(F101, quo).dim == 0


@pytest.mark.parametrize("n", [2, 3, 5])
def test_radical_elements_nilpotent(n):
    mult = truncated_poly_mult(F101, n)
    rad = la.algebra_radical(F101, mult)
    assert rad.dim == n - 1
    assert la.is_local(F101, mult)
    for r in rad.basis:
        L = la.left_mult_matrix(F101, mult, r)
        power = F101.eye(n)
        for _ in range(n):
            power = F101.dot(power, L)
        assert la.is_zero(power)


def test_radical_needs_large_characteristic():
    with pytest.raises(la.UnsupportedFieldError):
        la.algebra_radical(PrimeField(3), truncated_poly_mult(PrimeField(3), 3))


@pytest.mark.parametrize("mult", [matrix_units_mult(F101, 2), upper_triangular_mult(F101), truncated_poly_mult(F101, 3)])
def test_fitting_split_idempotents(mult):
    F = F101
    es = la.fitting_split(F, mult)
    unit = la.algebra_unit(F, mult)
    assert np.array_equal(F.reduce(sum(es)), unit)
    rad = la.algebra_radical(F, mult)
    for i, e in enumerate(es):
        assert np.array_equal(la.multiply(F, mult, e, e), e)
        for j, f in enumerate(es):
            if i != j:
                assert la.is_zero(la.multiply(F, mult, e, f))
        corner = la._corner(F, mult, e)
        assert corner.dim - la.intersection(corner, rad).dim == 1


def test_fitting_split_counts_primitives():
    assert len(la.fitting_split(F101, matrix_units_mult(F101, 2))) == 2
    assert len(la.fitting_split(F101, upper_triangular_mult(F101))) == 2
    assert len(la.fitting_split(F101, truncated_poly_mult(F101, 4))) == 1


def test_fitting_split_non_split_field():
    # F_7[t]/(t^2 + 1) is a field extension of F_7: no split primitive idempotent
    F = F7
    mult = F.zeros((2, 2, 2))
    mult[0, 0, 0] = 1
    mult[0, 1, 1] = mult[1, 0, 1] = 1
    mult[1, 1, 0] = F.reduce(np.array(-1))
    with pytest.raises(la.UnsupportedFieldError):
        la.fitting_split(F, mult, attempts=8)


def test_minimal_polynomial_of_nilpotent():
    mult = truncated_poly_mult(F101, 3)
    unit = la.algebra_unit(F101, mult)
    t = F101.array([0, 1, 0])
    assert [int(c) for c in la.minimal_polynomial(F101, mult, t, unit)] == [0, 0, 0, 1]
