import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grassfano.errors import DimensionError, FieldError, NonInvertibleError
from grassfano.kernel import (
    GF, QQ, Fp, Matrix, Poly, char_poly, charpoly_coeffs, eigen_lines, normalize_projective,
    roots_mod_p, series_expand,
)
from grassfano.kernel.matrix import is_squarefree_mod_p


def rand_matrix(F, n, rng, cols=None):
    cols = n if cols is None else cols
    return Matrix([[F.random(rng) for _ in range(cols)] for _ in range(n)], cols)


def bareiss_det(rows, p):
    """Fraction-free elimination over the integers, reduced mod p at the end."""
    A = [[int(x) for x in r] for r in rows]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return (sign * A[n - 1][n - 1]) % p


def lagrange(xs, ys, p):
    """Descending coefficients of the interpolating polynomial mod p."""
    n = len(xs)
    out = [0] * n
    for i in range(n):
        num = [1]
        den = 1
        for j in range(n):
            if j != i:
                num = [a - xs[j] * b for a, b in zip(num + [0], [0] + num)]
                den = den * (xs[i] - xs[j]) % p
        scale = ys[i] * pow(den, -1, p) % p
        out = [(o + scale * c) % p for o, c in zip(out, num)]
    return out


# -- fields ------------------------------------------------------------------

def test_field_rejects_two_and_composites():
    for bad in (2, 4, 9, 1):
        with pytest.raises(FieldError):
            GF(bad)


def test_fp_arithmetic_and_inverse():
    F = GF(101)
    for v in range(1, 101):
        assert F(v) * F(v).inverse() == 1
    assert F(100) + 1 == 0
    with pytest.raises(ZeroDivisionError):
        F(0).inverse()


def test_field_dimension_guard():
    GF(7).check_dimension(4)
    with pytest.raises(FieldError):
        GF(5).check_dimension(3)


def test_rational_parse_rejects_unreduced():
    assert QQ.parse("3/4") == Fraction(3, 4)
    with pytest.raises(ValueError):
        QQ.parse("2/4")


# -- characteristic polynomial ----------------------------------------------

def test_charpoly_identity_and_zero():
    assert char_poly(Matrix.identity(2, 1)).univariate_coeffs() == [1, -2, 1]
    assert char_poly(Matrix([[0, 0], [0, 0]])).univariate_coeffs() == [0, 0, 1]


def test_charpoly_3x3_by_interpolation():
    F = GF(101)
    rng = random.Random(7)
    for _ in range(20):
        M = rand_matrix(F, 3, rng)
        xs = [0, 1, 2, 3]
        ys = [int((Matrix.identity(3, F(x)) - M).det()) for x in xs]
        assert [int(c) for c in reversed(char_poly(M).univariate_coeffs())] == lagrange(xs, ys, 101)


@pytest.mark.parametrize("n", [2, 3, 5, 7])
def test_charpoly_matches_fraction_free_det(n):
    p = 10007
    F = GF(p)
    rng = random.Random(n)
    for _ in range(10):
        M = rand_matrix(F, n, rng)
        cp = char_poly(M)
        lam = F.random(rng)
        shifted = Matrix.identity(n, lam) - M
        assert int(cp.evaluate([lam])) == bareiss_det(shifted.to_lists(), p)


def test_charpoly_coeffs_over_rationals():
    M = Matrix([[Fraction(1, 2), 3], [2, Fraction(-1, 3)]])
    c = charpoly_coeffs(M)
    assert c == [1, -Fraction(1, 6), Fraction(-1, 6) - 6]


# -- kernels -----------------------------------------------------------------

def test_kernel_examples():
    assert len(Matrix([[0, 0, 0], [0, 0, 0]]).kernel_basis()) == 3
    assert Matrix.identity(3, 1).kernel_basis() == []
    (v,) = Matrix([[1, 2], [2, 4]]).kernel_basis()
    assert v[0] == -2 * v[1] and v[1] != 0


@pytest.mark.parametrize("size", range(2, 9))
def test_rank_nullity(size):
    F = GF(5)  # small prime so singular matrices actually occur
    rng = random.Random(size)
    for _ in range(100):
        M = rand_matrix(F, size, rng, cols=size + rng.randrange(0, 3))
        basis = M.kernel_basis()
        assert len(basis) + M.rank() == M.cols
        for v in basis:
            assert all(x == 0 for x in M @ v)


def test_inverse_and_solve():
    F = GF(10007)
    rng = random.Random(3)
    M = rand_matrix(F, 4, rng)
    assert M @ M.inverse() == Matrix.identity(4, F.one)
    b = [F.random(rng) for _ in range(4)]
    assert list(M @ M.solve(b)) == b
    with pytest.raises(ZeroDivisionError):
        Matrix([[F(1), F(2)], [F(2), F(4)]]).inverse()


def test_normalize_projective():
    F = GF(7)
    assert normalize_projective([F(0), F(3), F(6)]) == (0, 1, 2)


# -- eigen-lines -------------------------------------------------------------

def test_eigen_lines_diagonal():
    F = GF(7)
    M = Matrix([[F(1), F(0), F(0)], [F(0), F(2), F(0)], [F(0), F(0), F(3)]])
    e = eigen_lines(M)
    assert len(e) == 3 and e.squarefree
    assert sorted(int(lam) for lam, _ in e) == [1, 2, 3]


def test_eigen_lines_identity_not_squarefree():
    F = GF(7)
    e = eigen_lines(Matrix.identity(2, F.one))
    assert [int(lam) for lam, _ in e] == [1]
    assert not e.squarefree


def test_eigen_lines_irreducible_companion():
    F = GF(3)
    C = Matrix([[F(0), F(-1)], [F(1), F(0)]])  # char poly t^2 + 1
    e = eigen_lines(C)
    assert len(e) == 0 and e.total_degree == 2
    assert all((x * x + 1) % 3 != 0 for x in range(3))


def test_eigen_lines_rejects_rationals():
    with pytest.raises(DimensionError):
        eigen_lines(Matrix([[Fraction(1)]]))


@pytest.mark.parametrize("p", [3, 5, 101, 10007])
def test_roots_against_exhaustion(p):
    rng = random.Random(p)
    for _ in range(30):
        deg = rng.randrange(1, 7)
        coeffs = [rng.randrange(p) for _ in range(deg)] + [1]
        if p <= 101:
            brute = [x for x in range(p) if sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p == 0]
        else:
            # plant roots so the check stays cheap
            roots = sorted({rng.randrange(p) for _ in range(deg)})
            coeffs = [1]
            for r in roots:
                coeffs = [(a - r * b) % p for a, b in zip([0] + coeffs, coeffs + [0])]
            brute = roots
        assert sorted(roots_mod_p(coeffs, p)) == brute


def test_squarefree_mod_p():
    assert is_squarefree_mod_p([1, 0, 1], 3)
    assert not is_squarefree_mod_p([1, -2 % 7, 1], 7)


# -- polynomials -------------------------------------------------------------

def test_poly_zero_degree_and_homogeneity():
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    assert (x - x).degree() == float("-inf")
    assert (x * x + 3 * x * y).is_homogeneous()
    assert not (x * x + y).is_homogeneous()
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y


def test_poly_derivative_and_evaluate():
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    f = x ** 3 * y + 5 * y
    assert f.derivative(0) == 3 * x ** 2 * y
    assert f.evaluate([2, 3]) == 24 + 15


# -- series ------------------------------------------------------------------

def test_geometric_series():
    x = Poly.var(2, 0)
    s = series_expand(Poly.constant(2, 1), 1 - x, 3)
    assert [s[k, 0] for k in range(4)] == [1, 1, 1, 1]
    with pytest.raises(IndexError):
        s[4, 0]


def test_polynomial_is_its_own_series():
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    s = series_expand(1 + x + y * y, Poly.constant(2, 1), 2)
    assert s.coeffs == {(0, 0): 1, (1, 0): 1, (0, 2): 1}


def test_series_mixed_coefficient():
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    s = series_expand(Poly.constant(2, 1), 1 - x * x + 4 * y * y, 4)
    assert s[2, 2] == -8


def test_series_non_invertible():
    x = Poly.var(2, 0)
    with pytest.raises(NonInvertibleError):
        series_expand(Poly.constant(2, 1), x, 3)


small = st.integers(-5, 5)
bipoly = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), small, max_size=6)


@settings(max_examples=60, deadline=None)
@given(bipoly, bipoly)
def test_truncation_is_a_ring_morphism(a, b):
    from grassfano.kernel import BivariateSeries

    A, B = Poly(2, a), Poly(2, b)
    bound = 4
    lhs = BivariateSeries.from_poly(A * B, bound)
    rhs = BivariateSeries.from_poly(A, bound) * BivariateSeries.from_poly(B, bound)
    assert lhs.coeffs == rhs.coeffs
    assert (BivariateSeries.from_poly(A + B, bound)).coeffs == (
        BivariateSeries.from_poly(A, bound) + BivariateSeries.from_poly(B, bound)
    ).coeffs


def test_fp_comparisons_with_ints():
    assert Fp(3, 7) == 10 and Fp(3, 7) != 4
