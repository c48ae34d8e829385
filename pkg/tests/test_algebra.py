from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from helpers import from_sympy, laurent, matrix_to_sympy, poly_matrix, snf_checks, to_sympy
from twistkit.algebra import (
    LaurentPoly,
    MembershipError,
    PolyMatrix,
    express_in_basis,
    kernel_basis,
    kernel_with_coordinates,
    module_invariants,
    normalize_unit,
    poly_gcd,
    smith_normal_form,
    unit_part,
)

P = LaurentPoly.parse


# -- Laurent polynomials -----------------------------------------------------


@given(laurent(), laurent(), laurent())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == LaurentPoly.zero()


@given(laurent(), laurent())
def test_multiplication_matches_sympy(a, b):
    assert to_sympy(a * b, 4).expand() == (to_sympy(a, 2) * to_sympy(b, 2)).expand()


@given(laurent(), laurent(allow_zero=False))
def test_division_with_remainder(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.breadth() < b.breadth()


@given(laurent(), laurent(allow_zero=False))
def test_exact_division_roundtrip(a, b):
    assert (a * b).exact_div(b) == a
    assert b.divides(a * b)


@given(laurent(coeff=st.fractions(min_value=-3, max_value=3, max_denominator=5)))
def test_parse_str_roundtrip(a):
    assert P(str(a)) == a


@given(laurent(allow_zero=False))
def test_normalize_unit(a):
    n = normalize_unit(a)
    assert normalize_unit(n) == n
    assert unit_part(a) * n == a
    assert n.min_exp == 0 and n.leading() > 0
    assert all(c.denominator == 1 for c in n.coeffs)
    assert normalize_unit(a.shift(3) * Fraction(-2, 7)) == n


@given(laurent(allow_zero=False), laurent(allow_zero=False))
def test_gcd_matches_sympy(a, b):
    g = poly_gcd(a, b)
    expected = normalize_unit(from_sympy(sympy.gcd(to_sympy(a, 2), to_sympy(b, 2))))
    assert g == expected


def test_unit_normalization_examples():
    assert str(normalize_unit(P("1 - t"))) == "-1 + t"
    assert str(normalize_unit(P("t^-1 - 1"))) == "-1 + t"
    assert normalize_unit(P("-2*t^3 + 2*t^4 - 2*t^5")) == P("1 - t + t^2")
    assert normalize_unit(P("1/2 + 1/3*t")) == P("3 + 2*t")


def test_units_and_breadth():
    assert P("3*t^-2").is_unit()
    assert not P("1 + t").is_unit()
    assert P("t^-1 + t^2").breadth() == 3
    assert P("5").unit_inverse() == P("1/5")
    with pytest.raises(ZeroDivisionError):
        P("1 + t").unit_inverse()
    with pytest.raises(ZeroDivisionError):
        P("1").divmod(LaurentPoly.zero())


def test_evaluation():
    assert P("1 - t + t^2")(2) == 3
    assert P("t^-1")(Fraction(1, 2)) == 2


# -- Smith normal form -------------------------------------------------------


def test_snf_two_by_two_example():
    A = PolyMatrix([[P("1 - t"), P("t")], [P("t"), P("1")]])
    S = smith_normal_form(A)
    assert S.diagonal == [LaurentPoly.one(), P("-1 + t + t^2")]
    assert S.U @ S.D @ S.V == A


def test_snf_zero_and_empty():
    S = smith_normal_form(PolyMatrix.zeros(2, 3))
    assert S.rank == 0 and S.U @ S.D @ S.V == PolyMatrix.zeros(2, 3)


def test_snf_divisibility_fix():
    # diag(t-1, t+1) has gcd 1: SNF is diag(1, t^2-1)
    A = PolyMatrix([[P("t - 1"), 0], [0, P("t + 1")]])
    assert smith_normal_form(A).diagonal == [LaurentPoly.one(), P("-1 + t^2")]


@settings(max_examples=120)
@given(poly_matrix())
def test_snf_properties(A):
    checks = snf_checks(A)
    assert all(checks.values()), checks


@settings(max_examples=60)
@given(poly_matrix(max_dim=4))
def test_snf_order_matches_determinant(A):
    assume(A.rows == A.cols)
    S = smith_normal_form(A, transforms=False)
    det = sympy.Matrix(matrix_to_sympy(A)).det(method="berkowitz")
    if det == 0:
        assert S.rank < A.rows
    else:
        assert S.rank == A.rows
        assert S.order() == normalize_unit(from_sympy(det))


@settings(max_examples=60)
@given(poly_matrix(max_dim=4))
def test_first_divisor_is_gcd_of_entries(A):
    S = smith_normal_form(A, transforms=False)
    g = LaurentPoly.zero()
    for row in A.entries:
        for x in row:
            g = poly_gcd(g, x)
    if S.rank:
        assert S.diagonal[0] == g
    else:
        assert g.is_zero()


# -- kernels and module invariants ------------------------------------------


def test_kernel_example():
    K = kernel_basis(PolyMatrix([[P("t - 1"), P("t - 1")]]))
    assert K.cols == 1
    v = [normalize_unit(K.entries[0][0]), K.entries[1][0]]
    assert K.entries[0][0] == -K.entries[1][0]
    assert v[0] == LaurentPoly.one()


@settings(max_examples=80)
@given(poly_matrix(max_dim=5))
def test_kernel_with_coordinates(A):
    K, Pm, S = kernel_with_coordinates(A)
    assert K.cols == A.cols - S.rank
    if K.cols:
        assert (A @ K).is_zero()
        assert Pm @ K == PolyMatrix.identity(K.cols)
        # K spans a saturated sublattice: coordinates of random kernel combos are exact
        combo = PolyMatrix([[P("1 + t")] for _ in range(K.cols)])
        v = K @ combo
        assert express_in_basis(K, v) == combo
        assert express_in_basis(K, v, Pm) == combo


def test_express_in_basis_rejects_non_members():
    K = PolyMatrix([[P("t - 1")]])
    with pytest.raises(MembershipError):
        express_in_basis(K, PolyMatrix([[P("1")]]))


def test_module_invariants():
    # Lambda^2 / <(t-1, 0)> = Lambda/(t-1) + Lambda
    rank, divs = module_invariants(PolyMatrix([[P("t - 1")], [0]]))
    assert rank == 1 and divs == [P("-1 + t")]
    rank, divs = module_invariants(PolyMatrix.identity(3))
    assert rank == 0 and divs == []
