from functools import lru_cache

import sympy

from twistkit.algebra import LaurentPoly, PolyMatrix
from hypothesis import strategies as st

from twistkit.corpus import load_corpus

T = sympy.Symbol("t")
CORPUS = load_corpus()
KNOTS = [n for n, e in CORPUS.items() if e.m == 1]
LINKS = [n for n, e in CORPUS.items() if e.m > 1]


@lru_cache(maxsize=None)
def pres(name):
    return CORPUS[name].presentation()


def to_sympy(p: LaurentPoly, shift: int = 0):
    return sum((sympy.Rational(c.numerator, c.denominator) * T ** (e + shift)
                for e, c in p.terms().items()), sympy.Integer(0))


def from_sympy(expr) -> LaurentPoly:
    poly = sympy.Poly(sympy.expand(expr), T)
    return LaurentPoly.from_dict({m[0]: sympy_fraction(c) for m, c in poly.terms()})


def sympy_fraction(c):
    from fractions import Fraction
    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


def matrix_to_sympy(M: PolyMatrix):
    """Polynomial sympy matrix equal to M times a power of t (clears negative exponents)."""
    lows = [e.min_exp for row in M.entries for e in row if not e.is_zero()]
    shift = -min(lows) if lows and min(lows) < 0 else 0
    return sympy.Matrix(M.rows, M.cols, lambda i, j: to_sympy(M.entries[i][j], shift))


@st.composite
def laurent(draw, max_breadth=3, coeff=st.integers(-4, 4), allow_zero=True):
    width = draw(st.integers(0 if allow_zero else 1, max_breadth + 1))
    cs = draw(st.lists(coeff, min_size=width, max_size=width))
    p = LaurentPoly(cs, draw(st.integers(-2, 2)))
    if not allow_zero and p.is_zero():
        p = LaurentPoly.monomial(draw(st.integers(1, 3)), draw(st.integers(-2, 2)))
    return p


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def poly_matrix(draw, max_dim=6, max_breadth=3, zero_prob=0.3):
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    entries = [[LaurentPoly() if draw(st.floats(0, 1)) < zero_prob
                else draw(laurent(max_breadth)) for _ in range(cols)] for _ in range(rows)]
    return PolyMatrix(entries, rows, cols)


def fraction_field_rank(M: PolyMatrix) -> int:
    from sympy.polys.matrices import DomainMatrix
    return DomainMatrix.from_Matrix(matrix_to_sympy(M)).to_field().rank()


def snf_checks(A: PolyMatrix) -> dict:
    """Round trip, inverse transforms, divisibility chain and oracle rank for one SNF."""
    from twistkit.algebra import normalize_unit, smith_normal_form
    S = smith_normal_form(A)
    n, m = A.rows, A.cols
    return {
        "round_trip": S.U @ S.D @ S.V == A,
        "inverses": (S.U @ S.U_inv == PolyMatrix.identity(n)
                     and S.V @ S.V_inv == PolyMatrix.identity(m)
                     and S.U_inv @ A @ S.V_inv == S.D),
        "chain": all(S.diagonal[i].divides(S.diagonal[i + 1]) for i in range(S.rank - 1)),
        "normalized": all(normalize_unit(d) == d for d in S.diagonal),
        "rank": S.rank == fraction_field_rank(A),
    }


def random_poly_matrix(rng, max_dim=6, max_breadth=3, zero_prob=0.3) -> PolyMatrix:
    rows, cols = rng.randint(1, max_dim), rng.randint(1, max_dim)

    def entry():
        if rng.random() < zero_prob:
            return LaurentPoly()
        width = rng.randint(1, max_breadth + 1)
        return LaurentPoly([rng.randint(-3, 3) for _ in range(width)], rng.randint(-2, 2))

    # a rank-deficient matrix now and then
    if rng.random() < 0.25 and rows > 1:
        base = [[entry() for _ in range(cols)] for _ in range(rows - 1)]
        c = entry()
        base.append([c * x for x in base[0]])
        rng.shuffle(base)
        return PolyMatrix(base, rows, cols)
    return PolyMatrix([[entry() for _ in range(cols)] for _ in range(rows)], rows, cols)
