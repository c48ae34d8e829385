from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import KNOTS, LINKS, pres
from twistkit.algebra import LaurentPoly, PolyMatrix, rational_identity
from twistkit.fox import (
    GroupPresentation,
    UnknownGenerator,
    Word,
    evaluate_fox_matrix,
    evaluate_word,
    evaluate_word_rational,
    fox_derivative,
    fox_jacobian,
    phi,
)
from twistkit.reps import enumerate_perm_reps, perm_to_matrix, trivial_rep

G = 3
words = st.lists(
    st.tuples(st.integers(0, G - 1), st.sampled_from([1, -1])), max_size=8
).map(lambda xs: Word(tuple(xs)))


# elements of Z[F] are dicts {reduced letters: coefficient}
def clean(c):
    return {k: v for k, v in c.items() if v}


def as_ring(fox_terms):
    out = Counter()
    for term in fox_terms:
        out[term.prefix.reduced().letters] += term.coeff
    return clean(out)


def ring_mul_word(u: Word, elem):
    out = Counter()
    for letters, c in elem.items():
        out[(u * Word(letters)).reduced().letters] += c
    return clean(out)


def ring_add(a, b):
    out = Counter(a)
    for k, v in b.items():
        out[k] += v
    return clean(out)


def recursive_fox(w: Word, j: int):
    """Fox derivative from the axioms d(uv) = du + u dv, dx_j = 1, d(x_j^-1) = -x_j^-1."""
    if len(w) == 0:
        return {}
    if len(w) == 1:
        g, e = w.letters[0]
        if g != j:
            return {}
        return {(): 1} if e == 1 else {((j, -1),): -1}
    half = len(w) // 2
    u, v = Word(w.letters[:half]), Word(w.letters[half:])
    return ring_add(recursive_fox(u, j), ring_mul_word(u, recursive_fox(v, j)))


def test_generator_derivatives():
    x1, x2 = Word.from_ints([1]), Word.from_ints([2])
    assert as_ring(fox_derivative(x1, 0)) == {(): 1}
    assert as_ring(fox_derivative(x2, 0)) == {}
    assert as_ring(fox_derivative(x1.inverse(), 0)) == {((0, -1),): -1}


@given(words, st.integers(0, G - 1))
def test_matches_recursive_oracle(w, j):
    assert as_ring(fox_derivative(w, j)) == recursive_fox(w, j)


@given(words, words, st.integers(0, G - 1))
def test_product_rule(u, v, j):
    lhs = as_ring(fox_derivative(u * v, j))
    rhs = ring_add(as_ring(fox_derivative(u, j)), ring_mul_word(u, as_ring(fox_derivative(v, j))))
    assert lhs == rhs


@given(words)
def test_fundamental_identity(w):
    # sum_j (dw/dx_j)(x_j - 1) = w - 1 in Z[F]
    total = {}
    for j in range(G):
        d = as_ring(fox_derivative(w, j))
        times_x = Counter()
        for letters, c in d.items():
            times_x[(Word(letters) * Word(((j, 1),))).reduced().letters] += c
            times_x[letters] -= c
        total = ring_add(total, clean(times_x))
    expected = ring_add({w.reduced().letters: 1}, {(): -1})
    assert total == expected


@given(words)
def test_t_powers_are_exponent_sums(w):
    for j in range(G):
        for term in fox_derivative(w, j):
            assert term.t_power == phi(term.prefix)


def test_word_basics():
    w = Word.from_ints([1, 2, -2, -1, 3])
    assert w.reduced() == Word.from_ints([3])
    assert w.inverse().inverse() == w
    assert str(Word.from_ints([1, -2])) == "x1 x2^-1"
    assert phi(w) == 1
    with pytest.raises(UnknownGenerator):
        phi(w, g=2)
    with pytest.raises(ValueError):
        Word(((0, 2),))


def test_presentation_validation():
    with pytest.raises(ValueError):
        GroupPresentation(1, (Word.from_ints([1]),), (0,), 1)
    with pytest.raises(UnknownGenerator):
        GroupPresentation(1, (Word.from_ints([1, -2]),), (0,), 1)
    with pytest.raises(ValueError):
        GroupPresentation(2, (), (0, 0), 2)


@pytest.mark.parametrize("name", KNOTS + LINKS)
def test_word_evaluation_is_homomorphism(name):
    P = pres(name)
    rho = perm_to_matrix(next(iter(enumerate_perm_reps(P, 3, limit=5))))
    x = Word.from_ints([1])
    r0 = P.relators[0] if P.relators else x * x
    for u, v in [(r0, x.inverse()), (Word.from_ints([1, -1, 1]), r0.inverse())]:
        assert evaluate_word(rho, u * v) == evaluate_word(rho, u) @ evaluate_word(rho, v)
    for r in P.relators:
        assert evaluate_word_rational(rho, r) == rational_identity(rho.k)


@pytest.mark.parametrize("name", ["trefoil", "figure8", "hopf"])
def test_fox_matrix_blocks(name):
    P = pres(name)
    rho = perm_to_matrix(next(iter(enumerate_perm_reps(P, 3, limit=5))))
    F = evaluate_fox_matrix(rho, P)
    k = rho.k
    jac = fox_jacobian(P)
    assert (F.rows, F.cols) == (k * len(P.relators), k * P.g)
    for i, r in enumerate(P.relators):
        for j in range(P.g):
            block = PolyMatrix.zeros(k, k)
            for term in jac[i][j]:
                scaled = PolyMatrix.identity(k)
                scaled.entries = [[x * term.coeff for x in row] for row in scaled.entries]
                block = block + scaled @ evaluate_word(rho, term.prefix)
            for a in range(k):
                for b in range(k):
                    assert F.entries[i * k + a][j * k + b] == block.entries[a][b]


def test_fox_matrix_trivial_trefoil_rows_sum_to_zero():
    # sum_j d r / d x_j (t - 1) = 0 at t, so the columns of the Alexander matrix add to zero
    P = pres("trefoil")
    F = evaluate_fox_matrix(trivial_rep(P, 1), P)
    for row in F.entries:
        acc = LaurentPoly.zero()
        for x in row:
            acc = acc + x
        assert acc.is_zero()
