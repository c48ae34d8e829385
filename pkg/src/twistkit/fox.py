"""Free-group words, link-group presentations and Fox calculus.

Fox derivatives are kept symbolic (a list of signed prefixes) and only
evaluated once a representation is supplied, so the same presentation can be
reused across the many representations an audit runs over.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .algebra import LaurentPoly, PolyMatrix, rational_identity, rational_inverse, rational_matmul

__all__ = [
    "Word",
    "FoxTerm",
    "GroupPresentation",
    "UnknownGenerator",
    "phi",
    "fox_derivative",
    "fox_jacobian",
    "evaluate_word",
    "evaluate_word_rational",
    "evaluate_fox_matrix",
]


class UnknownGenerator(KeyError):
    pass


@dataclass(frozen=True)
class Word:
    """Element of a free group as a sequence of ``(generator, ±1)`` letters."""

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for g, e in self.letters:
            if e not in (1, -1):
                raise ValueError(f"exponent must be +1 or -1, got {e}")
            if g < 0:
                raise ValueError(f"generator index must be >= 0, got {g}")

    @classmethod
    def from_ints(cls, seq: Iterable[int]) -> "Word":
        """``[1, 2, -1]`` means x_1 x_2 x_1^-1 (1-based, sign is exponent)."""
        return cls(tuple((abs(i) - 1, 1 if i > 0 else -1) for i in seq))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def generators(self) -> set[int]:
        return {g for g, _ in self.letters}

    def reduced(self) -> "Word":
        out: list[tuple[int, int]] = []
        for g, e in self.letters:
            if out and out[-1] == (g, -e):
                out.pop()
            else:
                out.append((g, e))
        return Word(tuple(out))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"x{g + 1}" if e == 1 else f"x{g + 1}^-1" for g, e in self.letters)


class FoxTerm(NamedTuple):
    coeff: int
    prefix: Word
    t_power: int


@dataclass(frozen=True)
class GroupPresentation:
    """Finite presentation with meridian data for a link group.

    ``component_of_generator[j]`` is the link component whose meridian x_j
    is.  The canonical map sends every generator to t.
    """

    g: int
    relators: tuple[Word, ...]
    component_of_generator: tuple[int, ...]
    m: int
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.component_of_generator) != self.g:
            raise ValueError("component map must cover every generator")
        if set(self.component_of_generator) != set(range(self.m)):
            raise ValueError("component map must be onto 0..m-1")
        for r in self.relators:
            for gen, _ in r.letters:
                if gen >= self.g:
                    raise UnknownGenerator(gen)
            if phi(r) != 0:
                raise ValueError(f"relator {r} has nonzero exponent sum")

    def __str__(self) -> str:
        gens = ", ".join(f"x{i + 1}" for i in range(self.g))
        rels = ", ".join(str(r) for r in self.relators)
        return f"< {gens} | {rels} >"


def phi(w: Word, g: int | None = None) -> int:
    """Power of t that the canonical map assigns to w (its exponent sum)."""
    if g is not None:
        for gen, _ in w.letters:
            if gen >= g:
                raise UnknownGenerator(gen)
    return sum(e for _, e in w.letters)


def fox_derivative(w: Word, j: int) -> list[FoxTerm]:
    """Symbolic Fox derivative of w with respect to x_j.

    Each term ``(c, u, n)`` stands for ``c * u`` in the group ring; ``n`` is
    the exponent sum of u, precomputed.
    """
    terms = []
    power = 0
    letters = w.letters
    for pos, (gen, e) in enumerate(letters):
        if gen == j:
            if e == 1:
                terms.append(FoxTerm(1, Word(letters[:pos]), power))
            else:
                terms.append(FoxTerm(-1, Word(letters[: pos + 1]), power - 1))
        power += e
    return terms


@lru_cache(maxsize=256)
def fox_jacobian(P: GroupPresentation) -> tuple[tuple[tuple[FoxTerm, ...], ...], ...]:
    """All symbolic derivatives: ``[i][j]`` is d(r_i)/d(x_j)."""
    return tuple(
        tuple(tuple(fox_derivative(r, j)) for j in range(P.g)) for r in P.relators
    )


def _images(rep) -> Sequence:
    return rep.images


def evaluate_word_rational(rep, w: Word) -> list[list[Fraction]]:
    """Product of the rational matrices along w (the t-part is phi(w))."""
    images = _images(rep)
    acc = rational_identity(rep.k)
    for gen, e in w.letters:
        if gen >= len(images):
            raise UnknownGenerator(gen)
        acc = rational_matmul(acc, images[gen] if e == 1 else _inverse_image(rep, gen))
    return acc


def _inverse_image(rep, gen: int):
    inv = getattr(rep, "inverse_images", None)
    if inv is not None:
        return inv[gen]
    return rational_inverse(rep.images[gen])


def evaluate_word(rep, w: Word) -> PolyMatrix:
    """Image of w under the tensor representation g -> alpha(g) * t^phi(g)."""
    mat = evaluate_word_rational(rep, w)
    n = phi(w)
    return PolyMatrix([[LaurentPoly.monomial(x, n) for x in row] for row in mat], rep.k, rep.k)


class _PrefixCache:
    """Memoized evaluation of word prefixes for one representation."""

    def __init__(self, rep):
        self.rep = rep
        self.cache: dict[tuple, list[list[Fraction]]] = {(): rational_identity(rep.k)}

    def get(self, letters: tuple) -> list[list[Fraction]]:
        hit = self.cache.get(letters)
        if hit is not None:
            return hit
        head = self.get(letters[:-1])
        gen, e = letters[-1]
        img = self.rep.images[gen] if e == 1 else _inverse_image(self.rep, gen)
        val = rational_matmul(head, img)
        self.cache[letters] = val
        return val


def _block(rep, terms: Sequence[FoxTerm], prefixes: _PrefixCache) -> list[list[LaurentPoly]]:
    """Evaluate one symbolic derivative to a k x k block of Laurent polys."""
    k = rep.k
    by_power: dict[int, list[list[Fraction]]] = {}
    for c, u, n in terms:
        mat = prefixes.get(u.letters)
        acc = by_power.get(n)
        if acc is None:
            acc = by_power[n] = [[Fraction(0)] * k for _ in range(k)]
        for a in range(k):
            ra, rm = acc[a], mat[a]
            for b in range(k):
                if rm[b]:
                    ra[b] += c * rm[b]
    out = []
    for a in range(k):
        row = []
        for b in range(k):
            row.append(LaurentPoly.from_dict({n: m[a][b] for n, m in by_power.items()}))
        out.append(row)
    return out


def evaluate_fox_matrix(rep, P: GroupPresentation, relators: Sequence[int] | None = None) -> PolyMatrix:
    """Block matrix with block (i, j) the image of d(r_i)/d(x_j).

    Size is ``k*len(relators) x k*g``.  ``relators`` selects a subset of
    relator indices (all of them by default).
    """
    if len(rep.images) != P.g:
        raise UnknownGenerator(f"representation has {len(rep.images)} images, presentation {P.g} generators")
    k = rep.k
    jac = fox_jacobian(P)
    idx = range(len(P.relators)) if relators is None else relators
    prefixes = _PrefixCache(rep)
    rows: list[list[LaurentPoly]] = []
    for i in idx:
        blocks = [_block(rep, jac[i][j], prefixes) for j in range(P.g)]
        for a in range(k):
            row = []
            for j in range(P.g):
                row.extend(blocks[j][a])
            rows.append(row)
    return PolyMatrix(rows, k * len(idx), k * P.g)
