"""Rational representations of link groups.

The searchable family is permutation representations: homomorphisms onto
subgroups of S_n found by backtracking, turned into permutation matrices.
Wirtinger relators make most generator images forced once a few are chosen,
so the search assigns a small set of "free" generators and closes under
deduction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .algebra import rational_identity, rational_inverse, rational_matmul
from .fox import GroupPresentation, Word, evaluate_word_rational

__all__ = [
    "MatrixRep",
    "PermAssignment",
    "PermSearch",
    "InvalidRepresentation",
    "trivial_rep",
    "enumerate_perm_reps",
    "perm_to_matrix",
    "diagonal_sum",
    "conjugate",
    "perm_family",
    "read_rep",
    "format_rep",
    "is_surjective",
    "cycle_type",
]

Perm = tuple[int, ...]
RatMatrix = tuple[tuple[Fraction, ...], ...]


class InvalidRepresentation(ValueError):
    pass


def _freeze(mat) -> RatMatrix:
    return tuple(tuple(Fraction(x) for x in row) for row in mat)


@dataclass(frozen=True)
class MatrixRep:
    """Generator images in GL(k, Q); ``descriptor`` names the representation."""

    k: int
    images: tuple[RatMatrix, ...]
    descriptor: str = "explicit"
    inverse_images: tuple[RatMatrix, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.k < 1:
            raise InvalidRepresentation("k must be positive")
        for img in self.images:
            if len(img) != self.k or any(len(row) != self.k for row in img):
                raise InvalidRepresentation(f"image is not {self.k}x{self.k}")
        if self.inverse_images is None:
            try:
                inv = tuple(_freeze(rational_inverse(img)) for img in self.images)
            except ZeroDivisionError:
                raise InvalidRepresentation("generator image is singular") from None
            object.__setattr__(self, "inverse_images", inv)

    @classmethod
    def from_matrices(cls, mats: Sequence, descriptor: str = "explicit") -> "MatrixRep":
        mats = [_freeze(m) for m in mats]
        if not mats:
            raise InvalidRepresentation("need at least one generator image")
        return cls(len(mats[0]), tuple(mats), descriptor)

    def validate(self, P: GroupPresentation) -> "MatrixRep":
        """Raise :class:`InvalidRepresentation` unless every relator maps to 1."""
        if len(self.images) != P.g:
            raise InvalidRepresentation(
                f"{len(self.images)} generator images for a presentation with {P.g} generators")
        ident = rational_identity(self.k)
        for i, r in enumerate(P.relators):
            if evaluate_word_rational(self, r) != ident:
                raise InvalidRepresentation(f"relator {i + 1} ({r}) does not map to the identity")
        return self

    def is_valid(self, P: GroupPresentation) -> bool:
        try:
            self.validate(P)
        except InvalidRepresentation:
            return False
        return True


def trivial_rep(P: GroupPresentation, k: int = 1) -> MatrixRep:
    ident = _freeze(rational_identity(k))
    return MatrixRep(k, (ident,) * P.g, f"trivial:k={k}", inverse_images=(ident,) * P.g)


# -- permutations ------------------------------------------------------------
# A permutation p of {0..n-1} is the tuple (p(0), ..., p(n-1)); products act
# right-to-left like functions, (p*q)(i) = p(q(i)), so the permutation-matrix
# map below is a homomorphism.


def _compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def _inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def cycle_type(p: Perm) -> tuple[int, ...]:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if not seen[i]:
            n, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                n += 1
            lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def _word_perm(w: Word, images: Sequence[Perm | None], inverses: Sequence[Perm | None], n: int) -> Perm:
    acc = tuple(range(n))
    for g, e in w.letters:
        acc = _compose(acc, images[g] if e == 1 else inverses[g])
    return acc


@dataclass(frozen=True)
class PermAssignment:
    n: int
    images: tuple[Perm, ...]

    def __str__(self) -> str:
        return "|".join(" ".join(str(x + 1) for x in p) for p in self.images)


def perm_to_matrix(rho: PermAssignment) -> MatrixRep:
    """Permutation matrices: column i of the image of x has a 1 in row x(i)."""
    n = rho.n
    zero, one = Fraction(0), Fraction(1)
    mats, invs = [], []
    for p in rho.images:
        m = [[zero] * n for _ in range(n)]
        for i, x in enumerate(p):
            m[x][i] = one
        mats.append(_freeze(m))
        invs.append(tuple(zip(*mats[-1])))
    return MatrixRep(n, tuple(mats), f"perm:n={n}:{rho}", inverse_images=tuple(invs))


def is_surjective(rho: PermAssignment) -> bool:
    """Does the image generate all of S_n?"""
    n = rho.n
    target = 1
    for i in range(2, n + 1):
        target *= i
    gens = set(rho.images)
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
        if len(seen) == target:
            return True
    return len(seen) == target


def _canonical_up_to_conjugacy(images: tuple[Perm, ...], n: int) -> tuple[Perm, ...]:
    best = None
    for s in itertools.permutations(range(n)):
        si = _inverse(s)
        conj = tuple(_compose(_compose(s, p), si) for p in images)
        if best is None or conj < best:
            best = conj
    return best


@dataclass
class PermSearch:
    """Result of :func:`enumerate_perm_reps`; iterates over the assignments."""

    n: int
    assignments: list[PermAssignment]
    truncated: bool = False
    nodes: int = 0
    reason: str | None = None

    def __iter__(self) -> Iterator[PermAssignment]:
        return iter(self.assignments)

    def __len__(self) -> int:
        return len(self.assignments)


def _solvable_relators(P: GroupPresentation):
    """Relators where a generator occurs exactly once, with its split point.

    For r = u x^e v with x absent from u and v: x^e = u^-1 v^-1.
    """
    info = []
    for r in P.relators:
        counts: dict[int, int] = {}
        for g, _ in r.letters:
            counts[g] = counts.get(g, 0) + 1
        solvable = []
        for pos, (g, e) in enumerate(r.letters):
            if counts[g] == 1:
                solvable.append((g, e, Word(r.letters[:pos]), Word(r.letters[pos + 1:])))
        info.append((r, set(counts), solvable))
    return info


def _branch_order(P: GroupPresentation, rel_info) -> list[int]:
    """Greedy choice of free generators: assign one, close under deduction."""
    known: set[int] = set()
    order: list[int] = []
    freq = [0] * P.g
    for r, gens, _ in rel_info:
        for g in gens:
            freq[g] += 1

    def close():
        changed = True
        while changed:
            changed = False
            for _, gens, solvable in rel_info:
                for g, _, _, _ in solvable:
                    if g not in known and gens - {g} <= known:
                        known.add(g)
                        changed = True

    while len(known) < P.g:
        best, best_gain = None, -1
        for g in range(P.g):
            if g in known:
                continue
            saved = set(known)
            known.add(g)
            close()
            gain = len(known) - len(saved)
            known.clear()
            known.update(saved)
            if gain > best_gain or (gain == best_gain and freq[g] > freq[best]):
                best, best_gain = g, gain
        order.append(best)
        known.add(best)
        close()
    return order


def enumerate_perm_reps(
    P: GroupPresentation,
    n: int,
    surjective_only: bool = False,
    limit: int | None = None,
    transpositions_only: bool = False,
    distinct_up_to_conjugacy: bool = False,
    max_nodes: int = 10**6,
) -> PermSearch:
    """All homomorphisms from the presented group to S_n.

    Results are sorted lexicographically by their image tuples.  The search
    stops early, with ``truncated=True``, when more than ``limit`` results
    are found or more than ``max_nodes`` branch assignments are tried.
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    rel_info = _solvable_relators(P)
    order = _branch_order(P, rel_info)
    all_perms = list(itertools.permutations(range(n)))
    if transpositions_only:
        choices = [p for p in all_perms if cycle_type(p) == (2,) + (1,) * (n - 2)]
    else:
        choices = all_perms
    allowed = set(choices)
    ident = tuple(range(n))

    images: list[Perm | None] = [None] * P.g
    inverses: list[Perm | None] = [None] * P.g
    found: list[tuple[Perm, ...]] = []
    seen_classes: set = set()
    state = {"nodes": 0, "truncated": False, "reason": None}

    def propagate(assigned: list[int]) -> bool:
        changed = True
        while changed:
            changed = False
            for r, gens, solvable in rel_info:
                if all(images[g] is not None for g in gens):
                    continue
                for g, e, u, v in solvable:
                    if images[g] is not None:
                        continue
                    if any(images[h] is None for h in gens if h != g):
                        continue
                    val = _inverse(_compose(_word_perm(v, images, inverses, n),
                                            _word_perm(u, images, inverses, n)))
                    if e == -1:
                        val = _inverse(val)
                    if val not in allowed:
                        return False
                    images[g], inverses[g] = val, _inverse(val)
                    assigned.append(g)
                    changed = True
                    break
        for r, gens, _ in rel_info:
            if all(images[g] is not None for g in gens):
                if _word_perm(r, images, inverses, n) != ident:
                    return False
        return True

    def record():
        result = tuple(images)  # type: ignore[arg-type]
        rho = PermAssignment(n, result)
        if surjective_only and not is_surjective(rho):
            return
        if distinct_up_to_conjugacy:
            key = _canonical_up_to_conjugacy(result, n)
            if key in seen_classes:
                return
            seen_classes.add(key)
        found.append(result)

    def search(depth: int):
        if state["truncated"]:
            return
        while depth < len(order) and images[order[depth]] is not None:
            depth += 1
        if depth == len(order):
            record()
            if limit is not None and len(found) > limit:
                state["truncated"], state["reason"] = True, "limit"
            return
        g = order[depth]
        for p in choices:
            state["nodes"] += 1
            if state["nodes"] > max_nodes:
                state["truncated"], state["reason"] = True, "nodes"
                return
            images[g], inverses[g] = p, _inverse(p)
            assigned = [g]
            if propagate(assigned):
                search(depth + 1)
            for h in assigned:
                images[h] = inverses[h] = None
            if state["truncated"]:
                return

    if P.g == 0:
        found.append(())
    else:
        search(0)
    found.sort()
    if limit is not None and len(found) > limit:
        found = found[:limit]
    return PermSearch(n, [PermAssignment(n, x) for x in found],
                      state["truncated"], state["nodes"], state["reason"])


def diagonal_sum(alpha: MatrixRep, beta: MatrixRep) -> MatrixRep:
    if len(alpha.images) != len(beta.images):
        raise InvalidRepresentation("representations of different presentations")
    k = alpha.k + beta.k
    zero = Fraction(0)

    def block(a, b):
        rows = [tuple(row) + (zero,) * beta.k for row in a]
        rows += [(zero,) * alpha.k + tuple(row) for row in b]
        return tuple(rows)

    imgs = tuple(block(a, b) for a, b in zip(alpha.images, beta.images))
    invs = tuple(block(a, b) for a, b in zip(alpha.inverse_images, beta.inverse_images))
    return MatrixRep(k, imgs, f"({alpha.descriptor})+({beta.descriptor})", inverse_images=invs)


def conjugate(alpha: MatrixRep, g) -> MatrixRep:
    """Images x -> g alpha(x) g^-1."""
    try:
        gi = rational_inverse(g)
    except ZeroDivisionError:
        raise InvalidRepresentation("conjugating matrix is singular") from None
    imgs = tuple(_freeze(rational_matmul(rational_matmul(g, a), gi)) for a in alpha.images)
    invs = tuple(_freeze(rational_matmul(rational_matmul(g, a), gi)) for a in alpha.inverse_images)
    return MatrixRep(alpha.k, imgs, f"conj({alpha.descriptor})", inverse_images=invs)


def perm_family(P: GroupPresentation, max_degree: int, max_nodes: int = 10**6,
                distinct_up_to_conjugacy: bool = False) -> tuple[list[MatrixRep], bool]:
    """Trivial 1-dimensional rep plus every permutation rep of degree 2..max_degree.

    Returns ``(family, truncated)``.
    """
    family = [trivial_rep(P, 1)]
    truncated = False
    for n in range(2, max_degree + 1):
        res = enumerate_perm_reps(P, n, max_nodes=max_nodes,
                                  distinct_up_to_conjugacy=distinct_up_to_conjugacy)
        family.extend(perm_to_matrix(rho) for rho in res)
        truncated = truncated or res.truncated
        if res.truncated:
            break
    return family, truncated


# -- representation files ------------------------------------------------------


def format_rep(alpha: MatrixRep) -> str:
    """``k <k>`` then one row-major line of ``p/q`` entries per generator."""
    lines = [f"k {alpha.k}"]
    for img in alpha.images:
        lines.append(" ".join(f"{x.numerator}/{x.denominator}" for row in img for x in row))
    return "\n".join(lines) + "\n"


def read_rep(text: str, descriptor: str = "file") -> MatrixRep:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("k "):
        raise InvalidRepresentation("representation file must start with 'k <k>'")
    try:
        k = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise InvalidRepresentation("bad 'k' header") from None
    if k < 1:
        raise InvalidRepresentation("k must be positive")
    mats = []
    for ln in lines[1:]:
        toks = ln.replace(",", " ").split()
        if len(toks) != k * k:
            raise InvalidRepresentation(f"expected {k * k} entries, got {len(toks)}")
        try:
            vals = [Fraction(tok) for tok in toks]
        except (ValueError, ZeroDivisionError):
            raise InvalidRepresentation(f"bad rational in {ln!r}") from None
        mats.append(tuple(tuple(vals[i * k:(i + 1) * k]) for i in range(k)))
    if not mats:
        raise InvalidRepresentation("no generator images")
    return MatrixRep(k, tuple(mats), descriptor)


def family_from_images(P: GroupPresentation, reps: Iterable[MatrixRep]) -> list[MatrixRep]:
    return [r.validate(P) for r in reps]
