"""Exact arithmetic over the Laurent polynomial ring Q[t, t^-1].

Everything downstream (Fox matrices, chain complexes, module orders) is
built from :class:`LaurentPoly` and :class:`PolyMatrix`.  The ring is a
Euclidean domain once the degree function is taken to be the breadth
(max exponent minus min exponent), and :func:`smith_normal_form` runs the
Euclidean reduction directly in that ring, so monomials c*t^n are units and
never need to be cleared first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "LaurentPoly",
    "PolyMatrix",
    "SmithForm",
    "MembershipError",
    "normalize_unit",
    "breadth",
    "poly_gcd",
    "smith_normal_form",
    "kernel_basis",
    "kernel_with_coordinates",
    "express_in_basis",
    "module_invariants",
    "rational_inverse",
    "rational_matmul",
    "rational_identity",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


class LaurentPoly:
    """Laurent polynomial with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of ``t**(min_exp + i)``.  Instances are
    immutable and kept trimmed: the first and last coefficients are nonzero,
    and the zero polynomial has no coefficients (its ``min_exp`` is 0).
    """

    __slots__ = ("min_exp", "coeffs")

    def __init__(self, coeffs: Iterable = (), min_exp: int = 0):
        c = [_frac(x) for x in coeffs]
        lo, hi = 0, len(c)
        while lo < hi and not c[lo]:
            lo += 1
        while hi > lo and not c[hi - 1]:
            hi -= 1
        if lo == hi:
            self.min_exp, self.coeffs = 0, ()
        else:
            self.min_exp, self.coeffs = min_exp + lo, tuple(c[lo:hi])

    @classmethod
    def _raw(cls, min_exp: int, coeffs: tuple) -> "LaurentPoly":
        # caller guarantees a trimmed tuple of Fractions
        p = object.__new__(cls)
        if coeffs:
            p.min_exp, p.coeffs = min_exp, coeffs
        else:
            p.min_exp, p.coeffs = 0, ()
        return p

    @classmethod
    def _trim(cls, min_exp: int, c: list) -> "LaurentPoly":
        lo, hi = 0, len(c)
        while lo < hi and not c[lo]:
            lo += 1
        while hi > lo and not c[hi - 1]:
            hi -= 1
        return cls._raw(min_exp + lo, tuple(c[lo:hi]))

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._raw(0, ())

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls._raw(0, (_ONE,))

    @classmethod
    def t(cls) -> "LaurentPoly":
        return cls._raw(1, (_ONE,))

    @classmethod
    def monomial(cls, coeff, exp: int = 0) -> "LaurentPoly":
        c = _frac(coeff)
        return cls._raw(exp, (c,)) if c else cls.zero()

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls.monomial(c, 0)

    @classmethod
    def from_dict(cls, terms: dict) -> "LaurentPoly":
        terms = {e: _frac(c) for e, c in terms.items() if c}
        if not terms:
            return cls.zero()
        lo, hi = min(terms), max(terms)
        return cls._trim(lo, [terms.get(e, _ZERO) for e in range(lo, hi + 1)])

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of ``str``: accepts ``c0 + c1*t + c2*t^2`` style sums."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial string")
        terms: dict[int, Fraction] = {}
        pos = 0
        term_re = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(\*?t(?:\^(-?\d+))?)?")
        while pos < len(s):
            m = term_re.match(s, pos)
            if m is None or m.end() == pos or not (m.group(2) or m.group(3)):
                raise ValueError(f"cannot parse polynomial {text!r} at {pos}")
            sign = -1 if m.group(1) == "-" else 1
            if pos > 0 and not m.group(1):
                raise ValueError(f"missing operator in {text!r} at {pos}")
            coeff = Fraction(m.group(2)) if m.group(2) else _ONE
            if m.group(3):
                if m.group(3).startswith("*") and not m.group(2):
                    raise ValueError(f"dangling '*' in {text!r}")
                if not m.group(3).startswith("*") and m.group(2):
                    raise ValueError(f"missing '*' in {text!r}")
                exp = int(m.group(4)) if m.group(4) is not None else 1
            else:
                exp = 0
            terms[exp] = terms.get(exp, _ZERO) + sign * coeff
            pos = m.end()
        return cls.from_dict(terms)

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def max_exp(self) -> int:
        return self.min_exp + len(self.coeffs) - 1

    def breadth(self) -> int:
        if not self.coeffs:
            raise ValueError("breadth of the zero polynomial is undefined")
        return len(self.coeffs) - 1

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def leading(self) -> Fraction:
        return self.coeffs[-1]

    def terms(self) -> dict[int, Fraction]:
        return {self.min_exp + i: c for i, c in enumerate(self.coeffs) if c}

    def height(self) -> int:
        """Bit size of the largest numerator or denominator (pivot heuristic)."""
        h = 0
        for c in self.coeffs:
            h = max(h, abs(c.numerator).bit_length(), c.denominator.bit_length())
        return h

    def __call__(self, x) -> Fraction:
        x = _frac(x)
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc * x ** self.min_exp if self.coeffs else _ZERO

    # -- arithmetic ----------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                other = LaurentPoly.const(other)
            else:
                return NotImplemented
        return self.min_exp == other.min_exp and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.min_exp, self.coeffs))

    @staticmethod
    def _coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        return LaurentPoly.const(x)

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.min_exp, other.min_exp)
        hi = max(self.max_exp, other.max_exp)
        c = [_ZERO] * (hi - lo + 1)
        off = self.min_exp - lo
        for i, x in enumerate(self.coeffs):
            c[off + i] = x
        off = other.min_exp - lo
        for i, x in enumerate(other.coeffs):
            c[off + i] += x
        return LaurentPoly._trim(lo, c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.min_exp, tuple(-x for x in self.coeffs))

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            c = _frac(other)
            if not c:
                return LaurentPoly.zero()
            return LaurentPoly._raw(self.min_exp, tuple(x * c for x in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return LaurentPoly.zero()
        if len(b) == 1:
            c = b[0]
            return LaurentPoly._raw(self.min_exp + other.min_exp, tuple(x * c for x in a))
        if len(a) == 1:
            c = a[0]
            return LaurentPoly._raw(self.min_exp + other.min_exp, tuple(c * y for y in b))
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return LaurentPoly._trim(self.min_exp + other.min_exp, out)

    __rmul__ = __mul__

    def shift(self, n: int) -> "LaurentPoly":
        """Multiply by t**n."""
        return LaurentPoly._raw(self.min_exp + n, self.coeffs) if self.coeffs else self

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            return self.unit_inverse() ** (-n)
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def unit_inverse(self) -> "LaurentPoly":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit of Q[t^+-1]")
        return LaurentPoly._raw(-self.min_exp, (1 / self.coeffs[0],))

    def divmod(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Euclidean division with breadth as the size function.

        Returns ``(q, r)`` with ``self == q*other + r`` and either ``r == 0``
        or ``breadth(r) < breadth(other)``.
        """
        b = other.coeffs
        if not b:
            raise ZeroDivisionError("division by zero polynomial")
        a = self.coeffs
        if not a:
            return LaurentPoly.zero(), LaurentPoly.zero()
        if len(b) == 1:
            c = b[0]
            return (LaurentPoly._raw(self.min_exp - other.min_exp, tuple(x / c for x in a)),
                    LaurentPoly.zero())
        db = len(b) - 1
        if len(a) - 1 < db:
            return LaurentPoly.zero(), self
        # ordinary long division of polynomials with constant terms a[0], b[0]
        rem = list(a)
        lead = b[-1]
        nq = len(a) - db
        q = [_ZERO] * nq
        for i in range(nq - 1, -1, -1):
            coef = rem[i + db]
            if coef:
                coef = coef / lead
                q[i] = coef
                for j in range(db + 1):
                    rem[i + j] -= coef * b[j]
        quot = LaurentPoly._trim(self.min_exp - other.min_exp, q)
        r = LaurentPoly._trim(self.min_exp, rem[:db])
        return quot, r

    def __floordiv__(self, other) -> "LaurentPoly":
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other) -> "LaurentPoly":
        return self.divmod(self._coerce(other))[1]

    def divides(self, other: "LaurentPoly") -> bool:
        return not other.divmod(self)[1].coeffs

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        q, r = self.divmod(other)
        if r.coeffs:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    # -- rendering -----------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            e = self.min_exp + i
            neg = c < 0
            a = -c if neg else c
            if e == 0:
                body = str(a)
            else:
                mono = "t" if e == 1 else f"t^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


def breadth(p: LaurentPoly) -> int:
    """Degree of a Laurent polynomial in the only unit-invariant sense."""
    return p.breadth()


def _content(coeffs: Sequence[Fraction]) -> Fraction:
    nums = reduce(gcd, (c.numerator for c in coeffs), 0)
    dens = reduce(lambda x, y: x * y // gcd(x, y), (c.denominator for c in coeffs), 1)
    return Fraction(nums, dens)


def normalize_unit(p: LaurentPoly) -> LaurentPoly:
    """Canonical representative of p up to units c*t^n.

    Shifts so the lowest exponent is 0, then scales to coprime integer
    coefficients with a positive top coefficient.
    """
    if not p.coeffs:
        return p
    cont = _content(p.coeffs)
    if p.coeffs[-1] < 0:
        cont = -cont
    return LaurentPoly._raw(0, tuple(c / cont for c in p.coeffs))


def unit_part(p: LaurentPoly) -> LaurentPoly:
    """The unit u with p == u * normalize_unit(p)."""
    cont = _content(p.coeffs)
    if p.coeffs[-1] < 0:
        cont = -cont
    return LaurentPoly._raw(p.min_exp, (cont,))


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    while b.coeffs:
        a, b = b, a.divmod(b)[1]
    return normalize_unit(a)


# ---------------------------------------------------------------------------
# rational matrices (plain nested lists of Fractions)


def rational_identity(k: int) -> list[list[Fraction]]:
    return [[_ONE if i == j else _ZERO for j in range(k)] for i in range(k)]


def rational_matmul(a, b) -> list[list[Fraction]]:
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    out = [[_ZERO] * p for _ in range(n)]
    for i in range(n):
        row = out[i]
        for l in range(m):
            x = a[i][l]
            if x:
                bl = b[l]
                for j in range(p):
                    if bl[j]:
                        row[j] += x * bl[j]
    return out


def rational_inverse(a) -> list[list[Fraction]]:
    """Gauss-Jordan inverse; raises ZeroDivisionError if singular."""
    k = len(a)
    m = [[_frac(x) for x in row] + [_ONE if i == j else _ZERO for j in range(k)]
         for i, row in enumerate(a)]
    for col in range(k):
        piv = next((r for r in range(col, k) if m[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(k):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[k:] for row in m]


# ---------------------------------------------------------------------------
# matrices over the Laurent ring


class PolyMatrix:
    """Dense rectangular matrix with :class:`LaurentPoly` entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, rows: int | None = None, cols: int | None = None):
        entries = [[LaurentPoly._coerce(x) for x in row] for row in entries]
        self.rows = len(entries) if rows is None else rows
        if cols is None:
            cols = len(entries[0]) if entries else 0
        self.cols = cols
        if len(entries) != self.rows or any(len(r) != cols for r in entries):
            raise ValueError("ragged or mis-sized matrix")
        self.entries = entries

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PolyMatrix":
        z = LaurentPoly.zero()
        return cls([[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        z, o = LaurentPoly.zero(), LaurentPoly.one()
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diagonal(cls, diag: Sequence[LaurentPoly], rows: int, cols: int) -> "PolyMatrix":
        m = cls.zeros(rows, cols)
        for i, d in enumerate(diag):
            m.entries[i][i] = d
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def copy(self) -> "PolyMatrix":
        return PolyMatrix([list(r) for r in self.entries], self.rows, self.cols)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for i in range(self.rows)]
                           for j in range(self.cols)], self.cols, self.rows)

    @property
    def T(self) -> "PolyMatrix":
        return self.transpose()

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        z = LaurentPoly.zero()
        out = []
        ocols = [[other.entries[l][j] for l in range(other.rows)] for j in range(other.cols)]
        for row in self.entries:
            nz = [(l, x) for l, x in enumerate(row) if x.coeffs]
            new = []
            for col in ocols:
                acc = z
                for l, x in nz:
                    y = col[l]
                    if y.coeffs:
                        acc = acc + x * y
                new.append(acc)
            out.append(new)
        return PolyMatrix(out, self.rows, other.cols)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix([[x + y for x, y in zip(r, s)]
                           for r, s in zip(self.entries, other.entries)], self.rows, self.cols)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix([[x - y for x, y in zip(r, s)]
                           for r, s in zip(self.entries, other.entries)], self.rows, self.cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return all(not x.coeffs for row in self.entries for x in row)

    def columns(self, idx: Iterable[int]) -> "PolyMatrix":
        idx = list(idx)
        return PolyMatrix([[row[j] for j in idx] for row in self.entries], self.rows, len(idx))

    def select_rows(self, idx: Iterable[int]) -> "PolyMatrix":
        idx = list(idx)
        return PolyMatrix([list(self.entries[i]) for i in idx], len(idx), self.cols)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in row) for row in self.entries)
        return f"PolyMatrix({self.rows}x{self.cols}: [{body}])"


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass
class SmithForm:
    """``A == U @ D @ V`` with D diagonal, ``diagonal[i] | diagonal[i+1]``.

    ``diagonal`` lists the nonzero entries only (unit-normalized); the rest of
    D is zero.  ``U_inv``/``V_inv`` are the inverse transforms, so
    ``U_inv @ A @ V_inv == D``.  Transforms are ``None`` when not requested.
    """

    diagonal: list[LaurentPoly]
    rows: int
    cols: int
    U: PolyMatrix | None = None
    V: PolyMatrix | None = None
    U_inv: PolyMatrix | None = None
    V_inv: PolyMatrix | None = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def D(self) -> PolyMatrix:
        return PolyMatrix.diagonal(self.diagonal, self.rows, self.cols)

    def order(self) -> LaurentPoly:
        """Product of the diagonal entries (normalized)."""
        acc = LaurentPoly.one()
        for d in self.diagonal:
            acc = acc * d
        return normalize_unit(acc)


class _Reducer:
    """Mutable working state for one SNF computation.

    Keeps ``W == U_inv @ A @ V_inv`` (and ``A == U @ W @ V``) through every
    elementary operation when transforms are tracked.
    """

    def __init__(self, a: PolyMatrix, track: bool):
        self.m, self.n = a.rows, a.cols
        self.W = [list(r) for r in a.entries]
        self.track = track
        if track:
            self.U = [list(r) for r in PolyMatrix.identity(self.m).entries]
            self.Ui = [list(r) for r in PolyMatrix.identity(self.m).entries]
            self.V = [list(r) for r in PolyMatrix.identity(self.n).entries]
            self.Vi = [list(r) for r in PolyMatrix.identity(self.n).entries]

    def swap_rows(self, i, j):
        if i == j:
            return
        W = self.W
        W[i], W[j] = W[j], W[i]
        if self.track:
            self.Ui[i], self.Ui[j] = self.Ui[j], self.Ui[i]
            for row in self.U:
                row[i], row[j] = row[j], row[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for row in self.W:
            row[i], row[j] = row[j], row[i]
        if self.track:
            for row in self.Vi:
                row[i], row[j] = row[j], row[i]
            self.V[i], self.V[j] = self.V[j], self.V[i]

    def add_row(self, i, j, q, start=0):
        """row_i += q * row_j"""
        Wi, Wj = self.W[i], self.W[j]
        for c in range(start, self.n):
            y = Wj[c]
            if y.coeffs:
                Wi[c] = Wi[c] + q * y
        if self.track:
            _axpy(self.Ui[i], self.Ui[j], q)
            for row in self.U:
                if row[i].coeffs:
                    row[j] = row[j] - q * row[i]

    def add_col(self, i, j, q, start=0):
        """col_i += q * col_j"""
        for r in range(start, self.m):
            row = self.W[r]
            y = row[j]
            if y.coeffs:
                row[i] = row[i] + q * y
        if self.track:
            for row in self.Vi:
                if row[j].coeffs:
                    row[i] = row[i] + q * row[j]
            _axpy(self.V[j], self.V[i], -q)

    def scale_row(self, i, u: LaurentPoly):
        ui = u.unit_inverse()
        self.W[i] = [x * u if x.coeffs else x for x in self.W[i]]
        if self.track:
            self.Ui[i] = [x * u if x.coeffs else x for x in self.Ui[i]]
            for row in self.U:
                if row[i].coeffs:
                    row[i] = row[i] * ui


def _axpy(dst: list, src: list, q: LaurentPoly):
    for c, y in enumerate(src):
        if y.coeffs:
            dst[c] = dst[c] + q * y


def _pivot_key(p: LaurentPoly):
    return (len(p.coeffs), p.height())


def smith_normal_form(a: PolyMatrix, transforms: bool = True) -> SmithForm:
    """Smith normal form over Q[t^+-1].

    Pivots are chosen by minimal breadth, then minimal coefficient height.
    Diagonal entries are returned unit-normalized and in divisibility order.
    """
    red = _Reducer(a, transforms)
    W = red.W
    m, n = red.m, red.n
    diag: list[LaurentPoly] = []
    for s in range(min(m, n)):
        best = None
        for i in range(s, m):
            row = W[i]
            for j in range(s, n):
                x = row[j]
                if x.coeffs:
                    key = _pivot_key(x)
                    if best is None or key < best[0]:
                        best = (key, i, j)
                        if key[0] == 1 and key[1] <= 1:
                            break
            if best is not None and best[0][0] == 1 and best[0][1] <= 1:
                break
        if best is None:
            break
        _, pi, pj = best
        red.swap_rows(s, pi)
        red.swap_cols(s, pj)
        while True:
            piv = W[s][s]
            clean = True
            for i in range(s + 1, m):
                x = W[i][s]
                if x.coeffs:
                    q, r = x.divmod(piv)
                    red.add_row(i, s, -q, s)
                    if r.coeffs:
                        clean = False
            for j in range(s + 1, n):
                x = W[s][j]
                if x.coeffs:
                    q, r = x.divmod(piv)
                    red.add_col(j, s, -q, s)
                    if r.coeffs:
                        clean = False
            if not clean:
                # a remainder is smaller than the pivot; move the smallest in
                cand = [(_pivot_key(W[i][s]), i, s) for i in range(s, m) if W[i][s].coeffs]
                cand += [(_pivot_key(W[s][j]), s, j) for j in range(s + 1, n) if W[s][j].coeffs]
                _, bi, bj = min(cand)
                red.swap_rows(s, bi)
                red.swap_cols(s, bj)
                continue
            # row and column s are clear; enforce divisibility of the rest
            bad = None
            if not piv.is_unit():
                for i in range(s + 1, m):
                    for j in range(s + 1, n):
                        x = W[i][j]
                        if x.coeffs and x.divmod(piv)[1].coeffs:
                            bad = i
                            break
                    if bad is not None:
                        break
            if bad is None:
                break
            red.add_row(s, bad, LaurentPoly.one(), s)
        piv = W[s][s]
        u = unit_part(piv)
        if u != LaurentPoly.one():
            red.scale_row(s, u.unit_inverse())
        diag.append(W[s][s])
    if not transforms:
        return SmithForm(diag, m, n)
    return SmithForm(
        diag, m, n,
        U=PolyMatrix(red.U, m, m), V=PolyMatrix(red.V, n, n),
        U_inv=PolyMatrix(red.Ui, m, m), V_inv=PolyMatrix(red.Vi, n, n),
    )


# ---------------------------------------------------------------------------
# kernels, coordinates, module invariants


class MembershipError(ArithmeticError):
    """A vector expected to lie in a column span does not."""


def kernel_with_coordinates(a: PolyMatrix) -> tuple[PolyMatrix, PolyMatrix, SmithForm]:
    """Free basis K of ker A together with a left inverse P (``P @ K == I``).

    For any vector v in ker A, ``P @ v`` are its coordinates in the basis K.
    """
    snf = smith_normal_form(a, transforms=True)
    r = snf.rank
    idx = range(r, a.cols)
    K = snf.V_inv.columns(idx)
    P = snf.V.select_rows(idx)
    return K, P, snf


def kernel_basis(a: PolyMatrix) -> PolyMatrix:
    """Columns form a free basis of the kernel of A (possibly empty)."""
    return kernel_with_coordinates(a)[0]


def express_in_basis(K: PolyMatrix, B: PolyMatrix, left_inverse: PolyMatrix | None = None) -> PolyMatrix:
    """Solve ``K @ M == B`` exactly for M, K of full column rank.

    ``left_inverse`` may be supplied when K came from
    :func:`kernel_with_coordinates`; otherwise an SNF of K is computed.  The
    result is always verified by re-multiplication.
    """
    if K.rows != B.rows:
        raise ValueError("K and B must have the same number of rows")
    if left_inverse is not None:
        M = left_inverse @ B
    else:
        snf = smith_normal_form(K, transforms=True)
        if snf.rank != K.cols:
            raise ValueError("basis matrix does not have full column rank")
        Y = snf.U_inv @ B
        rows = []
        for i in range(K.rows):
            if i < snf.rank:
                d = snf.diagonal[i]
                try:
                    rows.append([y.exact_div(d) for y in Y.entries[i]])
                except ArithmeticError:
                    raise MembershipError("column not in the span of the basis") from None
            elif any(y.coeffs for y in Y.entries[i]):
                raise MembershipError("column not in the span of the basis")
        Yk = PolyMatrix(rows, K.cols, B.cols)
        M = snf.V_inv @ Yk
    if K @ M != B:
        raise MembershipError("column not in the span of the basis")
    return M


def module_invariants(M: PolyMatrix) -> tuple[int, list[LaurentPoly]]:
    """Rank and elementary divisors of the module Lambda^rows / im M.

    Units are dropped from the divisor list, so a free module has ``[]``.
    """
    snf = smith_normal_form(M, transforms=False)
    rank = M.rows - snf.rank
    divisors = [d for d in snf.diagonal if not d.is_unit()]
    return rank, divisors
