"""Twisted chain complexes, twisted Alexander invariants and detection audits.

Coefficients are row vectors in Q[t^+-1]^k acted on from the right by
``alpha(g) * t^phi(g)``.  Matrices below are stored transposed so that they
act on column vectors:

* ``d1`` is ``k x kg``; block j is ``(alpha(x_j) t - 1)^T``.
* ``d2`` is ``kg x kr``; it is the transpose of the Fox block matrix.

H_0 is coker d1 and H_1 is ker d1 / im d2.  Every audit that quantifies over
all representations is reported over the supplied family only.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra import (
    LaurentPoly,
    PolyMatrix,
    express_in_basis,
    kernel_with_coordinates,
    module_invariants,
    normalize_unit,
    poly_gcd,
    smith_normal_form,
)
from .fox import GroupPresentation, evaluate_fox_matrix
from .reps import InvalidRepresentation, MatrixRep

__all__ = [
    "TwistedComplex",
    "InvariantReport",
    "Verdict",
    "ConsistencyError",
    "WrongComponentCount",
    "NoBoundAvailable",
    "build_complex",
    "h0_order",
    "h1_module",
    "report",
    "reports",
    "thurston_lower_bound",
    "certify_genus1_fibered",
    "split_rank_audit",
    "trivial_link_audit",
    "unknot_audit",
    "hopf_audit",
    "vanishing_search",
    "TREFOIL_ALEXANDER",
    "FIGURE8_ALEXANDER",
]

ONE = LaurentPoly.one()
TREFOIL_ALEXANDER = normalize_unit(LaurentPoly([1, -1, 1]))
FIGURE8_ALEXANDER = normalize_unit(LaurentPoly([1, -3, 1]))
FAMILY_SCOPE = "necessary-conditions-checked-over-family"


class ConsistencyError(RuntimeError):
    """An identity that must hold for link groups failed (internal bug sentinel)."""


class WrongComponentCount(ValueError):
    pass


class NoBoundAvailable(ValueError):
    """Every twisted Alexander polynomial in the family vanished."""


@dataclass(frozen=True)
class TwistedComplex:
    d1: PolyMatrix
    d2: PolyMatrix
    k: int

    def chain_condition(self) -> bool:
        if self.d2.cols == 0:
            return True
        return (self.d1 @ self.d2).is_zero()


def build_complex(P: GroupPresentation, alpha: MatrixRep, drop_one_relator: bool = True,
                  dropped: int | None = None, validate: bool = True) -> TwistedComplex:
    """Chain complex of the presentation 2-complex with twisted coefficients.

    With ``drop_one_relator`` the last relator (or ``dropped``) is left out;
    any single Wirtinger relator follows from the others.
    """
    if validate:
        alpha.validate(P)
    k = alpha.k
    rel_idx = list(range(len(P.relators)))
    if drop_one_relator and rel_idx:
        rel_idx.pop(len(rel_idx) - 1 if dropped is None else dropped)
    fox = evaluate_fox_matrix(alpha, P, rel_idx)
    d2 = fox.transpose()
    t = LaurentPoly.t()
    rows: list[list[LaurentPoly]] = [[] for _ in range(k)]
    for img in alpha.images:
        for a in range(k):
            # transpose of (alpha(x) t - 1): entry (a, b) is alpha(x)[b][a] t - delta
            for b in range(k):
                entry = LaurentPoly.monomial(img[b][a], 1)
                if a == b:
                    entry = entry - ONE
                rows[a].append(entry)
    d1 = PolyMatrix(rows, k, k * P.g)
    return TwistedComplex(d1, d2, k)


def h0_order(C: TwistedComplex) -> LaurentPoly:
    """Order of H_0 = coker d1; never zero for a link group."""
    snf = smith_normal_form(C.d1, transforms=False)
    if snf.rank < C.k:
        raise ConsistencyError("H_0 is not torsion; the meridian map is broken")
    return snf.order()


def h1_module(C: TwistedComplex) -> tuple[int, list[LaurentPoly]]:
    """Rank and elementary divisors of H_1 = ker d1 / im d2."""
    K, coords, _ = kernel_with_coordinates(C.d1)
    if C.d2.cols == 0:
        return K.cols, []
    M = express_in_basis(K, C.d2, left_inverse=coords)
    return module_invariants(M)


@dataclass(frozen=True)
class InvariantReport:
    """Invariants of one (link, representation) pair.

    ``tau`` is the reduced fraction delta1/delta0 as ``(num, den)``, or None
    when delta1 vanishes; ``deg1`` and ``norm_lower_bound`` are likewise None
    in that case.
    """

    k: int
    rep: str
    delta0: LaurentPoly
    delta1: LaurentPoly
    torsion_delta: LaurentPoly
    rank: int
    divisors: tuple[LaurentPoly, ...]
    tau: tuple[LaurentPoly, LaurentPoly] | None
    deg0: int
    deg1: int | None
    norm_lower_bound: Fraction | None
    audits: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def tau_integral(self) -> bool:
        return self.tau is not None and self.tau[1] == ONE

    def invariants(self) -> tuple:
        """Representation-independent content, for equality comparisons."""
        return (self.k, self.delta0, self.delta1, self.torsion_delta, self.rank,
                self.divisors, self.tau)

    def to_json(self) -> dict:
        out = {
            "k": self.k,
            "rep": self.rep,
            "delta0": str(self.delta0),
            "delta1": str(self.delta1),
            "torsion_delta": str(self.torsion_delta),
            "rank": self.rank,
            "tau": None if self.tau is None else {
                "num": str(self.tau[0]), "den": str(self.tau[1]), "integral": self.tau_integral},
            "deg0": self.deg0,
            "audits": self.audits,
        }
        if self.deg1 is not None:
            out["deg1"] = self.deg1
            out["norm_lower_bound"] = str(self.norm_lower_bound)
        return out


def _tau(delta1: LaurentPoly, delta0: LaurentPoly):
    if delta1.is_zero():
        return None
    g = poly_gcd(delta1, delta0)
    return normalize_unit(delta1.exact_div(g)), normalize_unit(delta0.exact_div(g))


def _report(P: GroupPresentation, alpha: MatrixRep, drop_one_relator: bool = True) -> InvariantReport:
    C = build_complex(P, alpha, drop_one_relator)
    delta0 = h0_order(C)
    rank, divisors = h1_module(C)
    torsion = ONE
    for d in divisors:
        torsion = torsion * d
    torsion = normalize_unit(torsion)
    delta1 = LaurentPoly.zero() if rank > 0 else torsion
    deg0 = delta0.breadth()
    deg1 = None if delta1.is_zero() else delta1.breadth()
    bound = None if deg1 is None else Fraction(deg1 - deg0, alpha.k)
    audits = {
        "h0_bound": {"verdict": "PASS" if deg0 <= alpha.k else "FAIL"},
    }
    if deg0 > alpha.k:
        audits["h0_bound"]["witness"] = {"deg0": deg0, "k": alpha.k}
    return InvariantReport(
        k=alpha.k, rep=alpha.descriptor, delta0=delta0, delta1=delta1,
        torsion_delta=torsion, rank=rank, divisors=tuple(divisors), tau=_tau(delta1, delta0),
        deg0=deg0, deg1=deg1, norm_lower_bound=bound, audits=audits,
    )


@lru_cache(maxsize=8192)
def report(P: GroupPresentation, alpha: MatrixRep, drop_one_relator: bool = True) -> InvariantReport:
    """Full invariant report for one representation (memoized)."""
    return _report(P, alpha, drop_one_relator)


def _worker_count(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get("TWISTKIT_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ValueError("TWISTKIT_THREADS must be a positive integer") from None
        if n < 1:
            raise ValueError("TWISTKIT_THREADS must be a positive integer")
        return n
    return 1


def _report_task(args):
    P, alpha = args
    return _report(P, alpha)


def reports(P: GroupPresentation, family: Sequence[MatrixRep], workers: int | None = None) -> list[InvariantReport]:
    """Reports for every representation, in family order.

    ``workers`` (default: ``TWISTKIT_THREADS`` or 1) > 1 fans out to
    processes; the output order never depends on it.
    """
    n = _worker_count(workers)
    if n == 1 or len(family) < 2:
        return [report(P, a) for a in family]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(_report_task, [(P, a) for a in family], chunksize=8))


# -- bounds and audits ---------------------------------------------------------


@dataclass
class Verdict:
    """Outcome of an audit over a finite family of representations."""

    name: str
    passed: bool
    family_size: int
    witness: dict | None = None
    details: dict = field(default_factory=dict)
    scope: str = FAMILY_SCOPE

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_json(self) -> dict:
        out = {
            "audit": self.name,
            "verdict": self.verdict,
            "scope": self.scope,
            "family_size": self.family_size,
            "annotation": f"over family of size {self.family_size}",
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out


def thurston_lower_bound(rep_reports: Iterable[InvariantReport]) -> Fraction:
    """Largest (deg delta1 - deg delta0)/k over reports with delta1 != 0."""
    bounds = [r.norm_lower_bound for r in rep_reports if r.norm_lower_bound is not None]
    if not bounds:
        raise NoBoundAvailable("all twisted Alexander polynomials vanish; no bound")
    return max(bounds)


def _family_reports(P, family, workers=None):
    return reports(P, list(family), workers)


def _require_m(P: GroupPresentation, allowed, what: str):
    if P.m not in allowed:
        raise WrongComponentCount(f"{what} needs {'/'.join(map(str, allowed))} components, link has {P.m}")


def unknot_audit(P: GroupPresentation, family: Sequence[MatrixRep], workers=None) -> Verdict:
    """PASS iff delta1 == 1 for every representation in the family."""
    _require_m(P, (1,), "unknot audit")
    reps_ = _family_reports(P, family, workers)
    for r in reps_:
        if r.delta1 != ONE:
            return Verdict("unknot", False, len(reps_),
                           {"rep": r.rep, "k": r.k, "delta1": str(r.delta1)})
    return Verdict("unknot", True, len(reps_))


def hopf_audit(P: GroupPresentation, family: Sequence[MatrixRep], workers=None) -> Verdict:
    """PASS iff tau == delta1/delta0 == 1 for every representation."""
    _require_m(P, (2,), "Hopf audit")
    reps_ = _family_reports(P, family, workers)
    for r in reps_:
        if r.tau is None or r.tau != (ONE, ONE):
            tau = "undefined (delta1 = 0)" if r.tau is None else f"({r.tau[0]})/({r.tau[1]})"
            return Verdict("hopf", False, len(reps_), {"rep": r.rep, "k": r.k, "tau": tau})
    return Verdict("hopf", True, len(reps_))


def certify_genus1_fibered(P: GroupPresentation, family: Sequence[MatrixRep], workers=None) -> Verdict:
    """Trefoil / figure-8 conditions over a family.

    (1) the untwisted polynomial is 1 - t + t^2 or 1 - 3t + t^2, and
    (2) every delta1 is nonzero with breadth at most 2k.
    """
    _require_m(P, (1,), "trefoil/figure-8 certificate")
    reps_ = _family_reports(P, family, workers)
    trivial = [r for r in reps_ if r.rep == "trivial:k=1"]
    if not trivial:
        from .reps import trivial_rep
        trivial = [report(P, trivial_rep(P, 1))]
    classical = trivial[0].delta1
    if classical == TREFOIL_ALEXANDER:
        knot = "trefoil"
    elif classical == FIGURE8_ALEXANDER:
        knot = "figure-8"
    else:
        return Verdict("trefoil-or-fig8", False, len(reps_),
                       {"reason": "classical polynomial mismatch", "delta1": str(classical)})
    for r in reps_:
        if r.delta1.is_zero():
            return Verdict("trefoil-or-fig8", False, len(reps_),
                           {"reason": "vanishing twisted polynomial", "rep": r.rep, "k": r.k})
        if r.deg1 > 2 * r.k:
            return Verdict("trefoil-or-fig8", False, len(reps_),
                           {"reason": "degree exceeds 2k", "rep": r.rep, "k": r.k,
                            "deg1": r.deg1, "delta1": str(r.delta1)})
    return Verdict("trefoil-or-fig8", True, len(reps_), details={"knot": knot, "delta": str(classical)})


def split_rank_audit(P: GroupPresentation, family: Sequence[MatrixRep], s: int, workers=None) -> Verdict:
    """Necessary condition for s-splittability: rank >= s*k for every rep.

    Also records whether some representation attains rank == s*k.
    """
    if P.m < 2:
        raise WrongComponentCount("split audit needs at least 2 components")
    reps_ = _family_reports(P, family, workers)
    attained = None
    for r in reps_:
        if r.rank < s * r.k:
            return Verdict(f"split:{s}", False, len(reps_),
                           {"rep": r.rep, "k": r.k, "rank": r.rank, "required": s * r.k})
        if attained is None and r.rank == s * r.k:
            attained = r.rep
    return Verdict(f"split:{s}", True, len(reps_),
                   details={"attained": attained is not None, "attained_by": attained})


def trivial_link_audit(P: GroupPresentation, family: Sequence[MatrixRep], workers=None) -> Verdict:
    """PASS iff rank == k(m-1) and the torsion order is 1 for every rep."""
    reps_ = _family_reports(P, family, workers)
    for r in reps_:
        if r.rank != r.k * (P.m - 1):
            return Verdict("trivial-link", False, len(reps_),
                           {"rep": r.rep, "k": r.k, "rank": r.rank, "expected_rank": r.k * (P.m - 1)})
        if r.torsion_delta != ONE:
            return Verdict("trivial-link", False, len(reps_),
                           {"rep": r.rep, "k": r.k, "torsion_delta": str(r.torsion_delta)})
    return Verdict("trivial-link", True, len(reps_))


NO_WITNESS = "no vanishing witness found within budget"


def vanishing_search(P: GroupPresentation, family: Sequence[MatrixRep], workers=None) -> dict:
    """Look for a representation with delta1 == 0 (an obstruction to fibering).

    Finding none says nothing about fiberedness; the message says so.
    """
    reps_ = _family_reports(P, family, workers)
    bounds = [r.norm_lower_bound for r in reps_ if r.norm_lower_bound is not None]
    out = {
        "family_size": len(reps_),
        "norm_lower_bound": str(max(bounds)) if bounds else None,
    }
    for r in reps_:
        if r.delta1.is_zero():
            out["result"] = "vanishing witness found: not fibered"
            out["witness"] = {"rep": r.rep, "k": r.k, "rank": r.rank}
            return out
    out["result"] = NO_WITNESS
    return out
