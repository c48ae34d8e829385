"""Acceptance criteria, one test each.

Every test prints a single ``[criterion N] PASS|FAIL`` line (collected again
in the terminal summary) and fails if either the check or its time limit is
missed.  Run alone with ``pytest tests/test_acceptance.py -v -s``.
"""

import random
import time

import pytest

from conftest import record_acceptance
from helpers import CORPUS, pres, random_poly_matrix, snf_checks
from test_reps import brute_force
from twistkit.algebra import LaurentPoly, normalize_unit
from twistkit.invariants import (
    NO_WITNESS,
    _report,
    report,
    reports,
    split_rank_audit,
    thurston_lower_bound,
    vanishing_search,
)
from twistkit.reps import (
    diagonal_sum,
    enumerate_perm_reps,
    is_surjective,
    perm_family,
    trivial_rep,
)

ONE = LaurentPoly.one()
SEEN: list = []     # every (link, report) produced by criteria 2-4, for criterion 5


def fresh():
    report.cache_clear()


def finish(n, what, ok, elapsed, limit, note=""):
    in_time = elapsed < limit
    status = "PASS" if ok and in_time else "FAIL"
    extra = f"; {note}" if note else ""
    timing = f"{elapsed:.2f}s < {limit}s" if in_time else f"{elapsed:.2f}s exceeds {limit}s"
    record_acceptance(f"[criterion {n}] {status}: {what} ({timing}{extra})")
    assert ok, what
    assert in_time, f"criterion {n} took {elapsed:.2f}s, limit {limit}s"


def test_criterion_01_classical_values():
    fresh()
    t0 = time.perf_counter()
    tre = _report(CORPUS["trefoil"].presentation(), trivial_rep(pres("trefoil"), 1))
    fig = _report(CORPUS["figure8"].presentation(), trivial_rep(pres("figure8"), 1))
    elapsed = time.perf_counter() - t0
    ok = (normalize_unit(tre.delta1) == LaurentPoly.parse("1 - t + t^2")
          and normalize_unit(fig.delta1) == LaurentPoly.parse("1 - 3*t + t^2"))
    finish(1, "trefoil and figure-8 classical polynomials", ok, elapsed, 1,
           f"{tre.delta1} / {fig.delta1}")


def test_criterion_02_unknot_audit():
    fresh()
    t0 = time.perf_counter()
    ok, sizes = True, []
    for name in ("unknot0", "unknot1"):
        P = pres(name)
        fam, truncated = perm_family(P, 5)
        rs = reports(P, fam)
        SEEN.extend((name, r) for r in rs)
        sizes.append(len(fam))
        ok &= not truncated and all(r.delta1 == ONE for r in rs)
    elapsed = time.perf_counter() - t0
    finish(2, "unknot diagrams have delta1 = 1 over degree <= 5", ok, elapsed, 30,
           f"family sizes {sizes}")


def test_criterion_03_hopf_audit():
    fresh()
    t0 = time.perf_counter()
    P = pres("hopf")
    fam, truncated = perm_family(P, 4)
    rs = reports(P, fam)
    SEEN.extend(("hopf", r) for r in rs)
    ok = not truncated and all(r.tau == (ONE, ONE) for r in rs)
    elapsed = time.perf_counter() - t0
    finish(3, "Hopf link has tau = 1 over degree <= 4", ok, elapsed, 60, f"family size {len(fam)}")


def test_criterion_04_trefoil_figure8_certificate():
    fresh()
    t0 = time.perf_counter()
    ok, sizes = True, []
    for name in ("trefoil", "figure8"):
        P = pres(name)
        fam, truncated = perm_family(P, 5)
        rs = reports(P, fam)
        SEEN.extend((name, r) for r in rs)
        sizes.append(len(fam))
        ok &= not truncated
        ok &= all(not r.delta1.is_zero() and r.deg1 <= 2 * r.k and r.deg1 - r.deg0 == r.k for r in rs)
    elapsed = time.perf_counter() - t0
    finish(4, "trefoil/figure-8: delta1 != 0, breadth <= 2k, fibered equality over degree <= 5",
           ok, elapsed, 300, f"family sizes {sizes}")


def test_criterion_05_h0_bound():
    t0 = time.perf_counter()
    seen = list(SEEN)
    if not seen:   # run on its own: rebuild what criteria 2-4 would have produced
        for name, deg in [("unknot0", 5), ("unknot1", 5), ("hopf", 4), ("trefoil", 5), ("figure8", 5)]:
            P = pres(name)
            seen += [(name, r) for r in reports(P, perm_family(P, deg)[0])]
    for name in sorted(CORPUS):
        P = pres(name)
        seen += [(name, r) for r in reports(P, perm_family(P, 3)[0])]
    bad = [(n, r.rep) for n, r in seen if r.delta0.is_zero() or r.deg0 > r.k]
    elapsed = time.perf_counter() - t0
    finish(5, "H0 order nonzero with breadth <= k for every corpus entry and family rep",
           not bad, elapsed, 300, f"{len(seen)} reports checked" + (f", first bad {bad[0]}" if bad else ""))


def test_criterion_06_split_and_unlink_ranks():
    fresh()
    t0 = time.perf_counter()
    notes = []
    P = pres("unlink2")
    fam, tr1 = perm_family(P, 4)
    ok = not tr1 and all(r.rank == r.k and r.torsion_delta == ONE for r in reports(P, fam))
    notes.append(f"unlink2 {len(fam)} reps")

    P = pres("trefoil_unknot")
    fam, tr2 = perm_family(P, 4)
    rs = reports(P, fam)
    ok &= not tr2 and all(r.rank == r.k for r in rs)
    trivial = rs[0]
    standalone = report(pres("trefoil"), trivial_rep(pres("trefoil"), 1)).delta1
    ok &= trivial.rep == "trivial:k=1"
    ok &= trivial.torsion_delta == LaurentPoly.parse("1 - t + t^2") == standalone
    notes.append(f"trefoil+unknot {len(fam)} reps, torsion {trivial.torsion_delta}")

    P = pres("hopf")
    v = split_rank_audit(P, perm_family(P, 4)[0], 1)
    ok &= (not v.passed) and v.witness["rank"] == 0
    notes.append(f"hopf split audit {v.verdict} at {v.witness['rep']}")
    elapsed = time.perf_counter() - t0
    finish(6, "split/unlink ranks and torsion orders", ok, elapsed, 300, "; ".join(notes))


def test_criterion_07_multiplicativity():
    fresh()
    t0 = time.perf_counter()
    rng = random.Random(7)
    checked, bad = 0, []
    for name in sorted(CORPUS):
        P = pres(name)
        fam = perm_family(P, 3)[0] + [trivial_rep(P, 2)]
        for _ in range(25):
            a, b = rng.choice(fam), rng.choice(fam)
            ra, rb, rs = report(P, a), report(P, b), report(P, diagonal_sum(a, b))
            for i, (x, y, z) in enumerate([(ra.delta0, rb.delta0, rs.delta0),
                                           (ra.delta1, rb.delta1, rs.delta1)]):
                if z != normalize_unit(x * y):
                    bad.append((name, i, a.descriptor, b.descriptor))
            checked += 1
    elapsed = time.perf_counter() - t0
    finish(7, "delta_i of a direct sum is the product (i = 0, 1)", not bad, elapsed, 300,
           f"{checked} pairs" + (f", first bad {bad[0]}" if bad else ""))


def test_criterion_08_algebra_oracle():
    t0 = time.perf_counter()
    rng = random.Random(20261016)
    failures = {}
    for _ in range(500):
        for key, good in snf_checks(random_poly_matrix(rng)).items():
            if not good:
                failures[key] = failures.get(key, 0) + 1
    elapsed = time.perf_counter() - t0
    finish(8, "SNF round trip, divisibility chain, fraction-field rank on 500 random matrices",
           not failures, elapsed, 120, f"failures {failures}" if failures else "")


def test_criterion_09_representation_search():
    t0 = time.perf_counter()
    got = {}
    for name in ("trefoil", "figure8"):
        P = pres(name)
        res = enumerate_perm_reps(P, 3, transpositions_only=True)
        oracle = brute_force(P, 3, transpositions_only=True)
        got[name] = (len(res), sum(map(is_surjective, res)),
                     [r.images for r in res] == oracle)
    elapsed = time.perf_counter() - t0
    ok = got["trefoil"] == (9, 6, True) and got["figure8"] == (3, 0, True)
    finish(9, "S3 transposition reps: trefoil 9/6, figure-8 3/0, equal to brute force",
           ok, elapsed, 10, str(got))


def test_criterion_10_norm_bounds():
    fresh()
    t0 = time.perf_counter()
    P1 = pres("knot_5_1")
    b51 = report(P1, trivial_rep(P1, 1)).norm_lower_bound
    P2 = pres("knot_5_2")
    fam, truncated = perm_family(P2, 5)
    rs = reports(P2, fam)
    bounds = [r.norm_lower_bound for r in rs if r.norm_lower_bound is not None]
    search = vanishing_search(P2, fam)
    ok = (b51 == 3 == 2 * CORPUS["knot_5_1"].genus - 2 + 1
          and not truncated and bounds and max(bounds) <= 1
          and thurston_lower_bound(rs) <= 1
          and search["result"] == NO_WITNESS and "witness" not in search)
    elapsed = time.perf_counter() - t0
    finish(10, "5_1 bound = 3; 5_2 bounds <= 1 with no vanishing witness", ok, elapsed, 300,
           f"5_2 family {len(fam)}, max bound {max(bounds) if bounds else None}, '{search['result']}'")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v", "-s"]))
