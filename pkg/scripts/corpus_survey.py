#!/usr/bin/env python3
"""Tabulate twisted invariants over the permutation family for every corpus entry.

    python3 scripts/corpus_survey.py --max-degree 4 --out survey.json
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from twistkit.config import SearchBudget
from twistkit.corpus import load_corpus
from twistkit.invariants import NO_WITNESS, reports, vanishing_search


@dataclass
class SurveyConfig:
    budget: SearchBudget = field(default_factory=SearchBudget)
    names: tuple[str, ...] = ()
    out: str | None = None


def survey_entry(entry, budget: SearchBudget) -> dict:
    P = entry.presentation()
    t0 = time.perf_counter()
    family, truncated = budget.family(P)
    rs = reports(P, family)
    bounds = [r.norm_lower_bound for r in rs if r.norm_lower_bound is not None]
    search = vanishing_search(P, family)
    return {
        "name": entry.name,
        "m": P.m,
        "generators": P.g,
        "family_size": len(family),
        "truncated": truncated,
        "classical_delta1": str(rs[0].delta1),
        "min_rank_over_k": min(r.rank / r.k for r in rs),
        "max_norm_bound": str(max(bounds)) if bounds else None,
        "known_norm": entry.thurston_norm,
        "vanishing_witness": search["result"] != NO_WITNESS,
        "seconds": round(time.perf_counter() - t0, 3),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=4)
    ap.add_argument("--max-nodes", type=int, default=10**6)
    ap.add_argument("--names", nargs="*", default=())
    ap.add_argument("--out")
    a = ap.parse_args(argv)
    cfg = SurveyConfig(SearchBudget(a.max_degree, a.max_nodes), tuple(a.names), a.out)

    corpus = load_corpus()
    rows = [survey_entry(corpus[n], cfg.budget) for n in (cfg.names or sorted(corpus))]
    cols = ["name", "m", "family_size", "classical_delta1", "min_rank_over_k",
            "max_norm_bound", "known_norm", "vanishing_witness", "seconds"]
    print("\t".join(cols))
    for row in rows:
        print("\t".join(str(row[c]) for c in cols))
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2)


if __name__ == "__main__":
    main()
