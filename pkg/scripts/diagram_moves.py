#!/usr/bin/env python3
"""Check that invariants survive random relabelings and Reidemeister I curls.

Representations are carried across each curl along the map from new edges to
old ones; any mismatch is printed and makes the script exit nonzero.
"""

import argparse
import random
import sys
from dataclasses import dataclass

from twistkit.corpus import load_corpus
from twistkit.diagram import add_kink, generator_of_arc, relabel, wirtinger
from twistkit.invariants import report
from twistkit.reps import MatrixRep, enumerate_perm_reps, perm_to_matrix


@dataclass
class MovesConfig:
    trials: int = 20
    degree: int = 3
    seed: int = 0


def transport(alpha, d_old, d_new, origin):
    old, new = generator_of_arc(d_old), generator_of_arc(d_new)
    images = [None] * (max(new.values()) + 1)
    for arc, j in new.items():
        images[j] = alpha.images[old[origin.get(arc, arc)]]
    return MatrixRep(alpha.k, tuple(images), alpha.descriptor)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=MovesConfig.trials)
    ap.add_argument("--degree", type=int, default=MovesConfig.degree)
    ap.add_argument("--seed", type=int, default=MovesConfig.seed)
    a = ap.parse_args(argv)
    cfg = MovesConfig(a.trials, a.degree, a.seed)
    rng = random.Random(cfg.seed)
    corpus = load_corpus()
    names = [n for n, e in corpus.items() if e.diagram().crossings]
    mismatches = 0
    for trial in range(cfg.trials):
        name = rng.choice(names)
        d = corpus[name].diagram()
        P = wirtinger(d)
        n = d.arc_count - d.free_circles
        labels = list(range(1, n + 1))
        rng.shuffle(labels)
        d_rel = relabel(d, dict(zip(range(1, n + 1), labels)))
        P_rel = wirtinger(d_rel)
        d_kink, origin = add_kink(d, rng.randint(1, n), rng.choice((1, -1)))
        P_kink = wirtinger(d_kink)

        ref = sorted((report(P, perm_to_matrix(r)).invariants() for r in enumerate_perm_reps(P, cfg.degree)), key=str)
        rel = sorted((report(P_rel, perm_to_matrix(r)).invariants()
                      for r in enumerate_perm_reps(P_rel, cfg.degree)), key=str)
        ok = ref == rel
        for r in enumerate_perm_reps(P, cfg.degree):
            alpha = perm_to_matrix(r)
            beta = transport(alpha, d, d_kink, origin).validate(P_kink)
            ok &= report(P_kink, beta).invariants() == report(P, alpha).invariants()
        mismatches += not ok
        print(f"trial {trial:3d}  {name:16s} {'ok' if ok else 'MISMATCH'}")
    print(f"{cfg.trials - mismatches}/{cfg.trials} trials consistent")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
