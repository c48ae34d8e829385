#!/usr/bin/env python3
"""Count homomorphisms to S_n per degree, with search cost, for a few knots."""

import argparse
import time
from dataclasses import dataclass

from twistkit.corpus import load_corpus
from twistkit.reps import enumerate_perm_reps, is_surjective


@dataclass
class GrowthConfig:
    names: tuple[str, ...] = ("trefoil", "figure8", "knot_5_1", "knot_5_2")
    max_degree: int = 5
    max_nodes: int = 10**6


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--names", nargs="*")
    ap.add_argument("--max-degree", type=int, default=GrowthConfig.max_degree)
    a = ap.parse_args(argv)
    cfg = GrowthConfig(tuple(a.names) if a.names else GrowthConfig.names, a.max_degree)
    corpus = load_corpus()
    print("name\tdegree\ttotal\tsurjective\tclasses\tnodes\tseconds")
    for name in cfg.names:
        P = corpus[name].presentation()
        for n in range(2, cfg.max_degree + 1):
            t0 = time.perf_counter()
            res = enumerate_perm_reps(P, n, max_nodes=cfg.max_nodes)
            classes = enumerate_perm_reps(P, n, max_nodes=cfg.max_nodes, distinct_up_to_conjugacy=True)
            surj = sum(map(is_surjective, res))
            dt = time.perf_counter() - t0
            flag = "*" if res.truncated else ""
            print(f"{name}\t{n}\t{len(res)}{flag}\t{surj}\t{len(classes)}\t{res.nodes}\t{dt:.2f}")


if __name__ == "__main__":
    main()
