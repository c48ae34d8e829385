"""Command-line front end.

Exit codes: 0 success / PASS, 1 certification FAIL, 2 input parse error,
3 invalid representation, 4 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import corpus as corpus_mod
from .config import SearchBudget
from .diagram import LinkDiagram, ParseError, read_pd, wirtinger
from .fox import GroupPresentation
from .invariants import (
    NO_WITNESS,
    NoBoundAvailable,
    WrongComponentCount,
    certify_genus1_fibered,
    hopf_audit,
    reports,
    split_rank_audit,
    thurston_lower_bound,
    trivial_link_audit,
    unknot_audit,
    vanishing_search,
)
from .reps import (
    InvalidRepresentation,
    enumerate_perm_reps,
    is_surjective,
    perm_to_matrix,
    read_rep,
    trivial_rep,
)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_REP, EXIT_BUDGET = 0, 1, 2, 3, 4
DEFAULT_BUDGET = SearchBudget().max_degree
DEFAULT_MAX_NODES = SearchBudget().max_nodes


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(pd: str) -> tuple[str, LinkDiagram, GroupPresentation]:
    path = Path(pd)
    if not path.exists():
        entries = corpus_mod.load_corpus()
        name = path.stem if path.suffix == ".pd" and path.parent == Path(".") else pd
        if name in entries:
            path = entries[name].pd_path
        else:
            raise _Exit(EXIT_PARSE, f"cannot read {pd}: no such file or corpus entry")
    try:
        d = read_pd(path)
    except ParseError as exc:
        raise _Exit(EXIT_PARSE, f"{path}: {exc.category}: {exc}") from None
    except OSError as exc:
        raise _Exit(EXIT_PARSE, f"cannot read {path}: {exc}") from None
    return str(pd), d, wirtinger(d)


def _emit(obj, as_json: bool = True):
    if as_json:
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")
    else:
        sys.stdout.write(str(obj) + "\n")


def _budget(args) -> SearchBudget:
    return SearchBudget(args.budget, args.max_nodes, args.distinct_up_to_conjugacy)


def cmd_invariants(args) -> int:
    source, d, P = _load(args.pd)
    truncated = False
    try:
        if args.perm_degree is not None:
            res = enumerate_perm_reps(
                P, args.perm_degree,
                surjective_only=args.surjective_only,
                transpositions_only=args.transpositions_only,
                distinct_up_to_conjugacy=args.distinct_up_to_conjugacy,
                max_nodes=args.max_nodes,
            )
            family = [perm_to_matrix(rho) for rho in res]
            truncated = res.truncated
        elif args.rep in (None, "trivial"):
            family = [trivial_rep(P, args.k)]
        else:
            text = Path(args.rep).read_text(encoding="utf-8")
            family = [read_rep(text, descriptor=f"file:{args.rep}").validate(P)]
    except InvalidRepresentation as exc:
        raise _Exit(EXIT_REP, f"invalid representation: {exc}") from None
    except OSError as exc:
        raise _Exit(EXIT_REP, f"cannot read representation: {exc}") from None
    out = reports(P, family)
    if args.json:
        doc = {
            "link": {"source": source, "m": P.m, "generators": P.g, "relators": len(P.relators)},
            "reports": [r.to_json() for r in out],
        }
        if truncated:
            doc["truncated"] = True
        _emit(doc)
    else:
        print(f"# {source}: m={P.m}, {P.g} generators, {len(P.relators)} relators")
        for r in out:
            tau = "undefined" if r.tau is None else f"({r.tau[0]})/({r.tau[1]})"
            print(f"{r.rep}\tk={r.k}\trank={r.rank}\tdelta0={r.delta0}\tdelta1={r.delta1}"
                  f"\ttorsion={r.torsion_delta}\ttau={tau}")
        if truncated:
            print("# search truncated")
    return EXIT_BUDGET if truncated else EXIT_OK


def cmd_search_reps(args) -> int:
    _, _, P = _load(args.pd)
    res = enumerate_perm_reps(
        P, args.degree,
        surjective_only=False,
        limit=args.limit,
        transpositions_only=args.transpositions_only,
        distinct_up_to_conjugacy=args.distinct_up_to_conjugacy,
        max_nodes=args.max_nodes,
    )
    surj = [rho for rho in res if is_surjective(rho)]
    shown = surj if args.surjective_only else list(res)
    doc = {
        "degree": args.degree,
        "total": len(res),
        "surjective": len(surj),
        "truncated": res.truncated,
        "nodes": res.nodes,
    }
    if args.list:
        doc["assignments"] = [str(rho) for rho in shown]
    if args.json:
        _emit(doc)
    else:
        print(f"total {doc['total']}")
        print(f"surjective {doc['surjective']}")
        print(f"truncated {str(res.truncated).lower()}")
        if args.list:
            for rho in shown:
                print(rho)
    return EXIT_BUDGET if res.truncated else EXIT_OK


CLAIMS = ("unknot", "trefoil-or-fig8", "hopf", "split:<s>", "trivial-link")


def cmd_certify(args) -> int:
    _, _, P = _load(args.pd)
    family, truncated = _budget(args).family(P)
    claim = args.claim
    try:
        if claim == "unknot":
            v = unknot_audit(P, family)
        elif claim == "trefoil-or-fig8":
            v = certify_genus1_fibered(P, family)
        elif claim == "hopf":
            v = hopf_audit(P, family)
        elif claim == "trivial-link":
            v = trivial_link_audit(P, family)
        elif claim.startswith("split:"):
            try:
                s = int(claim.split(":", 1)[1])
            except ValueError:
                raise _Exit(EXIT_PARSE, f"bad split claim {claim!r}") from None
            v = split_rank_audit(P, family, s)
        else:
            raise _Exit(EXIT_PARSE, f"unknown claim {claim!r}; expected one of {', '.join(CLAIMS)}")
    except WrongComponentCount as exc:
        raise _Exit(EXIT_PARSE, str(exc)) from None
    doc = {"claim": claim, **v.to_json(), "budget": args.budget, "partial": truncated}
    _emit(doc)
    if truncated:
        return EXIT_BUDGET
    return EXIT_OK if v.passed else EXIT_FAIL


def cmd_bound(args) -> int:
    _, _, P = _load(args.pd)
    family, truncated = _budget(args).family(P)
    rs = reports(P, family)
    try:
        bound = str(thurston_lower_bound(rs))
    except NoBoundAvailable:
        bound = None
    search = vanishing_search(P, family)
    doc = {
        "budget": args.budget,
        "family_size": len(family),
        "norm_lower_bound": bound,
        "genus_lower_bound": None if bound is None else str((Fraction(bound) + 2 - P.m) / 2),
        "vanishing": search["result"],
        "partial": truncated,
    }
    if "witness" in search:
        doc["witness"] = search["witness"]
    else:
        assert search["result"] == NO_WITNESS
    _emit(doc)
    return EXIT_BUDGET if truncated else EXIT_OK


def cmd_corpus(args) -> int:
    entries = corpus_mod.load_corpus()
    if args.action == "list":
        for name, e in entries.items():
            print(f"{name}\tm={e.m}\tgenus={e.genus}\tfibered={e.fibered}\t{e.notes}")
        return EXIT_OK
    if args.name not in entries:
        raise _Exit(EXIT_PARSE, f"no corpus entry named {args.name!r}")
    e = entries[args.name]
    if args.action == "path":
        print(e.pd_path)
    else:
        print(e.pd_path.read_text(encoding="utf-8"), end="")
        print(e.pd_path.with_name(f"{e.name}.meta.json").read_text(encoding="utf-8"), end="")
    return EXIT_OK


def _add_search_flags(p: argparse.ArgumentParser):
    p.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES,
                   help="search-node budget for permutation representations")
    p.add_argument("--distinct-up-to-conjugacy", action="store_true",
                   help="keep one representation per simultaneous-conjugacy class")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twistkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="twisted Alexander invariants for one link")
    p.add_argument("--pd", required=True, help="PD file (or corpus entry name)")
    p.add_argument("--rep", default=None, help="'trivial' or a representation file")
    p.add_argument("--k", type=int, default=1, help="dimension of the trivial representation")
    p.add_argument("--perm-degree", type=int, default=None,
                   help="use every permutation representation of this degree")
    p.add_argument("--transpositions-only", action="store_true")
    p.add_argument("--surjective-only", action="store_true")
    p.add_argument("--json", action="store_true")
    _add_search_flags(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("search-reps", help="enumerate homomorphisms to S_n")
    p.add_argument("--pd", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--transpositions-only", action="store_true")
    p.add_argument("--surjective-only", action="store_true", help="list only surjective ones")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--list", action="store_true", help="print the assignments")
    p.add_argument("--json", action="store_true")
    _add_search_flags(p)
    p.set_defaults(func=cmd_search_reps)

    p = sub.add_parser("certify", help="run a detection audit over trivial + permutation reps")
    p.add_argument("--pd", required=True)
    p.add_argument("--claim", required=True, help=" | ".join(CLAIMS))
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="maximal symmetric-group degree (default %(default)s)")
    _add_search_flags(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("bound", help="Thurston-norm lower bound and fibering obstruction search")
    p.add_argument("--pd", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    _add_search_flags(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("corpus", help="inspect the bundled corpus")
    p.add_argument("action", choices=("list", "show", "path"))
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "k", 1) < 1:
        parser.error("--k must be positive")
    if args.command in ("certify", "bound") and args.budget < 1:
        parser.error("--budget must be positive")
    if getattr(args, "max_nodes", 1) < 1:
        parser.error("--max-nodes must be positive")
    try:
        return args.func(args)
    except _Exit as exc:
        print(f"twistkit: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        if "TWISTKIT_THREADS" in str(exc):
            print(f"twistkit: {exc}", file=sys.stderr)
            return EXIT_PARSE
        raise


if __name__ == "__main__":
    sys.exit(main())
