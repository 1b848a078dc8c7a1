"""Command line interface: ``knotadj <subcommand> ...``.

Exit codes: 0 success, 1 a verification came out false, 2 usage or input
error.  The Alexander crossing cap comes from ``--alexander-cap``, else the
``ADJ_ALEX_CAP`` environment variable, else 40.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .adjacency import (ConstructionError, FamilyParams, obstruct_fibered_target,
                        obstruct_pair_adjacency, obstruct_unknot_adjacency, tower_extend,
                        verify_two_adjacency)
from .braid import (BraidParseError, UnconvertibleWord, format_braid_word,
                    normalize_to_odd_length, parse_braid_word)
from .diagram import ClosureError, NotAKnot, two_bridge_closure
from .invariants import alexander_cap_from_env, fingerprint
from .laurent import LaurentPolynomial
from .graph import build_family_graph, export_dot, export_json
from .twobridge import cf_to_fraction, NotAKnotFraction, word_to_fraction

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    alexander_cap: int = 40
    m_values: list[int] = field(default_factory=lambda: [-2, -1, 1, 2])
    n_values: list[int] = field(default_factory=lambda: [-2, -1, 1, 2])
    tower_depth: int = 0
    tower_params: FamilyParams = field(default_factory=lambda: FamilyParams(2, 2))
    dot_path: Path | None = None
    json_path: Path | None = None
    jobs: int = 1
    verbosity: int = 0

    def __post_init__(self):
        if self.alexander_cap < 0:
            raise UsageError("alexander cap must be >= 0")
        if 0 in self.m_values or 0 in self.n_values:
            raise UsageError("grid bounds must exclude 0")


def _word(text: str):
    try:
        return parse_braid_word(text)
    except (BraidParseError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _cap(args) -> int:
    return args.alexander_cap if args.alexander_cap is not None else alexander_cap_from_env()


def _nonzero_range(lo: int, hi: int) -> list[int]:
    vals = [x for x in range(lo, hi + 1) if x != 0]
    if not vals:
        raise UsageError(f"empty parameter range {lo}..{hi}")
    return vals


def cmd_parse(args) -> int:
    w = _word(args.word)
    print(json.dumps({"word": format_braid_word(w), "syllables": w.to_json(),
                      "length": len(w), "crossings": w.crossing_count}))
    return EXIT_OK


def cmd_invariants(args) -> int:
    w = _word(args.word)
    try:
        d = two_bridge_closure(w)
    except ClosureError as exc:
        raise UsageError(str(exc)) from exc
    fp = fingerprint(d, _cap(args))
    if args.json:
        print(json.dumps(fp.to_json()))
        return EXIT_OK
    print(f"word: {format_braid_word(w)}")
    print(f"crossings: {d.crossing_count}")
    print(f"components: {fp.component_count}")
    if not fp.is_knot:
        print("fraction: absent (link)")
        return EXIT_OK
    unknot = fp.fraction.p == 1
    print(f"fraction: {fp.fraction}" + (" (unknot)" if unknot else ""))
    print(f"determinant: {fp.determinant}")
    print(f"jones: {fp.jones}")
    print(f"alexander: {fp.alexander if fp.alexander is not None else 'absent (above cap)'}")
    print(f"genus: {fp.genus if fp.genus is not None else 'absent (above cap)'}")
    return EXIT_OK


def cmd_fraction(args) -> int:
    try:
        if args.cf:
            f = cf_to_fraction([int(x) for x in args.cf.split(",")])
        else:
            f = word_to_fraction(_word(args.word))
    except (NotAKnotFraction, UnconvertibleWord, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    print(json.dumps(f.to_json()) if args.json else str(f))
    return EXIT_OK


def cmd_closure(args) -> int:
    w = _word(args.word)
    try:
        d = two_bridge_closure(w)
    except ClosureError as exc:
        raise UsageError(str(exc)) from exc
    print(json.dumps({"components": d.n_components, "writhe": d.writhe(),
                      "pd": [list(c.edges) for c in d.crossings],
                      "signs": [c.sign for c in d.crossings]}))
    return EXIT_OK


def _odd_beta(text: str):
    w = _word(text)
    try:
        return normalize_to_odd_length(w)
    except UnconvertibleWord as exc:
        raise UsageError(str(exc)) from exc


def cmd_verify(args) -> int:
    beta = _odd_beta(args.beta)
    try:
        wit = verify_two_adjacency(beta, FamilyParams(args.m, args.n), _cap(args))
    except (ConstructionError, NotAKnot) as exc:
        raise UsageError(str(exc)) from exc
    print(json.dumps(wit.to_json()))
    for note in wit.notes:
        print(f"note: {note}", file=sys.stderr)
    ok = wit.is_adjacency if args.strict else wit.verdict
    return EXIT_OK if ok else EXIT_FALSE


def cmd_tower(args) -> int:
    beta = _odd_beta(args.beta)
    params = FamilyParams(args.m, args.n)
    cap = _cap(args)
    all_ok = True
    for level in range(args.depth):
        try:
            wit = verify_two_adjacency(beta, params, cap)
        except (ConstructionError, NotAKnot) as exc:
            print(json.dumps({"level": level, "error": str(exc)}))
            return EXIT_FALSE
        print(json.dumps({"level": level, "length": len(beta), "crossings": beta.crossing_count,
                          "base": str(wit.base_fingerprint.fraction),
                          "next": str(wit.family_fingerprint.fraction),
                          "verdict": wit.verdict, "is_adjacency": wit.is_adjacency}))
        all_ok &= wit.is_adjacency
        beta = tower_extend(beta, params)
    return EXIT_OK if all_ok else EXIT_FALSE


def cmd_graph(args) -> int:
    try:
        lines = Path(args.bases).read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read {args.bases}: {exc}") from exc
    bases = [_odd_beta(line) for line in lines if line.strip() and not line.startswith("#")]
    cfg = RunConfig(
        alexander_cap=_cap(args),
        m_values=_nonzero_range(*args.m_range),
        n_values=_nonzero_range(*args.n_range),
        tower_depth=args.depth,
        tower_params=FamilyParams(args.tower_m, args.tower_n),
        dot_path=Path(args.dot), json_path=Path(args.json_out), jobs=args.jobs,
    )
    g, report = build_family_graph(bases, cfg.m_values, cfg.n_values, cfg.tower_depth,
                                   cfg.tower_params, cfg.alexander_cap, cfg.jobs)
    cfg.dot_path.write_text(export_dot(g))
    cfg.json_path.write_text(export_json(g))
    summary = {
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "attempted": report.attempted,
        "failures": len(report.rejected),
        "distinct_fractions": len({v.fraction for v in g.vertices.values()}),
        "longest_path": g.longest_path_length() if g.vertices else 0,
        "rejected": [{"base": b, "m": m, "n": n, "reason": r} for b, m, n, r in report.rejected],
    }
    print(json.dumps(summary))
    return EXIT_OK


def cmd_obstruct(args) -> int:
    if args.kind == "unknot":
        if args.genus is None or args.n is None:
            raise UsageError("unknot obstruction needs --genus and --n")
        delta = LaurentPolynomial.from_json(json.loads(args.alexander)) if args.alexander else 1
        try:
            res = obstruct_unknot_adjacency(args.genus, args.n, delta).value
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    elif None in (args.genus, args.genus2) or (args.kind == "pair" and args.n is None):
        raise UsageError(f"{args.kind} obstruction needs --genus, --genus2"
                         + (" and --n" if args.kind == "pair" else ""))
    elif args.kind == "pair":
        res = obstruct_pair_adjacency(args.genus, args.genus2, args.n)
    else:
        res = obstruct_fibered_target(args.fibered, args.genus, args.genus2, args.isotopic)
    print(json.dumps({"kind": args.kind, "result": res}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="knotadj", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="count", default=0)
    p.add_argument("--alexander-cap", type=int, default=None)
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("parse")
    s.add_argument("word")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("invariants")
    s.add_argument("word")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("fraction")
    s.add_argument("word", nargs="?")
    s.add_argument("--cf", help="comma separated continued fraction terms")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_fraction)

    s = sub.add_parser("closure")
    s.add_argument("word")
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("verify")
    s.add_argument("--beta", required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--strict", action="store_true",
                   help="also require a knot family and crossing-circle sites")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("tower")
    s.add_argument("--beta", required=True)
    s.add_argument("--depth", type=int, default=3)
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--n", type=int, default=2)
    s.set_defaults(func=cmd_tower)

    s = sub.add_parser("graph")
    s.add_argument("--bases", required=True, help="file with one braid word per line")
    s.add_argument("--m-range", type=int, nargs=2, default=[-2, 2], metavar=("LO", "HI"))
    s.add_argument("--n-range", type=int, nargs=2, default=[-2, 2], metavar=("LO", "HI"))
    s.add_argument("--depth", type=int, default=0)
    s.add_argument("--tower-m", type=int, default=2)
    s.add_argument("--tower-n", type=int, default=2)
    s.add_argument("--dot", default="gamma2.dot")
    s.add_argument("--json-out", default="gamma2.json")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("obstruct")
    s.add_argument("kind", choices=["unknot", "pair", "fibered"])
    s.add_argument("--genus", type=int)
    s.add_argument("--genus2", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--alexander", help='JSON term list, e.g. \'["1*t^-1","-1*t^0","1*t^1"]\'')
    s.add_argument("--fibered", action="store_true")
    s.add_argument("--isotopic", action="store_true")
    s.set_defaults(func=cmd_obstruct)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2))
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
