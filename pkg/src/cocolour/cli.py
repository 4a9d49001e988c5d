"""Command-line surface: thin adapters over the library modules.

Every subcommand builds a JSON-serializable report whose payload comes
verbatim from the underlying module.  Exit codes distinguish outcomes so
shell pipelines can branch: 0 success, 1 negative verdict (pattern found,
not colourable, verification failed, not in class), 2 input error, 3 solver
budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time

from . import classify, gadgets, patterns, solvers, structure
from .graphs import (
    CodecError,
    GraphSpec,
    Term,
    dimacs_decode,
    dimacs_encode,
    edgelist_decode,
    edgelist_encode,
    graph6_decode,
    graph6_encode,
    make_named,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


# ---------------------------------------------------------------------------
# Pattern mini-language: "P5", "C7", "K4", "K1,3", "2P1+P3", "S1,2,3", "co(P6)"

_TERM_RE = re.compile(
    r"^(?P<count>\d+)?(?:"
    r"P(?P<path>\d+)|C(?P<cycle>\d+)|"
    r"K1,(?P<star>\d+)|K(?P<complete>\d+)|"
    r"S(?P<claw>\d+,\d+,\d+)"
    r")$"
)


def parse_pattern(text):
    """Build a graph from the pattern mini-language."""
    s = text.strip().replace(" ", "")
    if s.startswith("co(") and s.endswith(")"):
        return parse_pattern(s[3:-1]).complement()
    terms = []
    for chunk in s.split("+"):
        m = _TERM_RE.match(chunk)
        if m is None:
            raise ValueError(f"cannot parse pattern term {chunk!r} in {text!r}")
        count = int(m.group("count") or 1)
        if m.group("path"):
            term = Term("path", (int(m.group("path")),))
        elif m.group("cycle"):
            term = Term("cycle", (int(m.group("cycle")),))
        elif m.group("star"):
            term = Term("star", (int(m.group("star")),))
        elif m.group("complete"):
            term = Term("complete", (int(m.group("complete")),))
        else:
            arms = tuple(int(x) for x in m.group("claw").split(","))
            term = Term("claw", arms)
        terms.append((count, term))
    return make_named(GraphSpec(tuple(terms)))


# ---------------------------------------------------------------------------
# Graph file IO, dispatched on extension

_DECODERS = {".g6": graph6_decode, ".col": dimacs_decode}
_ENCODERS = {".g6": graph6_encode, ".col": dimacs_encode}


def load_graph(path):
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    for ext, decode in _DECODERS.items():
        if path.endswith(ext):
            return decode(text)
    return edgelist_decode(text)


def save_graph(g, path):
    encode = next(
        (enc for ext, enc in _ENCODERS.items() if path.endswith(ext)),
        edgelist_encode,
    )
    text = encode(g)
    if not text.endswith("\n"):
        text += "\n"
    with open(path, "w", encoding="ascii") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# JSON helpers


def _as_json(obj):
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, patterns.Embedding):
        return list(obj.mapping)
    if isinstance(obj, dict):
        return {str(k): _as_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_as_json(x) for x in obj]
    return str(obj)


def _classification_json(c):
    return {"verdict": c.verdict, "rule": c.rule, "witness": _as_json(c.witness)}


def _report_json(rep):
    return {
        "ok": rep.ok,
        "checks": [
            {"name": c.name, "ok": c.ok, "detail": _as_json(c.detail)}
            for c in rep.checks
        ],
    }


# ---------------------------------------------------------------------------
# Subcommand handlers; each returns (exit_code, result payload)


def _graphs_from_args(args):
    out = []
    for p in args.graph or []:
        out.append(load_graph(p))
    for spec in args.pattern or []:
        out.append(parse_pattern(spec))
    return out


def _cmd_classify(args):
    if args.mode == "kcol":
        if args.k is None or args.t is None:
            raise ValueError("--mode kcol needs --k and --t")
        return EXIT_OK, _classification_json(classify.classify_k_col_pt(args.k, args.t))
    gs = _graphs_from_args(args)
    if args.mode == "selfcomp-family":
        if not gs:
            raise ValueError("selfcomp-family needs at least one graph")
        return EXIT_OK, _classification_json(classify.classify_self_comp_family(gs))
    if len(gs) != 1:
        raise ValueError(f"--mode {args.mode} needs exactly one graph")
    fn = classify.classify_h_free if args.mode == "h-free" else classify.classify_h_coh
    return EXIT_OK, _classification_json(fn(gs[0]))


def _cmd_free_check(args):
    g = load_graph(args.graph)
    pats = [parse_pattern(spec) for spec in args.patterns]
    w = patterns.is_free(g, pats)
    payload = {
        "free": w.free,
        "pattern_index": w.pattern_index,
        "pattern": None if w.free else args.patterns[w.pattern_index],
        "embedding": _as_json(w.embedding),
    }
    return (EXIT_OK if w.free else EXIT_NEGATIVE), payload


def _cmd_gadget(args):
    if args.kind == "x3c":
        with open(args.instance, "r", encoding="ascii") as fh:
            inst = gadgets.X3CInstance.from_json(fh.read())
        gadget = gadgets.build_x3c_gadget(inst)
        report = gadgets.verify_x3c_gadget(gadget) if args.verify else None
    else:
        with open(args.instance, "r", encoding="ascii") as fh:
            sat = gadgets.SatInstance.from_dimacs(fh.read())
        nc = gadgets.catalog_nice()[args.nice]
        gadget = gadgets.build_huang_gadget(nc, sat)
        report = None
        if args.verify:
            names = gadgets.HUANG_FREENESS_PATTERNS[args.nice]
            report = gadgets.verify_huang_gadget(
                gadget, nc, [parse_pattern(p) for p in names], names
            )
    if args.out:
        save_graph(gadget.graph, args.out)
    payload = {
        "n": gadget.graph.n,
        "m": gadget.graph.edge_count,
        "graph6": graph6_encode(gadget.graph),
        "labels": _as_json(gadget.labels),
        "out": args.out,
        "verification": None if report is None else _report_json(report),
    }
    code = EXIT_OK if report is None or report.ok else EXIT_NEGATIVE
    return code, payload


def _cmd_solve(args):
    g = load_graph(args.graph)
    if args.task == "chi":
        chi, col = solvers.chromatic_number(g, args.budget)
        return EXIT_OK, {"chi": chi, "colouring": list(col.colours)}
    if args.task == "kcol":
        if args.k is None:
            raise ValueError("solve kcol needs --k")
        col = solvers.is_k_colourable(g, args.k, args.budget)
        if col is None:
            return EXIT_NEGATIVE, {"k": args.k, "colourable": False}
        return EXIT_OK, {
            "k": args.k,
            "colourable": True,
            "colouring": list(col.colours),
        }
    if args.task == "cliquecover":
        k, cover = solvers.clique_cover_number(g, args.budget)
        return EXIT_OK, {
            "clique_cover_number": k,
            "parts": [list(p) for p in cover.parts],
        }
    omega, clique = solvers.max_clique(g, args.budget)
    return EXIT_OK, {"omega": omega, "clique": list(clique)}


def _cmd_selfcomp(args):
    reps = patterns.enumerate_self_complementary(args.n)
    lines = [graph6_encode(g) for g in reps]
    return EXIT_OK, {"n": args.n, "count": len(lines), "graph6": lines}


def _cmd_structure(args):
    g = load_graph(args.graph)
    try:
        col, report = structure.colour_structured(g, args.budget)
    except structure.NotInClassError as exc:
        payload = {
            "in_class": False,
            "pattern_index": exc.witness.pattern_index,
            "embedding": _as_json(exc.witness.embedding),
        }
        return EXIT_NEGATIVE, payload
    payload = report.to_json()
    payload["in_class"] = True
    payload["colouring"] = list(col.colours)
    return EXIT_OK, payload


# ---------------------------------------------------------------------------
# Parser and entry points


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="cocolour",
        description="Colouring complexity toolkit for complement-closed classes",
    )
    parser.add_argument("--seed", type=int, default=None, help="echoed in the report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="complexity verdict for a class")
    p.add_argument(
        "--mode",
        required=True,
        choices=["h-free", "h-coh", "selfcomp-family", "kcol"],
    )
    p.add_argument("--graph", action="append", help="graph file (repeatable)")
    p.add_argument("--pattern", action="append", help="pattern spec (repeatable)")
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("free-check", help="induced-subgraph freeness test")
    p.add_argument("--graph", required=True)
    p.add_argument("--patterns", nargs="+", required=True)
    p.set_defaults(fn=_cmd_free_check)

    p = sub.add_parser("gadget", help="build a hardness gadget")
    p.add_argument("kind", choices=["x3c", "huang"])
    p.add_argument("--instance", required=True)
    p.add_argument("--nice", choices=["c7", "fig5"], default="c7")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out", help="also write the gadget graph to this file")
    p.set_defaults(fn=_cmd_gadget)

    p = sub.add_parser("solve", help="exact solvers")
    p.add_argument("task", choices=["chi", "kcol", "cliquecover", "clique"])
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--budget", type=float, default=None)
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("selfcomp", help="enumerate self-complementary graphs")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=_cmd_selfcomp)

    p = sub.add_parser("structure", help="structural colouring pipeline")
    p.add_argument("--graph", required=True)
    p.add_argument("--budget", type=float, default=None)
    p.set_defaults(fn=_cmd_structure)
    return parser


def run(argv):
    """Execute one command; returns (exit_code, report dict)."""
    report = {"command": list(argv), "seed": None, "elapsed": None, "result": None}
    parser = _build_parser()
    started = time.monotonic()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        report["error"] = "argument parsing failed"
        return (EXIT_OK if exc.code == 0 else EXIT_INPUT), report
    report["seed"] = args.seed
    try:
        code, payload = args.fn(args)
        report["result"] = payload
    except solvers.BudgetExceededError as exc:
        report["error"] = str(exc)
        code = EXIT_BUDGET
    except (CodecError, ValueError, OSError, json.JSONDecodeError) as exc:
        report["error"] = str(exc)
        code = EXIT_INPUT
    report["elapsed"] = round(time.monotonic() - started, 6)
    return code, report


def main(argv=None):
    code, report = run(sys.argv[1:] if argv is None else list(argv))
    if (
        code == EXIT_OK
        and report["command"]
        and "selfcomp" in report["command"][:2]
        and report["result"]
    ):
        for line in report["result"]["graph6"]:
            print(line)
    else:
        print(json.dumps(report, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
