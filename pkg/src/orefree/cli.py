"""Command-line front end: problem files in, deterministic JSON out.

Every subcommand reads one problem file, runs a single pipeline, and
prints a JSON document to standard output; a one-line human summary goes
to standard error so scripts can consume stdout unfiltered.  Identical
inputs produce byte-identical output: the payload carries no timestamps,
and run metadata sits under a `meta` key that certificate digests never
see.

Exit codes: 0 success, 1 malformed input or bad usage, 2 structurally
inconsistent presentation, 3 configured resource bound exceeded, 4
internal invariant violation.  Every failure also emits JSON of the
shape {"error", "detail", "position"?} on standard output.
"""

import argparse
import json
import sys

from . import __version__
from .classify import classify_problem, normalize_presentation, ProblemSpec
from .errors import (
    ParseError, PresentationError, ResourceBoundExceeded, UsageError,
)
from .freeness import freeness_certify
from .problems import (
    parse_field_expr, parse_ore_expr, parse_problem, print_problem,
)
from .skew import delta_tower, orbit_analyze


def _build_parser():
    top = argparse.ArgumentParser(
        prog="orefree",
        description="exact certificates for Ore extension division rings")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    def with_problem(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("problem", help="path to a problem file, - for stdin")
        return p

    with_problem("classify", "route the presentation to a verdict")

    p = with_problem("freeness", "bounded word-independence certificate")
    p.add_argument("--b", required=True, metavar="EXPR",
                   help="witness element of the base field")
    p.add_argument("--max-len", type=int, default=3, metavar="L",
                   help="word length bound (default 3)")

    with_problem("normalize", "rewrite a mixed presentation as a pure one")

    p = with_problem("orbit", "iterate sigma on an element")
    p.add_argument("--elem", required=True, metavar="EXPR")
    p.add_argument("--bound", type=int, default=64, metavar="B",
                   help="iteration bound (default 64)")

    p = with_problem("tower", "iterate delta and watch subfield growth")
    p.add_argument("--elem", required=True, metavar="EXPR")
    p.add_argument("--depth", type=int, default=5, metavar="M",
                   help="tower depth (default 5)")

    p = with_problem("compute", "evaluate an Ore fraction expression")
    p.add_argument("--expr", required=True, metavar="EXPR",
                   help="expression in X, inv(...), and the generators")
    return top


def _read_problem(path):
    if path == "-":
        return parse_problem(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as fh:
        return parse_problem(fh.read())


def _run(args):
    """Dispatch to the pipeline; returns (payload dict, summary line)."""
    spec = _read_problem(args.problem)
    pair = spec.pair
    if args.command == "classify":
        verdict = classify_problem(spec)
        payload = verdict.to_json_dict()
        bits = [payload["kind"]]
        if verdict.theorem_tag:
            bits.append("(%s)" % verdict.theorem_tag)
        if verdict.witness is not None:
            bits.append("witness %s" % verdict.witness)
        if verdict.central_power is not None:
            bits.append("x^%d central" % verdict.central_power)
        return payload, "verdict: " + " ".join(bits)
    if args.command == "freeness":
        b = parse_field_expr(pair.ff, args.b)
        cert = freeness_certify(pair, b, args.max_len)
        return (cert.to_json_dict(),
                "certificate: %s, rank %d of %d words"
                % (cert.verdict, cert.rank, cert.word_count))
    if args.command == "normalize":
        pure, shift, report = normalize_presentation(pair)
        payload = {
            "shift": None if shift is None else str(shift),
            "report": report,
            "problem": print_problem(ProblemSpec(pure, spec.options)),
        }
        return payload, "normalize: " + report
    if args.command == "orbit":
        elem = parse_field_expr(pair.ff, args.elem)
        rep = orbit_analyze(pair.sigma, elem, args.bound)
        summary = "orbit: " + rep.kind
        if rep.period:
            summary += " period %d" % rep.period
        return rep.to_json_dict(), summary
    if args.command == "tower":
        elem = parse_field_expr(pair.ff, args.elem)
        rep = delta_tower(pair.delta, elem, args.depth)
        statuses = [lv.status for lv in rep.levels]
        return rep.to_json_dict(), "tower: " + ", ".join(statuses)
    assert args.command == "compute"
    value = parse_ore_expr(pair, args.expr)
    return ({"expr": args.expr, "value": str(value)},
            "compute: %s" % value)


def _emit(payload, command):
    payload = dict(payload)
    payload["meta"] = {"tool": "orefree", "version": __version__,
                       "command": command}
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def main(argv=None):
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help/--version and 2 for bad flags; the
        # latter is a usage error in this tool's code scheme
        if exc.code == 0:
            return 0
        _emit({"error": "UsageError", "detail": "invalid arguments"}, None)
        return 1
    try:
        payload, summary = _run(args)
    except ParseError as exc:
        doc = {"error": type(exc).__name__, "detail": str(exc)}
        if exc.line is not None:
            doc["position"] = {"line": exc.line, "col": exc.col}
        _emit(doc, args.command)
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except ResourceBoundExceeded as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)},
              args.command)
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except PresentationError as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)},
              args.command)
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (UsageError, OSError) as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)},
              args.command)
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except Exception as exc:
        _emit({"error": "InternalError",
               "detail": "%s: %s" % (type(exc).__name__, exc)},
              args.command)
        print("internal error: %s" % exc, file=sys.stderr)
        return 4
    _emit(payload, args.command)
    print(summary, file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
