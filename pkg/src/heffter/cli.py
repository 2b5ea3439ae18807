"""Command line interface.

Subcommands::

    heffter construct margossian --n 4
    heffter construct net --n 8
    heffter construct plain --m 6 --n 2
    heffter construct trivial --v 2 --r 3
    heffter construct star --heffter LEFT.json --plain RIGHT.json
    heffter construct pipeline --l 1 --m 2 --n 1
    heffter verify INPUT [--shiftable] [--kind KIND]
    heffter search --v 8 --k 4 --r 2 [--budget 60s] [--node-limit N] [--mode first|count]
    heffter render INPUT [--format doc|pretty]

Documents go to stdout unless --output is given; search statistics go to
stderr so the document stays parseable.  INPUT may be a path or ``-`` for
stdin.

Exit codes: 0 success; 1 a verified invariant failed; 2 parameter or
parse error; 3 internal construction fault; 4 search exhausted with no
solution; 5 search budget or node limit exceeded.
"""

from __future__ import annotations

import argparse
import re
import sys

from .compose import pipeline_space, plain_space_3, star_compose, trivial_space
from .core import ConstructionFault, ParameterError
from .documents import (
    KIND_HEFFTER,
    KIND_PLAIN,
    KIND_SQUARE,
    DocumentError,
    SpaceDocument,
    canonical_document,
    document_for_plain,
    document_for_space,
    document_for_square,
    document_report,
    load_document,
    plain_from_document,
    save_document,
    space_from_document,
)
from .magic import margossian_square
from .netbuild import heffter_net
from .search import SearchMode, SearchProblem, SearchStatus, search_heffter_space

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_FAULT = 3
EXIT_EXHAUSTED = 4
EXIT_BUDGET = 5

_KIND_OF_FLAG = {
    "heffter_space": KIND_HEFFTER,
    "plain_space": KIND_PLAIN,
    "square": KIND_SQUARE,
    "margossian": KIND_SQUARE,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:  # argparse exits on --help (0) and usage errors (2)
        return int(err.code or 0)
    try:
        return args.func(args)
    except (ParameterError, DocumentError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ConstructionFault as err:
        print(f"internal fault: {err}", file=sys.stderr)
        return EXIT_FAULT
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heffter", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    construct = sub.add_parser("construct", help="build an object and emit its document")
    target = construct.add_subparsers(dest="target", required=True)

    p = target.add_parser("margossian", help="pandiagonal magic square with conjugate sums")
    p.add_argument("--n", type=int, required=True, help="order, a positive multiple of 4")
    _output_options(p)
    p.set_defaults(func=_cmd_margossian)

    p = target.add_parser("net", help="shiftable (n^2, n; 3) Heffter space")
    p.add_argument("--n", type=int, required=True, help="order, a positive multiple of 4")
    _output_options(p)
    p.set_defaults(func=_cmd_net)

    p = target.add_parser("plain", help="(mn, n; 3) plain space on an n x m grid")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _output_options(p)
    p.set_defaults(func=_cmd_plain)

    p = target.add_parser("trivial", help="(v, 1; r) singleton space")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    _output_options(p)
    p.set_defaults(func=_cmd_trivial)

    p = target.add_parser("star", help="compose a shiftable space with a plain space")
    p.add_argument("--heffter", required=True, metavar="PATH", help="heffter_space document")
    p.add_argument("--plain", required=True, metavar="PATH", help="plain_space document")
    _output_options(p)
    p.set_defaults(func=_cmd_star)

    p = target.add_parser("pipeline", help="shiftable (16 l^2 m n, 4 l n; 3) space")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _output_options(p)
    p.set_defaults(func=_cmd_pipeline)

    p = sub.add_parser("verify", help="check every invariant of a document")
    p.add_argument("input", help="document path, or - for stdin")
    p.add_argument("--shiftable", action="store_true", help="also require the k/2-positives condition")
    p.add_argument("--kind", choices=sorted(_KIND_OF_FLAG), help="expected kind; margossian runs the full magic-square check")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("search", help="backtracking search for a shiftable space")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--budget", default="60s", help="wall-clock budget, e.g. 45, 60s, 500ms, 30m")
    p.add_argument("--node-limit", type=int, default=None)
    p.add_argument("--mode", choices=["first", "count"], default="first")
    _output_options(p)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("render", help="re-emit a document (canonical doc or pretty text)")
    p.add_argument("input", help="document path, or - for stdin")
    _output_options(p, default_format="pretty")
    p.set_defaults(func=_cmd_render)

    return parser


def _output_options(p: argparse.ArgumentParser, default_format: str = "doc") -> None:
    p.add_argument("--output", metavar="PATH", default=None, help="write here instead of stdout")
    p.add_argument("--format", choices=["doc", "pretty"], default=default_format)


# ---------------------------------------------------------------------------
# commands


def _cmd_margossian(args) -> int:
    doc = document_for_square(margossian_square(args.n), provenance=f"margossian:{args.n}")
    return _emit(doc, args)


def _cmd_net(args) -> int:
    return _emit(document_for_space(heffter_net(args.n)), args)


def _cmd_plain(args) -> int:
    return _emit(document_for_plain(plain_space_3(args.m, args.n)), args)


def _cmd_trivial(args) -> int:
    return _emit(document_for_plain(trivial_space(args.v, args.r)), args)


def _cmd_star(args) -> int:
    left = space_from_document(load_document(_read(args.heffter)))
    right = plain_from_document(load_document(_read(args.plain)))
    return _emit(document_for_space(star_compose(left, right)), args)


def _cmd_pipeline(args) -> int:
    return _emit(document_for_space(pipeline_space(args.l, args.m, args.n)), args)


def _cmd_verify(args) -> int:
    doc = load_document(_read(args.input))
    if args.kind is not None and doc.kind != _KIND_OF_FLAG[args.kind]:
        raise ParameterError(f"expected a {_KIND_OF_FLAG[args.kind]} document, got {doc.kind}")
    report = document_report(
        doc,
        require_shiftable=args.shiftable,
        margossian=args.kind == "margossian",
    )
    print(report)
    return EXIT_OK if report.ok else EXIT_INVALID


def _cmd_search(args) -> int:
    problem = SearchProblem(
        v=args.v,
        k=args.k,
        r=args.r,
        time_budget=_parse_budget(args.budget),
        node_limit=args.node_limit,
        mode=SearchMode.FIRST_SOLUTION if args.mode == "first" else SearchMode.COUNT_UP_TO_LIMIT,
    )
    outcome = search_heffter_space(problem)
    print(
        f"status={outcome.status.value} nodes={outcome.nodes_explored} "
        f"elapsed={outcome.elapsed:.3f}s solutions={outcome.solutions_found} "
        f"best_depth={outcome.best_depth}",
        file=sys.stderr,
    )
    if outcome.solution is not None:
        _emit(document_for_space(outcome.solution), args)
    if outcome.status is SearchStatus.FOUND:
        return EXIT_OK
    if outcome.status is SearchStatus.EXHAUSTED_NO_SOLUTION:
        return EXIT_EXHAUSTED
    return EXIT_BUDGET


def _cmd_render(args) -> int:
    doc = load_document(_read(args.input))
    return _emit(canonical_document(doc) if args.format == "doc" else doc, args)


# ---------------------------------------------------------------------------
# input/output helpers


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(doc: SpaceDocument, args) -> int:
    text = save_document(doc) if args.format == "doc" else render_pretty(doc)
    if args.output is None:
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


def render_pretty(doc: SpaceDocument) -> str:
    """Human-readable text: an aligned grid for squares, classes of blocks
    for spaces."""
    if doc.kind == KIND_SQUARE:
        rows = doc.payload["rows"]
        width = max(len(str(x)) for row in rows for x in row)
        return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in rows) + "\n"
    p = doc.parameters
    if doc.kind == KIND_HEFFTER:
        tag = "shiftable " if p["shiftable"] else ""
        lines = [f"{tag}heffter_space (v={p['v']}, k={p['k']}, r={p['r']})"]
        classes = doc.payload["classes"]
    else:
        lines = [f"plain_space (w={p['w']}, n={p['n']}, r={p['r']})"]
        classes = doc.payload["classes"]
    for ci, cls in enumerate(classes, start=1):
        lines.append(f"class {ci}:")
        for block in cls:
            lines.append("  {" + ", ".join(str(x) for x in block) + "}")
    return "\n".join(lines) + "\n"


_BUDGET_RE = re.compile(r"^(\d+(?:\.\d+)?)(ms|s|m|h)?$")


def _parse_budget(text: str) -> float:
    match = _BUDGET_RE.match(text.strip())
    if not match:
        raise ParameterError(f"cannot parse budget {text!r}; use forms like 45, 60s, 500ms, 30m")
    value = float(match.group(1))
    unit = match.group(2) or "s"
    return value * {"ms": 0.001, "s": 1.0, "m": 60.0, "h": 3600.0}[unit]


if __name__ == "__main__":
    raise SystemExit(main())
