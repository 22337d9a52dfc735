"""Command-line interface: ``posetmorse <command> FILE [options]``.

FILE may be a path, ``-`` for standard input, or the name of a bundled
fixture such as ``fig1``. The text report goes to standard output;
``--json PATH`` additionally writes the structured report (``-`` prints it
instead of the text). ``join`` and ``opposite`` print a ``.poset`` document
so they can be piped into another command.

Exit status: 0 accepted, 2 rejected, 1 error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import report as R
from .errors import PosetMorseError
from .fileformat import fixture_path, parse, parse_text
from .morse import PERMISSIVE, STRICT
from .simplicial import DEFAULT_BUDGET

COMMANDS = (
    "validate",
    "critical",
    "filtration",
    "relative-filtration",
    "homology",
    "descending-link",
    "hregular",
    "join",
    "opposite",
    "search",
    "exhaustive",
)


def load(source: str, stdin=None):
    if source == "-":
        return parse_text((stdin or sys.stdin).read())
    path = Path(source)
    if not path.exists() and fixture_path(source).exists():
        path = fixture_path(source)
    if not path.exists():
        raise PosetMorseError(f"no such file or fixture: {source}")
    return parse(path)


def run(command: str, documents: list, options: R.Options | None = None, point: str | None = None):
    """Run a command on parsed documents; returns ``(exit_code, report, text)``.

    ``text`` is the human-readable output: the YAML rendering of ``report``,
    or the serialized document for ``join`` and ``opposite``.
    """
    opts = options or R.Options()
    doc = documents[0]
    if command == "validate":
        code, rep = R.cmd_validate(doc, opts)
    elif command == "critical":
        code, rep = R.cmd_critical(doc, opts)
    elif command == "filtration":
        code, rep = R.cmd_filtration(doc, opts, relative=opts.relative)
    elif command == "relative-filtration":
        code, rep = R.cmd_filtration(doc, opts, relative=True)
    elif command == "homology":
        code, rep = R.cmd_homology(doc, opts)
    elif command == "descending-link":
        if point is None:
            raise PosetMorseError("descending-link needs a POINT argument")
        code, rep = R.cmd_descending_link(doc, point, opts)
    elif command == "hregular":
        code, rep = R.cmd_hregular(doc, opts)
    elif command == "opposite":
        code, _, rep = R.cmd_opposite(doc, opts)
        return code, rep, rep["text"]
    elif command == "join":
        if len(documents) != 2:
            raise PosetMorseError("join needs two documents")
        code, _, rep = R.cmd_join(documents[0], documents[1], opts)
        return code, rep, rep["text"]
    elif command == "search":
        code, rep = R.cmd_search(doc, opts)
    elif command == "exhaustive":
        code, rep = R.cmd_exhaustive(doc, opts)
    else:
        raise PosetMorseError(f"unknown command {command!r}")
    return code, rep, R.render_text(rep)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="posetmorse", description="Discrete Morse theory on finite posets.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", help="poset document, '-' for stdin, or a bundled fixture name")
    p.add_argument("extra", nargs="?", help="POINT for descending-link, second FILE for join")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--strict", dest="mode", action="store_const", const=STRICT,
                     help="condition (1) must be certified by a collapse (default)")
    grp.add_argument("--permissive", dest="mode", action="store_const", const=PERMISSIVE,
                     help="accept homology-trivial links that were not certified, with a warning")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="collapse search steps (default %(default)s)")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized search (default %(default)s)")
    p.add_argument("--restarts", type=int, default=32, help="greedy restarts for search (default %(default)s)")
    p.add_argument("--limit", type=int, default=12, help="element limit for exhaustive (default %(default)s)")
    p.add_argument("--json", metavar="PATH", help="write the structured report; '-' prints it instead of text")
    p.add_argument("--height", action="store_true", help="use the height function instead of file values")
    p.add_argument("--relative", action="store_true", help="use the A marks as the down-set")
    p.add_argument("--plot", metavar="PATH", help="render a filtration figure (filtration commands)")
    p.set_defaults(mode=STRICT)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    opts = R.Options(
        mode=args.mode,
        budget=args.budget,
        seed=args.seed,
        height=args.height,
        relative=args.relative,
        restarts=args.restarts,
        limit=args.limit,
        plot=args.plot,
    )
    try:
        docs = [load(args.file)]
        point = None
        if args.command == "join":
            if args.extra is None:
                raise PosetMorseError("join needs two files")
            docs.append(load(args.extra))
        elif args.command == "descending-link":
            point = args.extra
        code, rep, text = run(args.command, docs, opts, point)
    except PosetMorseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return R.EXIT_ERROR
    if args.json == "-":
        sys.stdout.write(R.render_json(rep))
    else:
        sys.stdout.write(text)
        if args.json:
            Path(args.json).write_text(R.render_json(rep), encoding="utf-8")
    return code


if __name__ == "__main__":
    sys.exit(main())
