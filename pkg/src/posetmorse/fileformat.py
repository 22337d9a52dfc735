"""Line-oriented ``.poset`` documents.

::

    # name: fig1                 metadata comments (optional)
    p <id> [f=<rational>]        declare an element, optionally with a Morse value
    rel <a> <b>                  a < b (any pair of the strict order)
    m <a> <b>                    matching edge on the cover a < b
    A <id> [<id> ...]            members of the down-set for relative mode

Everything after ``#`` is a comment. Morse values are parsed exactly as
integers, fractions ``a/b`` or decimals.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .core import Poset
from .errors import CycleDetected, NotADownSet, NotAMatching, ParseError, ValidationError
from .morse import Matching, MorseFunction, check_matching, validate_function

META_KEYS = ("name", "source")


@dataclass
class PosetDocument:
    poset: Poset
    values: dict[str, Fraction] = field(default_factory=dict)
    matching: list[tuple[str, str]] = field(default_factory=list)
    down_set: list[str] | None = None
    name: str = ""
    source: str = ""

    @property
    def has_values(self) -> bool:
        return bool(self.values)

    def function(self) -> MorseFunction:
        return MorseFunction(dict(self.values))

    def morse_matching(self) -> Matching:
        return Matching.of(self.matching)

    def __eq__(self, other):
        if not isinstance(other, PosetDocument):
            return NotImplemented
        return (
            self.poset == other.poset
            and self.values == other.values
            and set(self.matching) == set(other.matching)
            and (None if self.down_set is None else set(self.down_set))
            == (None if other.down_set is None else set(other.down_set))
            and self.name == other.name
            and self.source == other.source
        )


def _split(line: str) -> tuple[str, str | None]:
    if "#" in line:
        i = line.index("#")
        return line[:i], line[i + 1:]
    return line, None


def parse_text(text: str) -> PosetDocument:
    elements: list[str] = []
    declared: dict[str, int] = {}
    values: dict[str, Fraction] = {}
    pairs: list[tuple[str, str]] = []
    matching: list[tuple[str, str]] = []
    down: list[str] | None = None
    meta = dict.fromkeys(META_KEYS, "")
    pending: list[tuple[int, int, str]] = []  # identifiers to check after all declarations

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, comment = _split(raw)
        if comment is not None and not body.strip():
            key, sep, val = comment.strip().partition(":")
            if sep and key.strip() in META_KEYS:
                meta[key.strip()] = val.strip()
        tokens = []
        pos = 0
        for tok in body.split():
            pos = body.index(tok, pos)
            tokens.append((tok, pos + 1))
            pos += len(tok)
        if not tokens:
            continue
        head, col = tokens[0]
        args = tokens[1:]
        if head == "p":
            if not 1 <= len(args) <= 2:
                raise ParseError("expected 'p <id> [f=<value>]'", lineno, col)
            ident, icol = args[0]
            if ident in declared:
                raise ParseError(f"element {ident!r} already declared on line {declared[ident]}", lineno, icol)
            declared[ident] = lineno
            elements.append(ident)
            if len(args) == 2:
                tok, tcol = args[1]
                if not tok.startswith("f="):
                    raise ParseError(f"unexpected token {tok!r}", lineno, tcol)
                try:
                    values[ident] = Fraction(tok[2:])
                except (ValueError, ZeroDivisionError):
                    raise ParseError(f"bad rational literal {tok[2:]!r}", lineno, tcol + 2) from None
        elif head in ("rel", "m"):
            if len(args) != 2:
                raise ParseError(f"expected '{head} <a> <b>'", lineno, col)
            pending.extend((lineno, c, t) for t, c in args)
            pair = (args[0][0], args[1][0])
            (pairs if head == "rel" else matching).append(pair)
        elif head == "A":
            if down is None:
                down = []
            pending.extend((lineno, c, t) for t, c in args)
            down.extend(t for t, _ in args)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, col)

    for lineno, col, ident in pending:
        if ident not in declared:
            raise ParseError(f"undeclared element {ident!r}", lineno, col)
    try:
        X = Poset.from_relations(elements, pairs)
    except CycleDetected as exc:
        raise ValidationError(str(exc)) from None
    doc = PosetDocument(X, values, matching, down, meta["name"], meta["source"])
    validate_document(doc)
    return doc


def validate_document(doc: PosetDocument) -> None:
    X = doc.poset
    relative = doc.down_set
    if relative is not None and not X.is_down_set(relative):
        raise ValidationError("the A marks do not form a down-set")
    try:
        check_matching(X, doc.morse_matching(), relative)
    except (NotAMatching, NotADownSet) as exc:
        raise ValidationError(str(exc)) from None
    if doc.values:
        domain = [x for x in X.elements if relative is None or x not in set(relative)]
        missing = [x for x in domain if x not in doc.values]
        if missing:
            raise ValidationError("Morse values missing for " + ", ".join(missing))
        ok, bad = validate_function(X, doc.function(), relative)
        if not ok:
            raise ValidationError(f"values are not a Morse function: f({bad[0]}) >= f({bad[1]})")


def parse(source) -> PosetDocument:
    """Parse a path (``str`` or :class:`~pathlib.Path`) or literal document text."""
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source and os.path.exists(source)):
        return parse_text(Path(source).read_text(encoding="utf-8"))
    return parse_text(source)


def serialize(doc: PosetDocument) -> str:
    """Canonical text: metadata, elements, covers, matching and down-set in display order."""
    X = doc.poset
    lines = []
    for key in META_KEYS:
        val = getattr(doc, key)
        if val:
            lines.append(f"# {key}: {val}")
    for x in X.elements:
        lines.append(f"p {x} f={doc.values[x]}" if x in doc.values else f"p {x}")
    for a, b in X.sorted_covers():
        lines.append(f"rel {a} {b}")
    for a, b in sorted(doc.matching, key=lambda e: (X.index[e[0]], X.index[e[1]])):
        lines.append(f"m {a} {b}")
    if doc.down_set is not None:
        lines.append(" ".join(["A"] + X.sorted(doc.down_set)))
    return "\n".join(lines) + "\n"


FIXTURE_DIR = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    stem = name[:-6] if name.endswith(".poset") else name
    return FIXTURE_DIR / f"{stem}.poset"


def fixture_names() -> list[str]:
    return sorted(p.stem for p in FIXTURE_DIR.glob("*.poset"))


def load_fixture(name: str) -> PosetDocument:
    return parse(fixture_path(name))
