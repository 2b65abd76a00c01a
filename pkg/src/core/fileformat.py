"""
Line-oriented text formats for algebras and spaces.

An algebra file::

    algebra S3 profile Sugihara
    elements -1 0 1
    covers -1<0 0<1
    unit 0
    neg 1 0 -1
    mult -1: -1 -1 1
    ...

A space file starts with ``space <name> flavor <F>`` and lists ``points``,
``covers``, ``designated``, ``top``, ``Q``, ``prime``, ``R`` and ``I``.
Parsing builds the structure without validating it; callers decide whether
a failed axiom is an error or a report.
"""
import logging
from pathlib import Path

import numpy as np

from .algebra import BINARY_OPS, FiniteAlgebra, Profile, lattice_tables
from .exceptions import ConfigurationError, ParseError, WorkbenchError
from .poset import FinitePoset, bits_of, members, poset_from_covers
from .reflection import RelevantSpace
from .spaces import Flavor, StructuredSpace

logger = logging.getLogger(__name__)

ALGEBRA_KEYS = ("elements", "covers", "unit", "const", "neg", "mult", "arrow")
SPACE_KEYS = ("points", "covers", "designated", "top", "Q", "prime", "R", "I")
RELEVANT = "relevant"


class _Lines:
    """Tokenised, comment-free lines with their 1-based numbers."""

    def __init__(self, text: str) -> None:
        self.rows = []
        for no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                self.rows.append((no, line.split()))

    def header(self, keyword: str) -> tuple[int, list[str]]:
        if not self.rows:
            raise ParseError("empty file")
        no, tokens = self.rows[0]
        if tokens[0] != keyword:
            raise ParseError(f"expected '{keyword} <name> ...' header", no)
        return no, tokens


def _resolve(names: list[str], token: str, no: int) -> int:
    try:
        return names.index(token)
    except ValueError:
        raise ParseError(f"unknown element {token!r}", no) from None


def _cover_pairs(tokens: list[str], no: int) -> list[tuple[str, str]]:
    pairs = []
    for token in tokens:
        lower, sep, upper = token.partition("<")
        if not sep or not lower or not upper:
            raise ParseError(f"cover {token!r} is not of the form a<b", no)
        pairs.append((lower, upper))
    return pairs


def _build_poset(names: list[str], covers: list[tuple[str, str, int]]) -> FinitePoset:
    for lower, upper, no in covers:
        _resolve(names, lower, no)
        _resolve(names, upper, no)
    return poset_from_covers(names, [(a, b) for a, b, _ in covers])


def _row(names: list[str], tokens: list[str], no: int, what: str) -> list[int]:
    if len(tokens) != len(names):
        raise ParseError(f"{what} row has {len(tokens)} entries, expected {len(names)}", no)
    return [_resolve(names, t, no) for t in tokens]


def parse_algebra(text: str) -> FiniteAlgebra:
    """Parse an algebra file.

    Raises:
        ParseError: Malformed input, with the offending line number.
    """
    lines = _Lines(text)
    no, head = lines.header("algebra")
    if len(head) != 4 or head[2] != "profile":
        raise ParseError("header must read 'algebra <name> profile <profile>'", no)
    name = head[1]
    try:
        profile = Profile.parse(head[3])
    except ConfigurationError as e:
        raise ParseError(str(e), no) from None

    names: list[str] | None = None
    covers: list[tuple[str, str, int]] = []
    unit = None
    constants: dict[str, int] = {}
    neg = None
    tables: dict[str, dict[int, list[int]]] = {"mult": {}, "arrow": {}}

    for no, tokens in lines.rows[1:]:
        key, rest = tokens[0], tokens[1:]
        if key not in ALGEBRA_KEYS:
            raise ParseError(f"unknown key {key!r}", no)
        if key == "elements":
            if names is not None:
                raise ParseError("elements given twice", no)
            names = rest
            continue
        if names is None:
            raise ParseError(f"'{key}' before 'elements'", no)
        if key == "covers":
            covers += [(a, b, no) for a, b in _cover_pairs(rest, no)]
        elif key == "unit":
            if len(rest) != 1:
                raise ParseError("unit takes one element", no)
            unit = _resolve(names, rest[0], no)
        elif key == "const":
            if len(rest) != 2 or rest[0] not in ("f", "bot", "top"):
                raise ParseError("const takes f|bot|top and one element", no)
            constants[rest[0]] = _resolve(names, rest[1], no)
        elif key == "neg":
            neg = _row(names, rest, no, "neg")
        else:
            if not rest or not rest[0].endswith(":"):
                raise ParseError(f"{key} row must start with '<element>:'", no)
            row_of = _resolve(names, rest[0][:-1], no)
            tables[key][row_of] = _row(names, rest[1:], no, key)

    if names is None:
        raise ParseError("missing 'elements' line")
    try:
        poset = _build_poset(names, covers)
        meet, join = lattice_tables(poset)
    except ParseError:
        raise
    except WorkbenchError as e:
        raise ParseError(str(e)) from e

    full = {}
    for key in ("mult", "arrow"):
        rows = tables[key]
        if not rows:
            full[key] = None
            continue
        missing = [names[i] for i in range(len(names)) if i not in rows]
        if missing:
            raise ParseError(f"{key} table lacks the row for {missing[0]!r}")
        full[key] = np.array([rows[i] for i in range(len(names))], dtype=np.intp)

    try:
        return FiniteAlgebra(
            poset,
            meet,
            join,
            profile=profile,
            name=name,
            mult=full["mult"],
            arrow=full["arrow"],
            unit=unit,
            neg=neg,
            constants=constants,
        )
    except WorkbenchError as e:
        raise ParseError(str(e)) from e


def _parse_space_header(lines: _Lines) -> tuple[str, str]:
    no, head = lines.header("space")
    if len(head) != 4 or head[2] != "flavor":
        raise ParseError("header must read 'space <name> flavor <flavor>'", no)
    flavor = head[3]
    if flavor != RELEVANT and flavor not in {f.value for f in Flavor}:
        raise ParseError(f"unknown flavor {flavor!r}", no)
    return head[1], flavor


def parse_space(text: str) -> StructuredSpace | RelevantSpace:
    """Parse a space file into a structured or relevant space.

    Raises:
        ParseError: Malformed input, with the offending line number.
    """
    lines = _Lines(text)
    name, flavor = _parse_space_header(lines)
    names: list[str] | None = None
    covers: list[tuple[str, str, int]] = []
    designated: list[int] = []
    top = None
    q_pairs: list[tuple[int, int]] | None = None
    prime = None
    triples: list[tuple[int, int, int]] = []
    in_i: list[int] = []

    for no, tokens in lines.rows[1:]:
        key, rest = tokens[0], tokens[1:]
        if key not in SPACE_KEYS:
            raise ParseError(f"unknown key {key!r}", no)
        if key == "points":
            if names is not None:
                raise ParseError("points given twice", no)
            names = rest
            continue
        if names is None:
            raise ParseError(f"'{key}' before 'points'", no)
        if key == "covers":
            covers += [(a, b, no) for a, b in _cover_pairs(rest, no)]
        elif key == "designated":
            designated += [_resolve(names, t, no) for t in rest]
        elif key == "top":
            if len(rest) != 1:
                raise ParseError("top takes one point", no)
            top = _resolve(names, rest[0], no)
        elif key == "Q":
            q_pairs = q_pairs or []
            for token in rest:
                x, sep, y = token.partition("~")
                if not sep:
                    raise ParseError(f"Q entry {token!r} is not of the form x~y", no)
                q_pairs.append((_resolve(names, x, no), _resolve(names, y, no)))
        elif key == "prime":
            prime = _row(names, rest, no, "prime")
        elif key == "R":
            if len(rest) != 3:
                raise ParseError("R takes exactly three points", no)
            triples.append(tuple(_resolve(names, t, no) for t in rest))
        else:
            in_i += [_resolve(names, t, no) for t in rest]

    if names is None:
        raise ParseError("missing 'points' line")
    try:
        poset = _build_poset(names, covers)
    except ParseError:
        raise
    except WorkbenchError as e:
        raise ParseError(str(e)) from e
    n = len(names)

    if flavor == RELEVANT:
        if prime is None:
            raise ParseError("relevant space needs a 'prime' line")
        R = np.zeros((n, n, n), dtype=bool)
        for x, y, z in triples:
            R[x, y, z] = True
        return RelevantSpace(poset, R, prime, bits_of(in_i), name=name)

    Q = None
    if q_pairs is not None:
        Q = np.zeros((n, n), dtype=bool)
        for x, y in q_pairs:
            Q[x, y] = True
    try:
        return StructuredSpace(poset, bits_of(designated), flavor=Flavor(flavor), top=top, Q=Q, name=name)
    except WorkbenchError as e:
        raise ParseError(str(e)) from e


def parse_text(text: str):
    """Dispatch on the header keyword."""
    lines = _Lines(text)
    if not lines.rows:
        raise ParseError("empty file")
    no, tokens = lines.rows[0]
    if tokens[0] == "algebra":
        return parse_algebra(text)
    if tokens[0] == "space":
        return parse_space(text)
    raise ParseError(f"unknown header {tokens[0]!r}", no)


def read_structure(path) -> object:
    """Read and parse a file; OSError propagates."""
    text = Path(path).read_text(encoding="utf-8")
    logger.debug(f"Read {len(text)} bytes from {path}")
    return parse_text(text)


def _covers_line(P: FinitePoset) -> list[str]:
    pairs = P.covers()
    if not pairs:
        return []
    return ["covers " + " ".join(f"{P.names[a]}<{P.names[b]}" for a, b in pairs)]


def emit_algebra(A: FiniteAlgebra) -> str:
    names = A.names
    out = [f"algebra {A.name} profile {A.profile.value}", "elements " + " ".join(names)]
    out += _covers_line(A.poset)
    if A.unit is not None:
        out.append(f"unit {names[A.unit]}")
    for key in ("f", "bot", "top"):
        if key in A.constants:
            out.append(f"const {key} {names[A.constants[key]]}")
    if A.neg is not None:
        out.append("neg " + " ".join(names[int(v)] for v in A.neg))
    for key in BINARY_OPS[2:]:
        table = getattr(A, key)
        if table is None or (key == "mult" and "mult" not in A.signature):
            continue
        for i in range(A.n):
            out.append(f"{key} {names[i]}: " + " ".join(names[int(v)] for v in table[i]))
    return "\n".join(out) + "\n"


def emit_space(X: StructuredSpace | RelevantSpace) -> str:
    names = X.names
    flavor = RELEVANT if isinstance(X, RelevantSpace) else X.flavor.value
    out = [f"space {X.name} flavor {flavor}", "points " + " ".join(names)]
    out += _covers_line(X.poset)
    if isinstance(X, RelevantSpace):
        out.append("prime " + " ".join(names[int(v)] for v in X.prime))
        if X.I:
            out.append("I " + " ".join(names[i] for i in members(X.I)))
        for x, y, z in np.argwhere(X.R):
            out.append(f"R {names[x]} {names[y]} {names[z]}")
        return "\n".join(out) + "\n"
    if X.designated:
        out.append("designated " + " ".join(names[i] for i in members(X.designated)))
    if X.top is not None:
        out.append(f"top {names[X.top]}")
    if X.Q is not None:
        out.append("Q " + " ".join(f"{names[x]}~{names[y]}" for x, y in np.argwhere(X.Q)))
    return "\n".join(out) + "\n"


def emit(obj) -> str:
    if isinstance(obj, FiniteAlgebra):
        return emit_algebra(obj)
    return emit_space(obj)


def write_structure(obj, path) -> None:
    Path(path).write_text(emit(obj), encoding="utf-8", newline="\n")
    logger.info(f"Wrote {obj.name} to {path}")
