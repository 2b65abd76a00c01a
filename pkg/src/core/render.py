"""
Graphviz export of Hasse diagrams.

Covers are drawn bottom to top; designated points get a double border and
relevant spaces carry their R triples in a legend note. For example, after
writing ``E-.dot``::

    dot -Tpng -O E-.dot
"""
import logging
from pathlib import Path

import numpy as np

from .reflection import RelevantSpace

logger = logging.getLogger(__name__)


def _escape(text) -> str:
    return str(text).replace("\\", "\\\\").replace('"', '\\"')


def _quote(text) -> str:
    return f'"{_escape(text)}"'


def dot_lines(obj):
    """Yield the DOT document for an algebra or space line by line."""
    names = obj.names
    designated = getattr(obj, "designated", 0) or 0
    yield f"digraph {_quote(obj.name)} {{"
    yield "\trankdir=BT;"
    yield "\tnode [shape=circle];"
    for i, name in enumerate(names):
        extra = ", peripheries=2" if designated >> i & 1 else ""
        yield f"\t{_quote(i)} [label={_quote(name)}{extra}];"
    for lower, upper in obj.poset.covers():
        yield f"\t{_quote(lower)} -> {_quote(upper)};"
    if isinstance(obj, RelevantSpace):
        entries = [f"R({names[x]},{names[y]},{names[z]})" for x, y, z in np.argwhere(obj.R)]
        label = "".join(_escape(e) + "\\l" for e in entries)
        yield f'\tlegend [shape=note, label="{label}"];'
    yield "}"


def render_dot(obj) -> str:
    return "\n".join(dot_lines(obj)) + "\n"


def write_dot(obj, path) -> None:
    Path(path).write_text(render_dot(obj), encoding="utf-8", newline="\n")
    logger.info(f"Wrote diagram of {obj.name} to {path}")
