"""Text and JSON formats for graphs, colorings, matrices and reports.

All external formats use 1-based vertex and color labels.

Graph text::

    3
    1: 2
    2: 3
    3: 1

Coloring text (one line per color)::

    color 1: 1->2 2->3 3->1

Matrices are CSV or JSON with exact entries (``"p/q"`` strings or ints).
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__
from .digraph import Digraph
from .exceptions import FloatRejected, ParseError
from .rational import RationalMatrix, to_fraction
from .semigroup import Coloring, VertexMap

_VERTEX_LINE = re.compile(r"^\s*(\d+)\s*:\s*(.*?)\s*$")
_COLOR_LINE = re.compile(r"^\s*color\s+(\d+)\s*:\s*(.*?)\s*$", re.IGNORECASE)
_ARROW = re.compile(r"^(\d+)->(\d+)$")


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_graph_text(text: str) -> Digraph:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty graph description")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise ParseError(f"first line must be the vertex count, got {lines[0]!r}") from exc
    if n < 1:
        raise ParseError("vertex count must be positive")
    adj = [[0] * n for _ in range(n)]
    seen: set[int] = set()
    for line in lines[1:]:
        m = _VERTEX_LINE.match(line)
        if not m:
            raise ParseError(f"bad vertex line {line!r}")
        i = int(m.group(1))
        if not 1 <= i <= n or i in seen:
            raise ParseError(f"vertex {i} out of range or listed twice")
        seen.add(i)
        for tok in m.group(2).split():
            if not tok.isdigit() or not 1 <= int(tok) <= n:
                raise ParseError(f"bad out-neighbour {tok!r} of vertex {i}")
            adj[i - 1][int(tok) - 1] += 1
    missing = sorted(set(range(1, n + 1)) - seen)
    if missing:
        raise ParseError(f"no line for vertices {missing}")
    try:
        return Digraph(tuple(map(tuple, adj)))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_graph_text(g: Digraph) -> str:
    lines = [str(g.n)]
    for v in range(g.n):
        lines.append(f"{v + 1}: " + " ".join(str(j + 1) for j in g.successors(v)))
    return "\n".join(lines) + "\n"


def graph_to_json(g: Digraph) -> dict[str, Any]:
    edges = [[i + 1, j + 1, m] for i, row in enumerate(g.adj) for j, m in enumerate(row) if m]
    return {"n": g.n, "edges": edges}


def graph_from_json(obj: dict[str, Any]) -> Digraph:
    try:
        n = int(obj["n"])
        adj = [[0] * n for _ in range(n)]
        for edge in obj["edges"]:
            i, j = int(edge[0]), int(edge[1])
            mult = int(edge[2]) if len(edge) > 2 else 1
            if not (1 <= i <= n and 1 <= j <= n) or mult < 0:
                raise ParseError(f"bad edge {edge!r}")
            adj[i - 1][j - 1] += mult
        return Digraph(tuple(map(tuple, adj)))
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"malformed graph JSON: {exc}") from exc
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _reject_float(token: str):
    raise FloatRejected(f"float literal {token} rejected; use a 'p/q' string")


def _loads(text: str) -> Any:
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def _looks_like_json(text: str) -> bool:
    return text.lstrip()[:1] in ("{", "[")


def parse_graph(text: str) -> Digraph:
    return graph_from_json(_loads(text)) if _looks_like_json(text) else parse_graph_text(text)


def load_graph(path: str | Path) -> Digraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def parse_coloring_text(text: str, graph: Digraph) -> Coloring:
    n = graph.n
    maps: dict[int, list[int | None]] = {}
    for line in _content_lines(text):
        m = _COLOR_LINE.match(line)
        if not m:
            raise ParseError(f"bad color line {line!r}")
        c = int(m.group(1))
        if c in maps:
            raise ParseError(f"color {c} listed twice")
        images: list[int | None] = [None] * n
        for tok in m.group(2).split():
            a = _ARROW.match(tok)
            if not a:
                raise ParseError(f"bad assignment {tok!r} for color {c}")
            v, w = int(a.group(1)), int(a.group(2))
            if not (1 <= v <= n and 1 <= w <= n) or images[v - 1] is not None:
                raise ParseError(f"bad or repeated assignment {tok!r} for color {c}")
            images[v - 1] = w - 1
        if None in images:
            raise ParseError(f"color {c} does not cover every vertex")
        maps[c] = images
    if sorted(maps) != list(range(1, len(maps) + 1)):
        raise ParseError(f"colors must be numbered 1..d, got {sorted(maps)}")
    return Coloring(graph, tuple(VertexMap(maps[c]) for c in sorted(maps)))


def format_coloring_text(c: Coloring) -> str:
    lines = []
    for k, m in enumerate(c.maps):
        body = " ".join(f"{v + 1}->{w + 1}" for v, w in enumerate(m))
        lines.append(f"color {k + 1}: {body}")
    return "\n".join(lines) + "\n"


def coloring_to_json(c: Coloring) -> dict[str, Any]:
    return {"graph": graph_to_json(c.graph), "maps": [[w + 1 for w in m] for m in c.maps]}


def coloring_from_json(obj: dict[str, Any], graph: Digraph | None = None) -> Coloring:
    try:
        maps = [VertexMap(int(w) - 1 for w in m) for m in obj["maps"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed coloring JSON: {exc}") from exc
    embedded = graph_from_json(obj["graph"]) if "graph" in obj else None
    if graph is None:
        graph = embedded
    elif embedded is not None and embedded != graph:
        raise ParseError("coloring JSON embeds a different graph")
    if graph is None:
        return Coloring.from_maps(maps)
    return Coloring(graph, tuple(maps))


def parse_coloring(text: str, graph: Digraph | None = None) -> Coloring:
    if _looks_like_json(text):
        return coloring_from_json(_loads(text), graph)
    if graph is None:
        raise ParseError("the text coloring format needs the graph")
    return parse_coloring_text(text, graph)


def load_coloring(path: str | Path, graph: Digraph | None = None) -> Coloring:
    return parse_coloring(Path(path).read_text(encoding="utf-8"), graph)


def parse_matrix_csv(text: str) -> RationalMatrix:
    rows = []
    for row in csv.reader(io.StringIO(text)):
        cells = [c.strip() for c in row if c.strip()]
        if not cells or cells[0].startswith("#"):
            continue
        rows.append([to_fraction(c) for c in cells])
    if not rows:
        raise ParseError("empty matrix")
    try:
        return RationalMatrix(rows)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def matrix_from_json(obj: Any) -> RationalMatrix:
    rows = obj["matrix"] if isinstance(obj, dict) else obj
    try:
        return RationalMatrix([[to_fraction(x) for x in row] for row in rows])
    except TypeError as exc:
        raise ParseError(f"malformed matrix JSON: {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc


def matrix_to_json(a: RationalMatrix) -> dict[str, Any]:
    return {"matrix": a.to_strings()}


def format_matrix_csv(a: RationalMatrix) -> str:
    return "".join(",".join(r) + "\n" for r in a.to_strings())


def parse_matrix(text: str) -> RationalMatrix:
    return matrix_from_json(_loads(text)) if _looks_like_json(text) else parse_matrix_csv(text)


def load_matrix(path: str | Path) -> RationalMatrix:
    return parse_matrix(Path(path).read_text(encoding="utf-8"))


def rationals(values) -> list[str]:
    return [str(Fraction(x)) for x in values]


def digest(*blobs: bytes) -> str:
    h = hashlib.sha256()
    for b in blobs:
        h.update(hashlib.sha256(b).digest())
    return "sha256:" + h.hexdigest()


@dataclass
class AnalysisReport:
    command: str
    input_digest: str
    results: dict[str, Any]
    version: str = __version__
    timing: dict[str, int] = field(default_factory=dict)

    def to_dict(self, include_timing: bool = True) -> dict[str, Any]:
        out = {
            "command": self.command,
            "input_digest": self.input_digest,
            "results": self.results,
            "version": self.version,
        }
        if include_timing:
            out["timing"] = self.timing
        return out

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True) + "\n"
