"""Edge-list and graph6 readers/writers."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from chibound.graph import Graph

FORMATS = ("edgelist", "graph6")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


# -- edge list ---------------------------------------------------------------


def format_edgelist(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> Graph:
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise ParseError("empty input", 1)
    lineno, header = lines[0]
    try:
        n, m = (int(x) for x in header.split())
    except ValueError:
        raise ParseError(f"expected 'n m', got {header!r}", lineno) from None
    if n < 0 or m < 0:
        raise ParseError("counts must be non-negative", lineno)
    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else lineno
        raise ParseError(f"header announces {m} edges, found {len(body)}", last)
    seen: set[tuple[int, int]] = set()
    edges = []
    for lineno, ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {ln!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {ln!r}", lineno) from None
        if u == v:
            raise ParseError(f"self-loop at {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex index out of range 0..{n - 1}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {key}", lineno)
        seen.add(key)
        edges.append(key)
    return Graph.from_edges(n, edges)


# -- graph6 ------------------------------------------------------------------


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    return "~~" + "".join(chr(63 + ((n >> s) & 63)) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> str:
    bitlist = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bitlist += [0] * (-len(bitlist) % 6)
    body = "".join(chr(63 + int("".join(map(str, bitlist[k : k + 6])), 2)) for k in range(0, len(bitlist), 6))
    return _encode_n(g.n) + body


def from_graph6(line: str, lineno: int | None = None) -> Graph:
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise ParseError("empty graph6 line", lineno)
    if any(not 63 <= ord(ch) <= 126 for ch in s):
        raise ParseError("graph6 characters must lie in '?'..'~'", lineno)
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] != 63:
        n, rest = vals[0], vals[1:]
    elif len(vals) > 1 and vals[1] != 63:
        if len(vals) < 4:
            raise ParseError("truncated graph6 size field", lineno)
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        rest = vals[4:]
    else:
        if len(vals) < 8:
            raise ParseError("truncated graph6 size field", lineno)
        n = 0
        for x in vals[2:8]:
            n = (n << 6) | x
        rest = vals[8:]
    nbits = n * (n - 1) // 2
    if len(rest) != (nbits + 5) // 6:
        raise ParseError(f"graph6 body has {len(rest)} bytes, expected {(nbits + 5) // 6} for n={n}", lineno)
    stream = []
    for x in rest:
        stream.extend((x >> s) & 1 for s in range(5, -1, -1))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if stream[k]:
                edges.append((i, j))
            k += 1
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


# -- files ---------------------------------------------------------------------


def _check_format(fmt: str) -> None:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def load_graphs(path: str | Path, fmt: str = "edgelist") -> list[Graph]:
    """All graphs in a file: one for edge lists, one per line for graph6."""
    _check_format(fmt)
    text = Path(path).read_text()
    if fmt == "edgelist":
        return [parse_edgelist(text)]
    return [from_graph6(ln, i + 1) for i, ln in enumerate(text.splitlines()) if ln.strip()]


def parse_graph_file(path: str | Path, fmt: str = "edgelist") -> Graph:
    graphs = load_graphs(path, fmt)
    if len(graphs) != 1:
        raise ParseError(f"expected exactly one graph, found {len(graphs)}")
    return graphs[0]


def format_graphs(graphs: Iterable[Graph], fmt: str) -> str:
    _check_format(fmt)
    graphs = list(graphs)
    if fmt == "edgelist":
        if len(graphs) != 1:
            raise ValueError("edge-list files hold exactly one graph")
        return format_edgelist(graphs[0])
    return "".join(to_graph6(g) + "\n" for g in graphs)


def write_graph_file(g: Graph, path: str | Path, fmt: str = "edgelist") -> None:
    Path(path).write_text(format_graphs([g], fmt))
