"""Plain-text formats for triple systems and embedding certificates.

STS format::

    v=7
    0 1 3
    ...

Certificate format::

    P: p1 p2 ...
    A: a1 a2 ...
    U: u1 u2 ...
    EDGES:
    a1 a2
    BLOCKS:
    v=13
    x y z
    ...

Lines starting with ``#`` are comments.  Output is sorted so identical inputs
give identical bytes.
"""

from __future__ import annotations

from .design import (
    DesignError,
    EmbeddingCertificate,
    LabeledGraph,
    PointPartition,
    TripleSystem,
    sort_labels,
)


def _content_lines(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def sts_to_text(ts: TripleSystem, comments: list[str] | None = None) -> str:
    lines = [f"# {c}" for c in comments or []]
    lines.append(f"v={ts.v}")
    lines += [" ".join(sort_labels(b)) for b in ts.sorted_blocks()]
    return "\n".join(lines) + "\n"


def _parse_sts_lines(lines: list[str]) -> TripleSystem:
    if not lines or not lines[0].startswith("v="):
        raise DesignError("STS text must start with 'v=<int>'")
    try:
        v = int(lines[0][2:])
    except ValueError as exc:
        raise DesignError(f"bad order line {lines[0]!r}") from exc
    blocks = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise DesignError(f"block line needs three labels: {line!r}")
        blocks.append(parts)
    points = set(x for b in blocks for x in b)
    if len(points) > v:
        raise DesignError(f"blocks use {len(points)} points but v={v}")
    k = 0
    while len(points) < v:
        if str(k) not in points:
            points.add(str(k))
        k += 1
    return TripleSystem.from_blocks(blocks, points)


def sts_from_text(text: str) -> TripleSystem:
    return _parse_sts_lines(_content_lines(text))


def certificate_to_text(cert: EmbeddingCertificate, comments: list[str] | None = None) -> str:
    part = cert.partition
    lines = [f"# {c}" for c in comments or []]
    for name, pts in (("P", part.P), ("A", part.A), ("U", part.U)):
        lines.append(" ".join([f"{name}:"] + sort_labels(pts)))
    lines.append("EDGES:")
    lines += [f"{x} {y}" for x, y in cert.graph.sorted_edges()]
    lines.append("BLOCKS:")
    lines.append(sts_to_text(cert.ts).rstrip("\n"))
    return "\n".join(lines) + "\n"


def certificate_from_text(text: str) -> EmbeddingCertificate:
    lines = _content_lines(text)
    sides = {}
    i = 0
    for name in ("P", "A", "U"):
        if i >= len(lines) or not lines[i].startswith(f"{name}:"):
            raise DesignError(f"expected '{name}:' section")
        sides[name] = lines[i][len(name) + 1:].split()
        i += 1
    if i >= len(lines) or lines[i] != "EDGES:":
        raise DesignError("expected 'EDGES:' section")
    i += 1
    edges = []
    while i < len(lines) and lines[i] != "BLOCKS:":
        parts = lines[i].split()
        if len(parts) != 2:
            raise DesignError(f"edge line needs two labels: {lines[i]!r}")
        edges.append(parts)
        i += 1
    if i >= len(lines):
        raise DesignError("expected 'BLOCKS:' section")
    ts = _parse_sts_lines(lines[i + 1:])
    part = PointPartition.build(sides["P"], sides["A"], sides["U"])
    graph = LabeledGraph.build(sides["A"], edges)
    return EmbeddingCertificate(ts, part, graph)


def graph_to_text(g: LabeledGraph) -> str:
    """``V: x y ...`` followed by one ``x y`` line per edge."""
    lines = [" ".join(["V:"] + sort_labels(g.vertices))]
    lines += [f"{x} {y}" for x, y in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> LabeledGraph:
    lines = _content_lines(text)
    if not lines or not lines[0].startswith("V:"):
        raise DesignError("graph text must start with 'V:'")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise DesignError(f"edge line needs two labels: {line!r}")
        edges.append(parts)
    return LabeledGraph.build(lines[0][2:].split(), edges)
