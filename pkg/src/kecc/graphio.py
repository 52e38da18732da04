"""File formats: a DIMACS-style graph format and a JSON partition schema.

Graph files use 1-based vertex ids::

    p kec <n> <m>      header; m is the multiplicity-expanded edge count
    c ...              comment
    a <u> <v> <mult>   arcs
    o <u>              marks an ordinary vertex (no o-lines: all ordinary)

Vertex ids are 0-based in memory; the parser and writer own the boundary.
"""

from __future__ import annotations

import json

from .digraph import AUX_OTHER, ORDINARY, Digraph
from .partitions import Partition

FORMAT_NAME = "kecc-partition-v1"


class GraphFormatError(ValueError):
    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_graph(text):
    """Parse the arc-list format into a Digraph."""
    n = m = None
    arcs = []
    marks = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        tag = fields[0]
        if tag == "p":
            if n is not None:
                raise GraphFormatError(line_no, "duplicate header")
            if len(fields) != 4 or fields[1] != "kec":
                raise GraphFormatError(line_no, "header must be 'p kec <n> <m>'")
            try:
                n, m = int(fields[2]), int(fields[3])
            except ValueError:
                raise GraphFormatError(line_no, "non-integer header fields")
            if n < 0 or m < 0:
                raise GraphFormatError(line_no, "negative header fields")
        elif tag == "a":
            if n is None:
                raise GraphFormatError(line_no, "arc before header")
            if len(fields) not in (3, 4):
                raise GraphFormatError(line_no, "arc needs 'a <u> <v> [mult]'")
            try:
                u, v = int(fields[1]), int(fields[2])
                mult = int(fields[3]) if len(fields) == 4 else 1
            except ValueError:
                raise GraphFormatError(line_no, "non-integer arc fields")
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(line_no, f"vertex id out of range 1..{n}")
            if u == v:
                raise GraphFormatError(line_no, "self-loop rejected")
            if mult < 1:
                raise GraphFormatError(line_no, "multiplicity must be >= 1")
            arcs.append((u - 1, v - 1, mult, line_no))
        elif tag == "o":
            if n is None:
                raise GraphFormatError(line_no, "mark before header")
            try:
                u = int(fields[1])
            except (ValueError, IndexError):
                raise GraphFormatError(line_no, "mark needs 'o <u>'")
            if not 1 <= u <= n:
                raise GraphFormatError(line_no, f"vertex id out of range 1..{n}")
            marks.append(u - 1)
        else:
            raise GraphFormatError(line_no, f"unknown line tag {tag!r}")
    if n is None:
        raise GraphFormatError(1, "missing 'p kec' header")
    total = sum(mult for _u, _v, mult, _ln in arcs)
    if total != m:
        raise GraphFormatError(1, f"header claims m={m}, arcs sum to {total}")
    g = Digraph()
    g.add_vertices(n)
    for u, v, mult, _ln in arcs:
        g.add_edge(u, v, copies=mult)
    if marks:
        marked = set(marks)
        for v in range(n):
            g.kind[v] = ORDINARY if v in marked else AUX_OTHER
    return g


def write_graph(g, comment=None):
    """Serialize a compact graph; parse(write(g)) == g up to edge order."""
    if g.n_live != g.n_slots() or g.m_live != g.m_slots():
        raise ValueError("writer needs a compact graph (materialize it first)")
    counts = {}
    for v in range(g.n_slots()):
        for e in g.out_edges(v):
            key = (v, g.e_head[e])
            counts[key] = counts.get(key, 0) + 1
    lines = []
    if comment:
        for part in comment.splitlines():
            lines.append(f"c {part}")
    lines.append(f"p kec {g.n_slots()} {g.m_live}")
    for (u, v), mult in sorted(counts.items()):
        lines.append(f"a {u + 1} {v + 1} {mult}")
    ordinary = g.ordinary_vertices()
    if len(ordinary) != g.n_live:
        for u in ordinary:
            lines.append(f"o {u + 1}")
    return "\n".join(lines) + "\n"


def partition_to_json(partition, ordinary, k=None, mode=None, seed=None,
                      delta=None):
    """Canonical JSON for a partition: blocks sorted by smallest member,
    ids 1-based."""
    blocks = sorted([sorted(v + 1 for v in block)
                     for block in partition.blocks()])
    doc = {
        "format": FORMAT_NAME,
        "n": len(partition.universe),
        "k": k,
        "mode": mode,
        "seed": seed,
        "delta": delta,
        "blocks": blocks,
        "ordinary": sorted(v + 1 for v in ordinary),
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def partition_from_json(text):
    """Returns (Partition over 0-based ids, ordinary id list, metadata)."""
    doc = json.loads(text)
    if doc.get("format") != FORMAT_NAME:
        raise ValueError(f"unknown partition format {doc.get('format')!r}")
    blocks = [[v - 1 for v in block] for block in doc["blocks"]]
    universe = sorted(v for block in blocks for v in block)
    part = Partition.from_blocks(universe, blocks)
    ordinary = [v - 1 for v in doc["ordinary"]]
    return part, ordinary, doc
