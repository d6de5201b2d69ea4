"""Graphs and the reduction from maximum cut to generator-based decoding.

With G the vertex-edge incidence matrix and z the all-ones edge vector,
an assignment u cuts edge j exactly when [uG]_j = 1, so

    cut(u) = E - d_H(uG, z)

and maximizing the generator-based objective maximizes the cut.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bits import BitMatrix, BitVector


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..num_vertices."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        seen = set()
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (1 <= a <= self.num_vertices and 1 <= b <= self.num_vertices):
                raise ValueError(f"edge ({a},{b}) outside 1..{self.num_vertices}")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise ValueError(f"duplicate edge ({a},{b})")
            seen.add(key)

    @property
    def num_edges(self) -> int:
        return len(self.edges)


def parse_edge_list(text: str) -> Graph:
    """Parse 'u v' pairs, one per line, 1-indexed; blank and # lines skipped."""
    edges = []
    max_vertex = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        if a < 1 or b < 1:
            raise ValueError(f"line {lineno}: vertices are 1-indexed, got {raw!r}")
        edges.append((a, b))
        max_vertex = max(max_vertex, a, b)
    if not edges:
        raise ValueError("graph file contains no edges")
    return Graph(max_vertex, tuple(edges))


def load_graph(path: str | Path) -> Graph:
    try:
        return parse_edge_list(Path(path).read_text())
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None


def maxcut_to_decoding(g: Graph) -> tuple[BitMatrix, BitVector]:
    """Incidence generator matrix (V x E) and the all-ones target vector."""
    if not g.edges:
        raise ValueError("graph has no edges")
    rows = []
    for v in range(1, g.num_vertices + 1):
        mask = 0
        for j, (a, b) in enumerate(g.edges):
            if v in (a, b):
                mask |= 1 << j
        rows.append(mask)
    return BitMatrix(tuple(rows), g.num_edges), BitVector((1 << g.num_edges) - 1, g.num_edges)


def cut_size(g: Graph, assignment: BitVector) -> int:
    """Number of edges whose endpoints get different sides."""
    if assignment.n != g.num_vertices:
        raise ValueError("assignment length != vertex count")
    total = 0
    for a, b in g.edges:
        total += assignment.bit(a) ^ assignment.bit(b)
    return total


def brute_force_maxcut(g: Graph, cap: int = 20) -> tuple[int, BitVector]:
    """Exhaustive optimum over all 2^V assignments (V <= cap)."""
    if g.num_vertices > cap:
        raise ValueError(f"{g.num_vertices} vertices exceed brute-force cap {cap}")
    masks = np.array(
        [(1 << (a - 1)) | (1 << (b - 1)) for a, b in g.edges], dtype=np.uint32
    )
    us = np.arange(1 << g.num_vertices, dtype=np.uint32)
    cuts = np.zeros(len(us), dtype=np.int64)
    for mask in masks:
        cuts += np.bitwise_count(us & mask) & 1
    best = int(np.argmax(cuts))
    return int(cuts[best]), BitVector(best, g.num_vertices)
