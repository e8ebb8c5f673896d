"""Multigraphs on vertex set {1..n} and the two sparse random models.

Edges are stored as an ordered tuple of (u, v) pairs; parallel edges
and loops are legal unless the ``simple`` flag is set. A loop counts 2
toward its vertex's degree but is a single edge for counting purposes.

Two samplers are provided: ``sample_gnm`` draws uniformly among simple
graphs with exactly m edges, ``sample_gnm_multi`` draws m independent
uniform ordered pairs (the independent-edge model used for coupling
arguments). ``sample_planted`` conditions the independent model on a
fixed proper coloring.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from coverlab.errors import DomainError
from coverlab.rng import as_generator

Edge = tuple[int, int]


@dataclass(frozen=True)
class MultiGraph:
    """An edge list over vertices 1..n, loops and multi-edges allowed."""

    n: int
    edges: tuple[Edge, ...]
    simple: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"need at least one vertex, got n={self.n}")
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        for u, v in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise DomainError(f"edge ({u},{v}) out of range 1..{self.n}")
        if self.simple:
            seen = set()
            for u, v in self.edges:
                if u == v:
                    raise DomainError(f"loop at {u} in a graph declared simple")
                key = (min(u, v), max(u, v))
                if key in seen:
                    raise DomainError(f"repeated edge {key} in a graph declared simple")
                seen.add(key)

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """adjacency[v] lists neighbors with multiplicity; a loop lists
        the vertex itself twice. Index 0 is an unused placeholder."""
        adj: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(a) for a in adj)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.adjacency[v])

    def _check_vertex(self, v: int):
        if not (1 <= v <= self.n):
            raise DomainError(f"vertex {v} out of range 1..{self.n}")

    def is_simple(self) -> bool:
        """True when there is no loop and no repeated unordered pair."""
        seen = set()
        for u, v in self.edges:
            if u == v:
                return False
            key = (min(u, v), max(u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def relabeled(self, perm: dict[int, int]) -> "MultiGraph":
        """Apply a vertex permutation (used by isomorphism tests)."""
        if sorted(perm) != list(self.vertices()) or sorted(perm.values()) != list(self.vertices()):
            raise DomainError("perm must be a permutation of 1..n")
        return MultiGraph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges), self.simple)


def edge_count_between(graph: MultiGraph, a: Iterable[int], b: Iterable[int]) -> int:
    """Number of edges with one endpoint in ``a`` and the other in ``b``.

    Each edge is counted once, loops included: a loop at a vertex lying
    in both sets counts once. Vertex ids are validated.
    """
    sa, sb = set(a), set(b)
    for v in sa | sb:
        graph._check_vertex(v)
    count = 0
    for u, v in graph.edges:
        if (u in sa and v in sb) or (u in sb and v in sa):
            count += 1
    return count


def m_for_average_degree(n: int, d: float) -> int:
    """Edge count giving average degree d on n vertices: ceil(d*n/2)."""
    if n < 1 or d < 0:
        raise DomainError(f"need n >= 1 and d >= 0, got n={n}, d={d}")
    m = int(np.ceil(d * n / 2))
    return m


def _pair_unrank(index: int, n: int) -> Edge:
    # pairs (u,v), u < v, ordered lexicographically; index is 0-based
    u = 1
    remaining = index
    while remaining >= n - u:
        remaining -= n - u
        u += 1
    return (u, u + 1 + remaining)


def sample_gnm(n: int, m: int, seed) -> MultiGraph:
    """Uniform simple graph with n vertices and exactly m edges.

    ``seed`` is an integer or an already-derived generator.
    """
    total = n * (n - 1) // 2
    if not 0 <= m <= total:
        raise DomainError(f"m={m} outside 0..{total} for n={n}")
    rng = as_generator(seed)
    # Floyd's algorithm: uniform m-subset of the pair indices without
    # materializing all of them.
    chosen: set[int] = set()
    for j in range(total - m, total):
        t = int(rng.integers(0, j + 1))
        chosen.add(j if t in chosen else t)
    edges = tuple(_pair_unrank(i, n) for i in sorted(chosen))
    return MultiGraph(n, edges, simple=True)


def sample_gnm_multi(n: int, m: int, seed) -> MultiGraph:
    """m independent uniform ordered pairs out of the n^2 possibilities."""
    if m < 0:
        raise DomainError(f"m must be nonnegative, got {m}")
    rng = as_generator(seed)
    pairs = rng.integers(1, n + 1, size=(m, 2))
    return MultiGraph(n, tuple((int(u), int(v)) for u, v in pairs))


def sample_planted(n: int, m: int, colors: Sequence[int], seed) -> MultiGraph:
    """Independent-edge model conditioned on a coloring being proper.

    Each of the m edges is an ordered pair drawn uniformly among pairs
    whose endpoints get different colors, independently. ``colors`` is
    1-indexed by position (colors[v-1] is the color of v).
    """
    if len(colors) != n:
        raise DomainError(f"colors has length {len(colors)}, expected {n}")
    if len(set(colors)) < 2:
        raise DomainError("conditioning needs at least two color classes")
    rng = as_generator(seed)
    edges = []
    while len(edges) < m:
        # rejection in blocks; acceptance probability is 1 - sum alpha_i^2
        block = rng.integers(1, n + 1, size=(max(16, m), 2))
        for u, v in block:
            if colors[u - 1] != colors[v - 1]:
                edges.append((int(u), int(v)))
                if len(edges) == m:
                    break
    return MultiGraph(n, tuple(edges))


def write_edgelist(graph: MultiGraph) -> str:
    """Serialize to the text format: a 'n m' header then one 'u v' line
    per edge, in stored order."""
    lines = [f"{graph.n} {graph.m}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def read_edgelist(text: str) -> MultiGraph:
    """Parse the edge-list text format; inverse of ``write_edgelist``."""
    rows = [line for line in text.splitlines() if line.strip()]
    if not rows:
        raise DomainError("empty edge-list input")
    head = rows[0].split()
    if len(head) != 2:
        raise DomainError(f"malformed header {rows[0]!r}, expected 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise DomainError(f"malformed header {rows[0]!r}") from exc
    if len(rows) - 1 != m:
        raise DomainError(f"header announces {m} edges, found {len(rows) - 1}")
    edges = []
    for row in rows[1:]:
        parts = row.split()
        if len(parts) != 2:
            raise DomainError(f"malformed edge line {row!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return MultiGraph(n, tuple(edges))


def complete_multipartite(sizes: Sequence[int]) -> MultiGraph:
    """Complete multipartite graph with the given class sizes.

    Vertices are numbered class by class, so sizes (2, 2, 2) gives
    classes {1,2}, {3,4}, {5,6} with all cross-class edges present.
    """
    if not sizes or any(s < 1 for s in sizes):
        raise DomainError(f"class sizes must be positive, got {sizes}")
    n = sum(sizes)
    bounds = np.cumsum([0, *sizes])
    cls = {}
    for i in range(len(sizes)):
        for v in range(bounds[i] + 1, bounds[i + 1] + 1):
            cls[v] = i
    edges = tuple(
        (u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if cls[u] != cls[v]
    )
    return MultiGraph(n, edges, simple=True)


def _two_triangles() -> MultiGraph:
    return MultiGraph(6, ((1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)), simple=True)


BUILTIN_GRAPHS = {
    "edge": lambda: MultiGraph(2, ((1, 2),), simple=True),
    "path3": lambda: MultiGraph(3, ((1, 2), (2, 3)), simple=True),
    "triangle": lambda: MultiGraph(3, ((1, 2), (1, 3), (2, 3)), simple=True),
    "two-triangles": _two_triangles,
    "K22": lambda: complete_multipartite((2, 2)),
    "K222": lambda: complete_multipartite((2, 2, 2)),
    "K33": lambda: complete_multipartite((3, 3)),
    "K333": lambda: complete_multipartite((3, 3, 3)),
    "K666": lambda: complete_multipartite((6, 6, 6)),
    "K777": lambda: complete_multipartite((7, 7, 7)),
}


def builtin_graph(name: str) -> MultiGraph:
    """Look up a named test graph (case-insensitive)."""
    key = name.strip()
    for candidate in (key, key.lower(), key.upper()):
        if candidate in BUILTIN_GRAPHS:
            return BUILTIN_GRAPHS[candidate]()
    raise DomainError(f"unknown builtin graph {name!r}; known: {sorted(BUILTIN_GRAPHS)}")
