"""Undirected graphs with an optional designated perfect matching.

Vertices are dense integer indices 0..vertex_count-1.  Edges are stored both
as a frozenset of normalized pairs (membership tests) and as adjacency tuples
(iteration); both access patterns are hot in the greedy engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .rng import make_rng, split_seed

ORACLE_VERTEX_LIMIT = 24

INF_GIRTH = math.inf


class OracleScaleError(ValueError):
    """Raised when an exact query is asked of a graph above oracle scale."""


class GenerationExhaustedError(RuntimeError):
    """Raised when rejection sampling runs out of attempts."""


def _normalize_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph, optionally with a designated perfect matching."""

    vertex_count: int
    edges: frozenset
    designated_perfect_matching: tuple | None = None

    def __post_init__(self):
        norm = set()
        for (u, v) in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u},{v}) out of range")
            norm.add(_normalize_edge(u, v))
        object.__setattr__(self, "edges", frozenset(norm))
        m = self.designated_perfect_matching
        if m is not None:
            m = tuple(_normalize_edge(u, v) for (u, v) in m)
            object.__setattr__(self, "designated_perfect_matching", m)
            covered = set()
            for (u, v) in m:
                if (u, v) not in self.edges:
                    raise ValueError(f"matching pair ({u},{v}) is not an edge")
                if u in covered or v in covered:
                    raise ValueError(f"matching pair ({u},{v}) overlaps another pair")
                covered.update((u, v))
            if len(covered) != self.vertex_count:
                raise ValueError("designated matching does not cover all vertices")

    @cached_property
    def adjacency(self) -> tuple:
        adj = [[] for _ in range(self.vertex_count)]
        for (u, v) in sorted(self.edges):
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(a) for a in adj)

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in self.edges

    def neighbors(self, v: int) -> tuple:
        return self.adjacency[v]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def with_edges(self, add=(), remove=()) -> "Graph":
        edges = set(self.edges)
        edges.difference_update(_normalize_edge(u, v) for (u, v) in remove)
        edges.update(_normalize_edge(u, v) for (u, v) in add)
        return Graph(self.vertex_count, frozenset(edges), self.designated_perfect_matching)


def generate_perfect_matching_graph(num_pairs: int, extra_edge_probability: float,
                                    seed: int) -> Graph:
    """Graph on 2*num_pairs vertices with designated matching (2i, 2i+1).

    Every non-matching pair is included independently with the given
    probability; deterministic for a fixed seed.
    """
    if num_pairs < 1:
        raise ValueError("num_pairs must be >= 1")
    if not 0.0 <= extra_edge_probability <= 1.0:
        raise ValueError("extra_edge_probability must lie in [0,1]")
    n = 2 * num_pairs
    matching = tuple((2 * i, 2 * i + 1) for i in range(num_pairs))
    edges = set(matching)
    rng = make_rng(seed)
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) in edges:
                continue
            if rng.random() < extra_edge_probability:
                edges.add((u, v))
    return Graph(n, frozenset(edges), matching)


def odd_girth(g: Graph):
    """Length of the shortest odd cycle; INF_GIRTH for bipartite graphs.

    From each vertex, BFS over the even/odd distance layering; the shortest
    odd closed walk back to the root equals the shortest odd cycle length.
    """
    best = INF_GIRTH
    n = g.vertex_count
    for s in range(n):
        # dist[v][parity]
        dist = [[None, None] for _ in range(n)]
        dist[s][0] = 0
        queue = [(s, 0)]
        head = 0
        while head < len(queue):
            v, p = queue[head]
            head += 1
            d = dist[v][p]
            if d is not None and d >= best:
                continue
            for w in g.neighbors(v):
                q = 1 - p
                if dist[w][q] is None:
                    dist[w][q] = d + 1
                    queue.append((w, q))
        if dist[s][1] is not None:
            best = min(best, dist[s][1])
    return best


def _check_oracle_scale(g: Graph):
    if g.vertex_count > ORACLE_VERTEX_LIMIT:
        raise OracleScaleError(
            f"{g.vertex_count} vertices exceeds the exact-oracle limit of "
            f"{ORACLE_VERTEX_LIMIT}")


def maximum_matching_size(g: Graph) -> int:
    """Exact maximum matching size by bitmask recursion with memoization."""
    _check_oracle_scale(g)
    n = g.vertex_count
    adj_bits = [0] * n
    for (u, v) in g.edges:
        adj_bits[u] |= 1 << v
        adj_bits[v] |= 1 << u
    full = (1 << n) - 1
    memo = {}

    def rec(used: int) -> int:
        if used == full:
            return 0
        cached = memo.get(used)
        if cached is not None:
            return cached
        free = ~used & full
        u = (free & -free).bit_length() - 1
        best = rec(used | (1 << u))
        cand = adj_bits[u] & ~used
        while cand:
            vbit = cand & -cand
            cand ^= vbit
            v = vbit.bit_length() - 1
            best = max(best, 1 + rec(used | (1 << u) | vbit))
        memo[used] = best
        return best

    return rec(0)


def _one_maximum_matching(g: Graph) -> list:
    """Reconstruct one maximum matching by following optimal recursion choices."""
    n = g.vertex_count
    target = maximum_matching_size(g)
    adj = g.adjacency
    full = (1 << n) - 1
    memo = {}

    def size(used: int) -> int:
        if used == full:
            return 0
        if used in memo:
            return memo[used]
        free = ~used & full
        u = (free & -free).bit_length() - 1
        best = size(used | (1 << u))
        for v in adj[u]:
            if not used & (1 << v):
                best = max(best, 1 + size(used | (1 << u) | (1 << v)))
        memo[used] = best
        return best

    pairs = []
    used = 0
    remaining = target
    while remaining:
        free = ~used & full
        u = (free & -free).bit_length() - 1
        if size(used | (1 << u)) == remaining:
            used |= 1 << u
            continue
        for v in adj[u]:
            if not used & (1 << v) and 1 + size(used | (1 << u) | (1 << v)) == remaining:
                pairs.append((u, v))
                used |= (1 << u) | (1 << v)
                remaining -= 1
                break
    return pairs


def prune_to_perfect_matching(g: Graph) -> Graph:
    """Induced subgraph on the vertices of one maximum matching, matching designated.

    Any approximation-ratio lower bound proved on the pruned graph carries over
    to the original, so exact experiments only need perfect-matching inputs.
    """
    if (g.designated_perfect_matching is not None
            and 2 * len(g.designated_perfect_matching) == g.vertex_count):
        return g
    _check_oracle_scale(g)
    pairs = _one_maximum_matching(g)
    keep = sorted(v for (u, w) in pairs for v in (u, w))
    relabel = {v: i for i, v in enumerate(keep)}
    edges = frozenset((relabel[u], relabel[v]) for (u, v) in g.edges
                      if u in relabel and v in relabel)
    matching = tuple((relabel[u], relabel[v]) for (u, v) in pairs)
    return Graph(len(keep), edges, matching)


def generate_odd_girth_graph(num_pairs: int, min_odd_girth: int, max_attempts: int,
                             seed: int) -> Graph:
    """Perfect-matching graph with odd girth >= min_odd_girth.

    Rejection-samples with decaying extra-edge density; when the vertex count
    allows, splices in one cycle of exactly min_odd_girth so the girth bound
    of the class is tight.  Splicing is best-effort: chords inside the spliced
    cycle are removed, and the splice is abandoned if the bound still fails.
    """
    if min_odd_girth < 5 or min_odd_girth % 2 == 0:
        raise ValueError("min_odd_girth must be an odd integer >= 5")
    if max_attempts < 1:
        raise ValueError("max_attempts must be >= 1")
    n = 2 * num_pairs
    density = 0.3
    for attempt in range(max_attempts):
        g = generate_perfect_matching_graph(
            num_pairs, density, split_seed(seed, attempt))
        density *= 0.8
        if odd_girth(g) < min_odd_girth:
            continue
        if n >= min_odd_girth:
            spliced = _splice_cycle(g, min_odd_girth)
            if odd_girth(spliced) >= min_odd_girth:
                return spliced
        return g
    raise GenerationExhaustedError(
        f"no graph with odd girth >= {min_odd_girth} found in {max_attempts} attempts")


def _splice_cycle(g: Graph, length: int) -> Graph:
    cycle_vertices = list(range(length))
    cycle_edges = {_normalize_edge(cycle_vertices[i], cycle_vertices[(i + 1) % length])
                   for i in range(length)}
    matching_edges = set(g.designated_perfect_matching)
    chords = {e for e in g.edges
              if e[0] < length and e[1] < length
              and e not in cycle_edges and e not in matching_edges}
    return g.with_edges(add=cycle_edges, remove=chords)


# Text format: "p <vertex_count> <edge_count>", one "e u v" line per edge and
# optional "m u v" lines for the designated matching; whitespace separated,
# 0-indexed.

def graph_to_text(g: Graph) -> str:
    lines = [f"p {g.vertex_count} {g.edge_count}"]
    for (u, v) in sorted(g.edges):
        lines.append(f"e {u} {v}")
    if g.designated_perfect_matching is not None:
        for (u, v) in sorted(g.designated_perfect_matching):
            lines.append(f"m {u} {v}")
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Graph:
    vertex_count = None
    edge_count = None
    edges = []
    matching = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        kind = fields[0]
        if kind == "p":
            vertex_count, edge_count = int(fields[1]), int(fields[2])
        elif kind == "e":
            edges.append((int(fields[1]), int(fields[2])))
        elif kind == "m":
            matching.append((int(fields[1]), int(fields[2])))
        else:
            raise ValueError(f"unknown graph line {line!r}")
    if vertex_count is None:
        raise ValueError("missing 'p' header line")
    if edge_count is not None and edge_count != len(edges):
        raise ValueError(f"header says {edge_count} edges, found {len(edges)}")
    return Graph(vertex_count, frozenset(edges),
                 tuple(matching) if matching else None)
