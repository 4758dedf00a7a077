"""Literal vertex-iterative simulators and their numpy batch counterparts.

The single-run functions are direct transcriptions of the vertex-iterative
algorithms (process vertices in a decision order; an unmatched vertex grabs
its most-preferred unmatched neighbor).  They serve as the independent oracle
for the query-commit engine.  The batch functions replay the same process
simultaneously over many permutation rows for exhaustive enumeration sweeps.
"""

from __future__ import annotations

import itertools

import numpy as np

from .graph import Graph


def adjacency_bitmasks(g: Graph) -> list:
    bits = [0] * g.vertex_count
    for (u, v) in g.edges:
        bits[u] |= 1 << v
        bits[v] |= 1 << u
    return bits


def vi_run_size(adj_bits, decision_order, pref_pos) -> int:
    """Vertex-iterative greedy: each deciding vertex matches its unmatched
    neighbor with the smallest preference position.  Returns matching size."""
    matched = 0
    size = 0
    for v in decision_order:
        v = int(v)
        if matched >> v & 1:
            continue
        cand = adj_bits[v] & ~matched
        best = -1
        best_pos = None
        while cand:
            bit = cand & -cand
            cand ^= bit
            u = bit.bit_length() - 1
            if best_pos is None or pref_pos[u] < best_pos:
                best, best_pos = u, pref_pos[u]
        if best >= 0:
            matched |= (1 << v) | (1 << best)
            size += 1
    return size


def vi_run_pairs(adj_bits, decision_order, pref_pos) -> frozenset:
    """Same process, returning the matched pairs."""
    matched = 0
    pairs = []
    for v in decision_order:
        v = int(v)
        if matched >> v & 1:
            continue
        cand = adj_bits[v] & ~matched
        best = -1
        best_pos = None
        while cand:
            bit = cand & -cand
            cand ^= bit
            u = bit.bit_length() - 1
            if best_pos is None or pref_pos[u] < best_pos:
                best, best_pos = u, pref_pos[u]
        if best >= 0:
            matched |= (1 << v) | (1 << best)
            pairs.append((v, best) if v < best else (best, v))
    return frozenset(pairs)


def ranking_run_size(adj_bits, order) -> int:
    """Rank-driven run: one permutation is both decision and preference order."""
    n = len(order)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    return vi_run_size(adj_bits, order, pos)


def franking_run_size(adj_bits, pi, sigma) -> int:
    """Adversarial decision order pi with shared preference order sigma."""
    n = len(sigma)
    pos = [0] * n
    for i, v in enumerate(sigma):
        pos[v] = i
    return vi_run_size(adj_bits, pi, pos)


def all_permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64)


def batch_vi_sizes(g: Graph, decision_orders: np.ndarray,
                   pref_vertex_at: np.ndarray) -> np.ndarray:
    """Replay the vertex-iterative process over B rows at once.

    decision_orders[r, t] is the vertex deciding at step t in row r;
    pref_vertex_at[r, s] is the vertex at preference position s in row r.
    """
    n = g.vertex_count
    adj = np.array(adjacency_bitmasks(g), dtype=np.int64)
    rows = decision_orders.shape[0]
    matched = np.zeros(rows, dtype=np.int64)
    sizes = np.zeros(rows, dtype=np.int64)
    for t in range(n):
        a = decision_orders[:, t]
        deciding = (matched >> a) & 1 == 0
        cand = adj[a] & ~matched
        undone = deciding.copy()
        for s in range(n):
            u = pref_vertex_at[:, s]
            take = undone & ((cand >> u) & 1 == 1)
            if take.any():
                matched[take] |= (1 << a[take]) | (1 << u[take])
                sizes[take] += 1
                undone &= ~take
        # rows with no available neighbor simply skip their turn
    return sizes


def batch_ranking_sizes(g: Graph, orders: np.ndarray) -> np.ndarray:
    return batch_vi_sizes(g, orders, orders)


def batch_franking_sizes(g: Graph, pi, sigmas: np.ndarray) -> np.ndarray:
    rows = sigmas.shape[0]
    dec = np.tile(np.array(pi, dtype=np.int64), (rows, 1))
    return batch_vi_sizes(g, dec, sigmas)


def batch_rdo_sizes(g: Graph, decision_orders: np.ndarray) -> np.ndarray:
    rows = decision_orders.shape[0]
    ident = np.tile(np.arange(g.vertex_count, dtype=np.int64), (rows, 1))
    return batch_vi_sizes(g, decision_orders, ident)


# --- compiled sweep kernels ---------------------------------------------------
# Exhaustive family sweeps run billions of tiny greedy simulations; a compiled
# kernel keeps them at desk scale.  Everything falls back to the numpy batch
# path when numba is unavailable.

try:
    import numba

    @numba.njit(parallel=True, cache=True)
    def _ranking_totals_kernel(adjs, perms, pos):  # pragma: no cover - compiled
        graphs = adjs.shape[0]
        rows, n = perms.shape
        totals = np.zeros(graphs, dtype=np.int64)
        for gi in numba.prange(graphs):
            total = 0
            for p in range(rows):
                matched = 0
                for t in range(n):
                    v = perms[p, t]
                    if matched >> v & 1:
                        continue
                    cand = adjs[gi, v] & ~matched
                    if cand == 0:
                        continue
                    best = -1
                    best_pos = 127
                    for u in range(n):
                        if cand >> u & 1 and pos[p, u] < best_pos:
                            best = u
                            best_pos = pos[p, u]
                    matched |= (1 << v) | (1 << best)
                    total += 1
            totals[gi] = total
        return totals

    @numba.njit(parallel=True, cache=True)
    def _franking_min_total_kernel(adj, perms, pos):  # pragma: no cover
        rows, n = perms.shape
        worst = np.empty(rows, dtype=np.int64)
        for p1 in numba.prange(rows):
            total = 0
            for p2 in range(rows):
                matched = 0
                for t in range(n):
                    v = perms[p1, t]
                    if matched >> v & 1:
                        continue
                    cand = adj[v] & ~matched
                    if cand == 0:
                        continue
                    best = -1
                    best_pos = 127
                    for u in range(n):
                        if cand >> u & 1 and pos[p2, u] < best_pos:
                            best = u
                            best_pos = pos[p2, u]
                    matched |= (1 << v) | (1 << best)
                    total += 1
            worst[p1] = total
        return worst.min()

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False


def _positions(perms: np.ndarray) -> np.ndarray:
    rows, n = perms.shape
    pos = np.empty_like(perms)
    rows_idx = np.arange(rows)[:, None]
    pos[rows_idx, perms] = np.arange(n)[None, :]
    return pos


def ranking_totals(graphs: list, n: int) -> np.ndarray:
    """Sum of matching sizes over all rank orders, per graph."""
    perms = all_permutations(n)
    adjs = np.array([adjacency_bitmasks(g) for g in graphs], dtype=np.int64)
    if HAVE_NUMBA:
        return _ranking_totals_kernel(adjs, perms.astype(np.int64),
                                      _positions(perms).astype(np.int64))
    return np.array([int(batch_ranking_sizes(g, perms).sum()) for g in graphs],
                    dtype=np.int64)


def franking_worst_order_total(g: Graph, n: int) -> int:
    """Min over decision orders of the total matching size over all
    preference orders."""
    perms = all_permutations(n)
    if HAVE_NUMBA:
        adj = np.array(adjacency_bitmasks(g), dtype=np.int64)
        return int(_franking_min_total_kernel(adj, perms.astype(np.int64),
                                              _positions(perms).astype(np.int64)))
    best = None
    for pi in perms:
        total = int(batch_franking_sizes(g, tuple(int(v) for v in pi), perms).sum())
        best = total if best is None else min(best, total)
    return best
