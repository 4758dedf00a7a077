"""Exact and Monte-Carlo approximation-ratio estimation, exhaustive instance
sweeps, adversarial decision-order search, and the discrete uniform-density
bounding check."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import fastsim
from .engine import ALGORITHM_KINDS, build_algorithm_list, greedy_match
from .graph import Graph, maximum_matching_size
from .rng import make_rng, split_seed

_PERMUTATION_KINDS = {"RANKING", "RDO", "FRANKING"}
_HEAVY_KINDS = {"UUR", "MRG", "IRP", "GREEDY"}
_PERMUTATION_CAP = 8
_HEAVY_CAP = 6


@dataclass(frozen=True)
class RatioEstimate:
    mean: float
    trials: int
    std_error: float
    exact: bool

    def __post_init__(self):
        if self.exact and self.std_error != 0.0:
            raise ValueError("exact estimates carry no standard error")


def _check_scale(g: Graph, kind: str) -> None:
    cap = _PERMUTATION_CAP if kind in _PERMUTATION_KINDS else _HEAVY_CAP
    if g.vertex_count > cap:
        raise ValueError(
            f"{kind} exact enumeration is capped at {cap} vertices, "
            f"got {g.vertex_count}")


def _irp_expected_size(adj_bits, decision_order) -> Fraction:
    """Exact expectation for independent uniform preferences: a deciding
    vertex picks each unmatched neighbor with equal probability."""
    order = tuple(decision_order)

    @lru_cache(maxsize=None)
    def rec(i: int, matched: int) -> Fraction:
        if i == len(order):
            return Fraction(0)
        v = order[i]
        if matched >> v & 1:
            return rec(i + 1, matched)
        cand = adj_bits[v] & ~matched
        if not cand:
            return rec(i + 1, matched)
        total = Fraction(0)
        count = 0
        while cand:
            bit = cand & -cand
            cand ^= bit
            count += 1
            total += 1 + rec(i + 1, matched | (1 << v) | bit)
        return total / count

    result = rec(0, 0)
    rec.cache_clear()
    return result


def exact_expected_ratio(g: Graph, kind: str, adversarial_order=None,
                         method: str = "auto") -> RatioEstimate:
    """Average matching size over the full randomness of the order family,
    divided by the maximum matching size.

    method picks the evaluation route for the permutation-driven kinds:
    "engine" runs the query-commit engine per enumerated permutation, "direct"
    the literal vertex-iterative transcription, "batch" its numpy form.
    """
    if kind not in ALGORITHM_KINDS:
        raise ValueError(f"unknown algorithm kind {kind!r}")
    _check_scale(g, kind)
    n = g.vertex_count
    opt = maximum_matching_size(g)
    if opt == 0:
        raise ValueError("graph has no edges; the ratio is undefined")
    adj_bits = fastsim.adjacency_bitmasks(g)
    if method == "auto":
        method = "batch"

    def engine_mean(lists):
        sizes = [greedy_match(g, ql).size for ql in lists]
        return Fraction(sum(sizes), len(sizes))

    if kind == "GREEDY":
        if adversarial_order is None:
            raise ValueError("GREEDY requires an adversarial decision order")
        ql = build_algorithm_list("GREEDY", g, adversarial_order)
        mean = Fraction(greedy_match(g, ql).size)
    elif kind == "IRP":
        if adversarial_order is None:
            raise ValueError("IRP requires an adversarial decision order")
        mean = _irp_expected_size(adj_bits, adversarial_order)
    elif kind == "MRG":
        total = Fraction(0)
        count = 0
        for pi in itertools.permutations(range(n)):
            total += _irp_expected_size(adj_bits, pi)
            count += 1
        mean = total / count
    elif kind == "UUR":
        perms = list(itertools.permutations(range(n)))
        total = 0
        for sigma in perms:
            pos = [0] * n
            for i, v in enumerate(sigma):
                pos[v] = i
            for pi in perms:
                total += fastsim.vi_run_size(adj_bits, pi, pos)
        mean = Fraction(total, len(perms) ** 2)
    elif kind == "RANKING":
        if method == "engine":
            from .engine import RankVector, ranking_list
            mean = engine_mean(
                ranking_list(RankVector.from_order(p))
                for p in itertools.permutations(range(n)))
        elif method == "direct":
            sizes = [fastsim.ranking_run_size(adj_bits, p)
                     for p in itertools.permutations(range(n))]
            mean = Fraction(sum(sizes), len(sizes))
        else:
            sizes = fastsim.batch_ranking_sizes(g, fastsim.all_permutations(n))
            mean = Fraction(int(sizes.sum()), len(sizes))
    elif kind == "RDO":
        if method == "engine":
            from .engine import vertex_iterative_list
            ident = tuple(range(n))
            mean = engine_mean(
                vertex_iterative_list(p, [ident] * n)
                for p in itertools.permutations(range(n)))
        elif method == "direct":
            ident = list(range(n))
            sizes = [fastsim.vi_run_size(adj_bits, p, ident)
                     for p in itertools.permutations(range(n))]
            mean = Fraction(sum(sizes), len(sizes))
        else:
            sizes = fastsim.batch_rdo_sizes(g, fastsim.all_permutations(n))
            mean = Fraction(int(sizes.sum()), len(sizes))
    else:  # FRANKING
        if adversarial_order is None:
            raise ValueError("FRANKING requires an adversarial decision order")
        if method == "engine":
            from .engine import RankVector, franking_list
            mean = engine_mean(
                franking_list(adversarial_order, RankVector.from_order(p))
                for p in itertools.permutations(range(n)))
        elif method == "direct":
            sizes = [fastsim.franking_run_size(adj_bits, adversarial_order, p)
                     for p in itertools.permutations(range(n))]
            mean = Fraction(sum(sizes), len(sizes))
        else:
            sizes = fastsim.batch_franking_sizes(g, adversarial_order,
                                                 fastsim.all_permutations(n))
            mean = Fraction(int(sizes.sum()), len(sizes))
    return RatioEstimate(float(mean / opt), 0, 0.0, True)


def monte_carlo_ratio(g: Graph, kind: str, adversarial_order=None,
                      trials: int = 1000, seed: int = 0) -> RatioEstimate:
    """Sample mean and standard error over independently seeded engine runs."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    opt = maximum_matching_size(g)
    ratios = np.empty(trials)
    for t in range(trials):
        ql = build_algorithm_list(kind, g, adversarial_order, split_seed(seed, t))
        ratios[t] = greedy_match(g, ql).size / opt
    se = float(ratios.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return RatioEstimate(float(ratios.mean()), trials, se, False)


def adversarial_order_search(g: Graph, kind: str):
    """Minimize the exact expected ratio over all decision orders."""
    if kind not in ("FRANKING", "GREEDY", "IRP"):
        raise ValueError("adversarial search applies to FRANKING, GREEDY, IRP")
    cap = _PERMUTATION_CAP if kind == "FRANKING" else _HEAVY_CAP
    if g.vertex_count > cap:
        raise ValueError(f"adversarial search for {kind} capped at {cap} vertices")
    best_pi = None
    best = None
    sigmas = fastsim.all_permutations(g.vertex_count) if kind == "FRANKING" else None
    adj_bits = fastsim.adjacency_bitmasks(g)
    opt = maximum_matching_size(g)
    for pi in itertools.permutations(range(g.vertex_count)):
        if kind == "FRANKING":
            sizes = fastsim.batch_franking_sizes(g, pi, sigmas)
            mean = Fraction(int(sizes.sum()), len(sizes))
        elif kind == "GREEDY":
            pos = [0] * g.vertex_count
            for i, v in enumerate(pi):
                pos[v] = i
            mean = Fraction(fastsim.vi_run_size(adj_bits, pi, pos))
        else:
            mean = _irp_expected_size(adj_bits, pi)
        ratio = mean / opt
        if best is None or ratio < best:
            best = ratio
            best_pi = pi
    return best_pi, RatioEstimate(float(best), 0, 0.0, True)


# --- exhaustive perfect-matching instance sweeps ----------------------------

def _pair_group(num_pairs: int):
    """Vertex permutations preserving the designated matching (2i, 2i+1)."""
    for pair_perm in itertools.permutations(range(num_pairs)):
        for flips in range(1 << num_pairs):
            perm = [0] * (2 * num_pairs)
            for i in range(num_pairs):
                j = pair_perm[i]
                swap = flips >> i & 1
                perm[2 * i] = 2 * j + swap
                perm[2 * i + 1] = 2 * j + 1 - swap
            yield perm


def _extra_pairs(num_pairs: int) -> list:
    n = 2 * num_pairs
    matching = {(2 * i, 2 * i + 1) for i in range(num_pairs)}
    return [(u, v) for u in range(n) for v in range(u + 1, n)
            if (u, v) not in matching]


def canonical_extra_masks(num_pairs: int) -> np.ndarray:
    """Orbit representatives of extra-edge subsets under the matching-
    preserving symmetry group; sweeping them covers the labeled family.

    Bit permutations are applied through per-byte lookup tables so the sweep
    over all subsets stays a handful of vectorized gathers per group element.
    """
    extras = _extra_pairs(num_pairs)
    m = len(extras)
    if m > 31:
        raise ValueError("family too large to enumerate")
    index = {e: i for i, e in enumerate(extras)}
    bit_perms = []
    for perm in _pair_group(num_pairs):
        mapping = [0] * m
        for i, (u, v) in enumerate(extras):
            a, b = perm[u], perm[v]
            mapping[i] = index[(a, b) if a < b else (b, a)]
        bit_perms.append(mapping)
    nbytes = (m + 7) // 8
    byte_values = np.arange(256, dtype=np.uint32)
    tables = []
    identity = list(range(m))
    for mapping in bit_perms:
        if mapping == identity:
            continue
        per_byte = []
        for byte in range(nbytes):
            table = np.zeros(256, dtype=np.uint32)
            for i in range(byte * 8, min(byte * 8 + 8, m)):
                table |= ((byte_values >> (i - byte * 8)) & 1).astype(np.uint32) \
                    << np.uint32(mapping[i])
            per_byte.append(table)
        tables.append(per_byte)
    # a subset is canonical iff no group element maps it strictly lower;
    # filtering survivors element by element keeps the arrays shrinking
    survivors = np.arange(1 << m, dtype=np.uint32)
    for per_byte in tables:
        image = per_byte[0][survivors & np.uint32(0xFF)]
        for byte in range(1, nbytes):
            chunk = (survivors >> np.uint32(8 * byte)) & np.uint32(0xFF)
            image |= per_byte[byte][chunk]
        survivors = survivors[image >= survivors]
    return survivors.astype(np.int64)


def perfect_matching_graphs(num_pairs: int, canonical: bool = True):
    """All graphs on the designated matching (2i, 2i+1) plus extra edges.

    canonical=True yields one representative per isomorphism orbit, which is
    exhaustive for any isomorphism-invariant property.
    """
    extras = _extra_pairs(num_pairs)
    matching = tuple((2 * i, 2 * i + 1) for i in range(num_pairs))
    if canonical:
        masks = canonical_extra_masks(num_pairs)
    else:
        masks = range(1 << len(extras))
    for mask in masks:
        mask = int(mask)
        edges = set(matching)
        for i, e in enumerate(extras):
            if mask >> i & 1:
                edges.add(e)
        yield Graph(2 * num_pairs, frozenset(edges), matching)


@dataclass
class DominanceReport:
    kind: str
    bound: float
    rows: list  # (instance_id, ratio, std_error, margin)
    min_margin: float
    holds: bool


def check_bound_dominance(graphs, kind: str, lp_bound: float,
                          adversarial_order=None, exact: bool = True,
                          trials: int = 0, seed: int = 0,
                          worst_pi: bool = False) -> DominanceReport:
    """Exact mode demands strict dominance over the bound; sampled mode allows
    four standard errors of slack."""
    rows = []
    min_margin = math.inf
    for idx, g in enumerate(graphs):
        if worst_pi:
            _, est = adversarial_order_search(g, kind)
        elif exact:
            order = adversarial_order
            if order is None and kind in ("FRANKING", "GREEDY", "IRP"):
                order = tuple(range(g.vertex_count))
            est = exact_expected_ratio(g, kind, order)
        else:
            est = monte_carlo_ratio(g, kind, adversarial_order, trials,
                                    split_seed(seed, idx))
        margin = est.mean - lp_bound + (0.0 if est.exact else 4 * est.std_error)
        rows.append((idx, est.mean, est.std_error, margin))
        min_margin = min(min_margin, margin)
    return DominanceReport(kind, lp_bound, rows, min_margin, min_margin >= 0)


def exhaustive_ranking_dominance(max_pairs: int, lp_bound: float) -> DominanceReport:
    """Exact expected ratio of every perfect-matching graph with up to
    max_pairs pairs (orbit representatives) against the bound."""
    rows = []
    min_margin = math.inf
    for pairs in range(1, max_pairs + 1):
        graphs = list(perfect_matching_graphs(pairs))
        totals = fastsim.ranking_totals(graphs, 2 * pairs)
        norm = math.factorial(2 * pairs) * pairs
        for idx, total in enumerate(totals):
            ratio = int(total) / norm
            margin = ratio - lp_bound
            rows.append(((pairs, idx), ratio, 0.0, margin))
            min_margin = min(min_margin, margin)
    return DominanceReport("RANKING", lp_bound, rows, min_margin, min_margin >= 0)


def exhaustive_franking_worst_dominance(max_pairs: int,
                                        lp_bound: float) -> DominanceReport:
    """Worst-decision-order exact ratio of every perfect-matching graph with
    up to max_pairs pairs against the bound."""
    rows = []
    min_margin = math.inf
    for pairs in range(1, max_pairs + 1):
        n = 2 * pairs
        norm = math.factorial(n) * pairs
        for idx, g in enumerate(perfect_matching_graphs(pairs)):
            ratio = fastsim.franking_worst_order_total(g, n) / norm
            margin = ratio - lp_bound
            rows.append(((pairs, idx), ratio, 0.0, margin))
            min_margin = min(min_margin, margin)
    return DominanceReport("FRANKING", lp_bound, rows, min_margin, min_margin >= 0)


# --- discrete analogue of the increasing-density lower bound ----------------

@dataclass(frozen=True)
class UniformBoundReport:
    lhs: Fraction
    rhs: Fraction
    min_suffix_start: int
    holds: bool


def uniform_bound_check(f_values, g_values) -> UniformBoundReport:
    """For a nonnegative non-decreasing density g on a uniform grid,
    sum(f*g) >= sum(g) * (worst suffix average of f), checked exactly."""
    f = [Fraction(x) for x in f_values]
    gd = [Fraction(x) for x in g_values]
    if len(f) != len(gd) or not f:
        raise ValueError("f and g must be equal-length non-empty tables")
    if any(x < 0 for x in gd):
        raise ValueError("g must be nonnegative")
    if any(gd[i] > gd[i + 1] for i in range(len(gd) - 1)):
        raise ValueError("g must be non-decreasing")
    m = len(f)
    lhs = sum(fi * gi for fi, gi in zip(f, gd))
    best = None
    best_c = 0
    for c in range(m):
        avg = Fraction(sum(f[c:]), m - c)
        if best is None or avg < best:
            best, best_c = avg, c
    rhs = sum(gd) * best
    return UniformBoundReport(lhs, rhs, best_c, lhs >= rhs)


def random_uniform_bound_trials(count: int, grid: int, seed: int) -> int:
    """Run the exact check on random rational tables; returns failures."""
    rng = make_rng(seed)
    failures = 0
    for _ in range(count):
        f = [Fraction(int(rng.integers(0, 1000)), 1000) for _ in range(grid)]
        steps = [Fraction(int(rng.integers(0, 100)), 100) for _ in range(grid)]
        gd = []
        acc = Fraction(0)
        for s in steps:
            acc += s
            gd.append(acc)
        if not uniform_bound_check(f, gd).holds:
            failures += 1
    return failures
