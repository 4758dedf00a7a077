"""Registered structural checks, instance generation, and the verification
suite runner.  Every check raises CheckFailed (or any exception) on a
violation; the suite records a self-contained, replayable witness per failure.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field

from . import fastsim
from .engine import (QueryList, RankVector, exclude, franking_list,
                     fully_online_kept_edges, fully_online_match, greedy_match,
                     ranking_list, vertex_iterative_list)
from .graph import (Graph, generate_odd_girth_graph,
                    generate_perfect_matching_graph, graph_from_text,
                    graph_to_text, maximum_matching_size, odd_girth)
from .harness import exact_expected_ratio, random_uniform_bound_trials
from .rng import make_rng, split_seed
from .structure import (AnalysisContext, alternating_path, backup_of,
                        blockers_of, franking_profile, insertion_outcomes,
                        order_symmetric_difference, ranking_profile,
                        thresholds, worse_off)


class CheckFailed(AssertionError):
    pass


@dataclass(frozen=True)
class Instance:
    """A reproducible (graph, query-list) scenario for one check run."""

    graph: Graph
    kind: str  # ranking | franking | vi
    ranks: tuple | None = None
    decision_order: tuple | None = None
    pref_orders: tuple | None = None
    arrivals: tuple | None = None
    deadlines: tuple | None = None
    min_odd_girth: int | None = None

    def rank_vector(self) -> RankVector:
        return RankVector(self.ranks)

    def build_list(self) -> QueryList:
        if self.kind == "ranking":
            return ranking_list(self.rank_vector())
        if self.kind == "franking":
            return franking_list(self.decision_order, self.rank_vector())
        if self.kind == "vi":
            return vertex_iterative_list(self.decision_order, self.pref_orders)
        raise ValueError(f"unknown list kind {self.kind!r}")

    def to_json_dict(self) -> dict:
        return {
            "graph": graph_to_text(self.graph),
            "kind": self.kind,
            "ranks": self.ranks,
            "decision_order": self.decision_order,
            "pref_orders": self.pref_orders,
            "arrivals": self.arrivals,
            "deadlines": self.deadlines,
            "min_odd_girth": self.min_odd_girth,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Instance":
        def tup(x):
            if x is None:
                return None
            return tuple(tuple(e) if isinstance(e, list) else e for e in x)

        return cls(graph_from_text(data["graph"]), data["kind"],
                   tup(data.get("ranks")), tup(data.get("decision_order")),
                   tup(data.get("pref_orders")), tup(data.get("arrivals")),
                   tup(data.get("deadlines")), data.get("min_odd_girth"))


def make_instance(seed: int, flavor: str) -> Instance:
    rng = make_rng(seed)
    if flavor == "oddgirth":
        girth = int(rng.choice((5, 7)))
        pairs = int(rng.integers((girth + 1) // 2, 6))
        g = generate_odd_girth_graph(pairs, girth, 200, split_seed(seed, 1))
        x = RankVector.sample(g.vertex_count, rng)
        return Instance(g, "ranking", x.ranks, min_odd_girth=girth)
    if flavor.startswith("small-"):
        flavor = flavor[len("small-"):]
        pairs = int(rng.integers(1, 4))
    else:
        pairs = int(rng.integers(2, 6))
    p = float(rng.uniform(0.05, 0.8))
    g = generate_perfect_matching_graph(pairs, p, split_seed(seed, 1))
    n = g.vertex_count
    x = RankVector.sample(n, rng)
    if flavor == "any":
        flavor = ("ranking", "franking", "vi")[int(rng.integers(0, 3))]
    if flavor == "ranking":
        return Instance(g, "ranking", x.ranks)
    if flavor == "franking":
        return Instance(g, "franking", x.ranks, tuple(int(v) for v in rng.permutation(n)))
    if flavor == "vi":
        return Instance(
            g, "vi", x.ranks, tuple(int(v) for v in rng.permutation(n)),
            tuple(tuple(int(v) for v in rng.permutation(n)) for _ in range(n)))
    if flavor == "online":
        return Instance(g, "franking", x.ranks,
                        arrivals=tuple(int(v) for v in rng.permutation(n)),
                        deadlines=tuple(int(v) for v in rng.permutation(n)))
    raise ValueError(f"unknown flavor {flavor!r}")


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise CheckFailed(message)


def _partial_available(trace, t: int, excluded) -> frozenset:
    matched = set()
    for pair, tm in trace.query_time_of.items():
        if tm < t:
            matched.update(pair)
    return frozenset(v for v in range(trace.num_vertices)
                     if v not in matched and v not in excluded)


def _partial_pairs(trace, t: int) -> frozenset:
    return frozenset(p for p, tm in trace.query_time_of.items() if tm < t)


# --- checks ------------------------------------------------------------------

def check_alternating_path(inst: Instance, runner) -> None:
    """The run/rerun difference is a single path from the excluded vertex with
    alternating sides, increasing query times, and availability sets that
    agree everywhere except at the moving path end."""
    g = inst.graph
    qlist = inst.build_list()
    horizon = g.vertex_count * (g.vertex_count - 1) + 1
    trace_full = runner(g, qlist)
    for v in range(g.vertex_count):
        trace_excl = runner(g, exclude(qlist, {v}))
        path = order_symmetric_difference(trace_full.matched_pairs,
                                          trace_excl.matched_pairs, v)
        last = -1
        for i in range(path.length):
            pair = path.edge(i)
            t = (trace_full if i % 2 == 0 else trace_excl).query_time_of[pair]
            _require(t > last, f"times not increasing along path at {pair}")
            last = t
        for t in range(horizon):
            partial = order_symmetric_difference(
                _partial_pairs(trace_full, t), _partial_pairs(trace_excl, t), v)
            end = partial.vertices[-1]
            a_full = _partial_available(trace_full, t, qlist.excluded)
            a_excl = _partial_available(trace_excl, t, qlist.excluded | {v})
            if partial.length % 2 == 0:
                _require(a_full == a_excl | {end} and end not in a_excl,
                         f"availability mismatch at t={t}, v={v}")
            else:
                _require(a_excl == a_full | {end} and end not in a_full,
                         f"availability mismatch at t={t}, v={v}")


def check_backup_worse_off(inst: Instance, runner) -> None:
    """A worse-off vertex lands exactly on its backup (or goes unmatched)."""
    g = inst.graph
    qlist = inst.build_list()
    trace_full = runner(g, qlist)
    for v in range(g.vertex_count):
        reduced = exclude(qlist, {v})
        trace_excl = runner(g, reduced)
        for u in range(g.vertex_count):
            if u == v:
                continue
            # u worse off by introducing v: compare to backup in the reduced list
            if worse_off(trace_full, trace_excl, u) and trace_excl.is_matched(u):
                b = backup_of(g, reduced, u)
                _require(trace_full.partner_of(u) == b,
                         f"introducing {v}: {u} matched "
                         f"{trace_full.partner_of(u)} instead of backup {b}")
            # u worse off by removing v: compare to backup in the full list
            if worse_off(trace_excl, trace_full, u) and trace_full.is_matched(u):
                b = backup_of(g, qlist, u)
                _require(trace_excl.partner_of(u) == b,
                         f"removing {v}: {u} matched "
                         f"{trace_excl.partner_of(u)} instead of backup {b}")


def check_backups_in_path(inst: Instance, runner) -> None:
    """Along the path, each vertex's successor is its backup in the list where
    it is worse off, and the terminal vertex has no backup there."""
    g = inst.graph
    qlist = inst.build_list()
    for v in range(g.vertex_count):
        reduced = exclude(qlist, {v})
        path = alternating_path(g, qlist, v)
        if path.is_degenerate:
            continue
        verts = path.vertices
        for i, u in enumerate(verts):
            if i == 0:
                continue
            in_list = qlist if i % 2 == 1 else reduced
            b = backup_of(g, in_list, u)
            expected = verts[i + 1] if i + 1 < len(verts) else None
            _require(b == expected,
                     f"path {verts}: backup of {u} is {b}, expected {expected}")


def check_blockers_in_path_one(inst: Instance, runner) -> None:
    """An unmatched path end is the victim of every earlier even-indexed
    path vertex."""
    g = inst.graph
    qlist = inst.build_list()
    for v in range(g.vertex_count):
        path = alternating_path(g, qlist, v)
        if path.is_degenerate or path.length % 2 != 0:
            continue
        u = path.vertices[-1]
        blockers = blockers_of(g, qlist, u)
        for i in range(0, path.length, 2):
            w = path.vertices[i]
            _require(w in blockers,
                     f"path {path.vertices}: {w} does not unblock {u}")


def check_blockers_in_path_two(inst: Instance, runner) -> None:
    """Re-ranking the pivot so it ends unmatched (while keeping it ahead of
    the worse-off neighbor's backup) makes it the victim of every odd-indexed
    path vertex before that neighbor."""
    g = inst.graph
    if inst.kind != "ranking":
        raise CheckFailed("ranking instances only")
    x = inst.rank_vector()
    qlist = ranking_list(x)
    for v in range(g.vertex_count):
        path = alternating_path(g, qlist, v)
        if path.length < 2:
            continue
        verts = path.vertices
        for j in range(2, len(verts), 2):
            u = verts[j]
            if not g.has_edge(u, v):
                continue
            b = verts[j + 1] if j + 1 < len(verts) else None
            for outcome in insertion_outcomes(g, x, v, AnalysisContext.ranking()):
                xprime = outcome.ranks
                lprime = ranking_list(xprime)
                if outcome.trace.is_matched(v):
                    continue
                if b is not None and \
                        lprime.pair_time(u, v) > lprime.pair_time(u, b):
                    continue
                for i in range(1, j, 2):
                    rerun = greedy_match(g, exclude(lprime, {verts[i]}))
                    _require(rerun.is_matched(v),
                             f"re-ranked {v} at {xprime.ranks[v]:.4f}: removing "
                             f"{verts[i]} does not rematch it (path {verts})")


def check_victim_of_match(inst: Instance, runner) -> None:
    """An unmatched vertex preferred by its neighbor over that neighbor's
    backup is the victim of the neighbor's match."""
    g = inst.graph
    qlist = inst.build_list()
    trace = greedy_match(g, qlist)
    for v in range(g.vertex_count):
        if trace.is_matched(v) or v in qlist.excluded:
            continue
        for u in g.neighbors(v):
            if u in qlist.excluded:
                continue
            reduced = exclude(qlist, {v})
            rerun = greedy_match(g, reduced)
            w = rerun.partner_of(u)
            if w is None:
                continue
            b = backup_of(g, reduced, u)
            if b is not None and qlist.pair_time(u, v) > qlist.pair_time(u, b):
                continue
            blockers = blockers_of(g, qlist, v)
            _require(w in blockers,
                     f"{v} unmatched, neighbor {u} matched {w}: not a blocker")


def check_ranking_path_monotone(inst: Instance, runner) -> None:
    """Ranks strictly increase every two steps along rank-driven paths."""
    g = inst.graph
    if inst.kind != "ranking":
        raise CheckFailed("ranking instances only")
    x = inst.rank_vector()
    qlist = ranking_list(x)
    for v in range(g.vertex_count):
        verts = alternating_path(g, qlist, v).vertices
        for i in range(len(verts) - 2):
            _require(x.ranks[verts[i]] < x.ranks[verts[i + 2]],
                     f"path {verts}: rank not increasing at step {i}")


def check_ranking_backup_rank(inst: Instance, runner) -> None:
    """Under the rank-driven order a backup always outranks the match."""
    g = inst.graph
    x = inst.rank_vector()
    qlist = ranking_list(x)
    trace = greedy_match(g, qlist)
    for u in range(g.vertex_count):
        v = trace.partner_of(u)
        if v is None:
            continue
        b = backup_of(g, qlist, u)
        if b is not None:
            _require(x.ranks[v] < x.ranks[b],
                     f"backup {b} of {u} does not outrank match {v}")


def check_ranking_match_guarantees(inst: Instance, runner) -> None:
    """Insertion-rank guarantees of the rank-driven order."""
    g = inst.graph
    x = inst.rank_vector()
    ctx = AnalysisContext.ranking()
    for ustar in range(g.vertex_count):
        outcomes = insertion_outcomes(g, x, ustar, ctx)
        base = outcomes[0].base_trace
        # monotone match rank of the inserted vertex as its rank decreases
        best_future = None
        for oc in reversed(outcomes):
            w = oc.trace.partner_of(ustar)
            if best_future is not None:
                _require(w is not None
                         and oc.ranks.ranks[w] <= best_future + 1e-12,
                         "inserted vertex matched worse after a promotion")
            if w is not None:
                r = oc.ranks.ranks[w]
                best_future = r if best_future is None else min(best_future, r)
        for u in range(g.vertex_count):
            if u == ustar:
                continue
            v = base.partner_of(u)
            # guarantees about the inserted vertex's own match assume it is a
            # designated partner of u, hence adjacent
            adjacent = g.has_edge(u, ustar)
            for oc in outcomes:
                rep = oc.representative
                w = oc.trace.partner_of(ustar)
                w_rank = oc.ranks.ranks[w] if w is not None else None
                if v is None:
                    if adjacent:
                        _require(w_rank is not None and w_rank <= x.ranks[u],
                                 f"unmatched {u}: inserted match rank {w_rank} "
                                 f"exceeds {x.ranks[u]}")
                    continue
                if adjacent and rep < x.ranks[v]:
                    _require(w_rank is not None and w_rank <= x.ranks[u],
                             f"low insertion: match rank {w_rank} > x_u")
                if rep > x.ranks[u]:
                    m = oc.trace.partner_of(u)
                    _require(m is not None
                             and oc.ranks.ranks[m] <= x.ranks[v],
                             f"high insertion moved {u} below its match")
                if worse_off(oc.trace, oc.base_trace, u):
                    _require(w_rank is not None and w_rank <= x.ranks[v],
                             "worse-off guarantee violated")


def check_profile_monotonicity(inst: Instance, runner) -> None:
    """Demoting the match's rank below the backup leaves the matching fixed;
    under the adversarial order this needs the match to be active."""
    g = inst.graph
    x = inst.rank_vector()
    if inst.kind == "ranking":
        ctx = AnalysisContext.ranking()
    elif inst.kind == "franking":
        ctx = AnalysisContext.franking(inst.decision_order)
    else:
        raise CheckFailed("ranking or franking instances only")
    for ustar in range(g.vertex_count):
        base_list = exclude(ctx.list_for(x), {ustar})
        trace = greedy_match(g, base_list)
        for u in range(g.vertex_count):
            if u == ustar:
                continue
            v = trace.partner_of(u)
            if v is None or v == ustar:
                continue
            if inst.kind == "franking":
                pair = (u, v) if u < v else (v, u)
                if trace.active_endpoint_of[pair] != u:
                    continue
            b = backup_of(g, base_list, u)
            ceiling = x.ranks[b] if b is not None else 1.0 + 1e-9
            ctx_v = AnalysisContext(ctx.kind, ctx.decision_order,
                                    frozenset({ustar}))
            for oc in insertion_outcomes(g, x, v, ctx_v):
                if oc.representative < x.ranks[v] or oc.representative >= ceiling:
                    continue
                _require(oc.trace.matched_pairs == trace.matched_pairs,
                         f"demoting {v} to {oc.representative:.4f} changed "
                         f"the matching for {u}")


def check_franking_match_guarantees(inst: Instance, runner) -> None:
    """Insertion guarantees for the adversarial decision order."""
    g = inst.graph
    if inst.kind != "franking":
        raise CheckFailed("franking instances only")
    x = inst.rank_vector()
    ctx = AnalysisContext.franking(inst.decision_order)
    slot = {v: i for i, v in enumerate(inst.decision_order)}
    for ustar in range(g.vertex_count):
        outcomes = insertion_outcomes(g, x, ustar, ctx)
        base = outcomes[0].base_trace

        def tag(oc):
            w = oc.trace.partner_of(ustar)
            if w is None:
                return None
            pair = (ustar, w) if ustar < w else (w, ustar)
            return "A" if oc.trace.active_endpoint_of[pair] == ustar else "P"

        passive_flags = [tag(oc) == "P" for oc in outcomes]
        for i in range(len(outcomes) - 1):
            _require(passive_flags[i] or not passive_flags[i + 1],
                     "passive insertion region is not downward closed")
        for u in range(g.vertex_count):
            if u == ustar or slot[u] >= slot[ustar]:
                continue
            v = base.partner_of(u)
            if v is None:
                continue
            pair = (u, v) if u < v else (v, u)
            u_active = base.active_endpoint_of[pair] == u
            adjacent = g.has_edge(u, ustar)
            for oc in outcomes:
                if adjacent and u_active and oc.representative < x.ranks[v]:
                    _require(tag(oc) == "P",
                             "low insertion against an active match must be passive")
                if tag(oc) in (None, "A"):
                    _require(oc.trace.partner_of(u) == v,
                             "active/unmatched insertion changed the match")


def check_franking_profiles(inst: Instance, runner) -> None:
    """Observed tag combinations stay within the six feasible profiles."""
    g = inst.graph
    if inst.kind != "franking":
        raise CheckFailed("franking instances only")
    x = inst.rank_vector()
    order = inst.decision_order
    slot = {v: i for i, v in enumerate(order)}
    for u in range(g.vertex_count):
        for ustar in range(g.vertex_count):
            if ustar == u or slot[u] >= slot[ustar]:
                continue
            franking_profile(g, order, x, u, ustar)  # raises on violation


def check_ranking_profiles(inst: Instance, runner) -> None:
    """Rank-driven profiles: backup outranks match; tags consistent."""
    g = inst.graph
    x = inst.rank_vector()
    for u in range(g.vertex_count):
        for ustar in range(g.vertex_count):
            if ustar != u:
                ranking_profile(g, x, u, ustar)


def check_theta_ranking(inst: Instance, runner) -> None:
    """Impacting-rank facts for the rank-driven order."""
    g = inst.graph
    x = inst.rank_vector()
    ctx = AnalysisContext.ranking()
    for ustar in range(g.vertex_count):
        outcomes = insertion_outcomes(g, x, ustar, ctx)
        base = outcomes[0].base_trace
        for u in range(g.vertex_count):
            if u == ustar or not base.is_matched(u):
                continue
            rep = thresholds(g, x, u, ustar, ctx, outcomes=outcomes)
            v = base.partner_of(u)
            _require(rep.theta0 <= x.ranks[u] + 1e-12,
                     f"impacting rank {rep.theta0} above the vertex rank")
            _require(rep.theta3 <= rep.theta0 + 1e-12, "theta3 above theta0")
            worse_paths = [
                (oc, w) for oc, w in zip(outcomes, rep.witnesses)
                if w.observed_worse_off]
            for oc, w in worse_paths:
                path = w.path_vertices
                _require(path is not None and len(path) >= 3,
                         "worse-off interval with a short path")
                _require(oc.ranks.ranks[path[2]] <= rep.theta0 + 1e-12,
                         "third path vertex outranks the impacting rank")
                if 0 < rep.theta0 < x.ranks[u]:
                    wm = oc.trace.partner_of(ustar)
                    _require(wm is not None and wm != v,
                             "inserted vertex unmatched or matched to the "
                             "observed vertex's partner in a worse-off interval")
            below = rep.witness_interval_below(rep.theta0)
            if rep.theta0 > 0:
                _require(below is not None and below.observed_worse_off,
                         "no worse-off interval realizes the impacting rank")
                _require(below.path_vertices is not None
                         and math.isclose(x.ranks[below.path_vertices[2]],
                                          rep.theta0),
                         "third vertex below the threshold misses theta0")
            if rep.theta3 > 0:
                wb = rep.witness_interval_below(rep.theta3)
                _require(wb is not None and wb.observed_worse_off,
                         "no interval realizes theta3")
                _require(wb.path_vertices is not None
                         and len(wb.path_vertices) >= 7,
                         "theta3 interval with a path shorter than six edges")
                _require(math.isclose(x.ranks[wb.path_vertices[2]], rep.theta3),
                         "third vertex below theta3 misses theta3")
            for oc, w in worse_paths:
                path = w.path_vertices
                if len(path) < 3 or path[-1] != u:
                    continue
                if oc.ranks.ranks[path[-3]] > rep.theta0:
                    _require(len(path) >= 7,
                             "long-path interval with fewer than six edges")
                    _require(x.ranks[path[2]] <= rep.theta3 + 1e-12,
                             "third vertex outranks theta3 on a long-path interval")


def check_theta_franking(inst: Instance, runner) -> None:
    """Impacting/marginal-rank facts for the adversarial order."""
    g = inst.graph
    if inst.kind != "franking":
        raise CheckFailed("franking instances only")
    x = inst.rank_vector()
    order = inst.decision_order
    ctx = AnalysisContext.franking(order)
    slot = {v: i for i, v in enumerate(order)}
    for ustar in range(g.vertex_count):
        outcomes = insertion_outcomes(g, x, ustar, ctx)
        base = outcomes[0].base_trace
        for u in range(g.vertex_count):
            if u == ustar or slot[u] >= slot[ustar] or not base.is_matched(u):
                continue
            rep = thresholds(g, x, u, ustar, ctx, outcomes=outcomes)
            _require(rep.theta0 <= rep.theta1 + 1e-12,
                     "impacting rank above marginal rank")
            v = base.partner_of(u)
            pair = (u, v) if u < v else (v, u)
            if base.active_endpoint_of[pair] == u and g.has_edge(u, ustar):
                _require(rep.theta1 >= x.ranks[v] - 1e-12,
                         "marginal rank below an active match's rank")
            if rep.theta0 > 0:
                below = rep.witness_interval_below(rep.theta0)
                _require(below is not None and below.observed_worse_off,
                         "no worse-off interval realizes the impacting rank")
                path = below.path_vertices
                _require(path is not None and len(path) >= 3,
                         "worse-off witness with a short path")
                u2 = path[2]
                _require(u2 != ustar
                         and math.isclose(x.ranks[u2], rep.theta0),
                         "third vertex below the threshold misses theta0")
                bpair = (path[1], u2) if path[1] < u2 else (u2, path[1])
                _require(base.active_endpoint_of[bpair] == path[1],
                         "witness third vertex is not passively matched")


def check_theta1u_split(inst: Instance, runner) -> None:
    """The observed vertex's own marginal rank splits its rank axis into a
    passive-profile prefix and an active/unmatched suffix."""
    g = inst.graph
    if inst.kind != "franking":
        raise CheckFailed("franking instances only")
    x = inst.rank_vector()
    order = inst.decision_order
    slot = {v: i for i, v in enumerate(order)}
    for (u, ustar) in g.designated_perfect_matching or ():
        if slot[u] > slot[ustar]:
            u, ustar = ustar, u
        ctx_u = AnalysisContext.franking(order, extra_excluded={ustar})
        rep = thresholds(g, x, None, u, ctx_u)
        for w in rep.witnesses:
            if w.high <= rep.theta1:
                _require(w.inserted_passive,
                         f"interval below the split {rep.theta1} is not passive")
            else:
                _require(not w.inserted_passive,
                         f"interval above the split {rep.theta1} is passive")


def check_insertion_piecewise(inst: Instance, runner) -> None:
    """Outcomes are constant inside every insertion interval."""
    g = inst.graph
    if inst.kind == "franking":
        ctx = AnalysisContext.franking(inst.decision_order)
    else:
        ctx = AnalysisContext.ranking()
    x = inst.rank_vector()
    rng = make_rng(hash(inst.ranks) & ((1 << 32) - 1))
    for ustar in range(g.vertex_count):
        for oc in insertion_outcomes(g, x, ustar, ctx):
            for _ in range(2):
                t = float(rng.uniform(0.0, 1.0))
                probe = oc.low + (oc.high - oc.low) * (0.05 + 0.9 * t)
                if probe in x.ranks or probe in (oc.low, oc.high):
                    continue
                trace = greedy_match(g, ctx.list_for(x.with_rank(ustar, probe)))
                _require(trace.matched_pairs == oc.trace.matched_pairs,
                         f"outcome not constant on ({oc.low}, {oc.high})")


def check_odd_girth_paths(inst: Instance, runner) -> None:
    """Unmatching a designated partner needs a path as long as the girth
    bound allows."""
    g = inst.graph
    if inst.min_odd_girth is None:
        raise CheckFailed("odd-girth instances only")
    girth = odd_girth(g)
    _require(girth >= inst.min_odd_girth, "generated graph misses its girth bound")
    x = inst.rank_vector()
    ctx = AnalysisContext.ranking()
    for (a, b) in g.designated_perfect_matching:
        for u, ustar in ((a, b), (b, a)):
            for oc in insertion_outcomes(g, x, ustar, ctx):
                if oc.trace.is_matched(u):
                    continue
                path = order_symmetric_difference(
                    oc.trace.matched_pairs, oc.base_trace.matched_pairs, ustar)
                if path.is_degenerate or path.vertices[-1] != u:
                    continue
                _require(path.length + 1 >= girth,
                         f"path {path.vertices} closes an odd cycle shorter "
                         f"than the girth {girth}")


def check_fully_online_equivalence(inst: Instance, runner) -> None:
    """Deadline-driven matching equals the adversarial-order run on the kept
    subgraph, realization by realization."""
    g = inst.graph
    if inst.arrivals is None or inst.deadlines is None:
        raise CheckFailed("online instances only")
    x = inst.rank_vector()
    engine_log = logging.getLogger("qcmatch.engine")
    level = engine_log.level
    engine_log.setLevel(logging.ERROR)  # generated instances drop edges on purpose
    try:
        for interleave in ("front", "alternate"):
            online = fully_online_match(g, inst.arrivals, inst.deadlines,
                                        ranks=x, interleave=interleave)
            kept = fully_online_kept_edges(g, inst.arrivals, inst.deadlines,
                                           interleave)
            offline = greedy_match(Graph(g.vertex_count, kept),
                                   franking_list(inst.deadlines, x))
            _require(online.matched_pairs == offline.matched_pairs,
                     f"{interleave}: online {sorted(online.matched_pairs)} != "
                     f"offline {sorted(offline.matched_pairs)}")
    finally:
        engine_log.setLevel(level)


def check_engine_removal_monotone(inst: Instance, runner) -> None:
    """Excluding a vertex never increases the matching size."""
    g = inst.graph
    qlist = inst.build_list()
    trace = runner(g, qlist)
    for v in range(g.vertex_count):
        rerun = runner(g, exclude(qlist, {v}))
        _require(trace.size >= rerun.size,
                 f"excluding {v} grew the matching {trace.size}->{rerun.size}")


def check_engine_maximality(inst: Instance, runner) -> None:
    """Output is a maximal matching and at least half of optimum."""
    g = inst.graph
    qlist = inst.build_list()
    trace = runner(g, qlist)
    matched = {v for pair in trace.matched_pairs for v in pair}
    for (u, v) in g.edges:
        _require(u in matched or v in matched or u in qlist.excluded
                 or v in qlist.excluded, f"edge ({u},{v}) left unmatched")
    _require(2 * trace.size >= maximum_matching_size(g),
             "greedy result below half of optimum")
    again = runner(g, qlist)
    _require(again.matched_pairs == trace.matched_pairs
             and again.query_time_of == trace.query_time_of,
             "rerun of identical inputs differs")


def check_engine_oracle(inst: Instance, runner) -> None:
    """Query-list engine equals the literal vertex-iterative transcription on
    every enumerated permutation."""
    g = inst.graph
    if g.vertex_count > 6:
        raise CheckFailed("oracle check capped at 6 vertices")
    import itertools
    adj_bits = fastsim.adjacency_bitmasks(g)
    n = g.vertex_count
    kind = inst.kind
    for perm in itertools.permutations(range(n)):
        x = RankVector.from_order(perm)
        pos = [0] * n
        for i, v in enumerate(perm):
            pos[v] = i
        if kind == "franking":
            engine = runner(g, franking_list(inst.decision_order, x))
            direct = fastsim.vi_run_pairs(adj_bits, inst.decision_order, pos)
        else:
            engine = runner(g, ranking_list(x))
            direct = fastsim.vi_run_pairs(adj_bits, perm, pos)
        _require(engine.matched_pairs == direct,
                 f"engine disagrees with the direct run on {perm}")


def check_uniform_bound(inst: Instance, runner) -> None:
    seed = hash(inst.ranks) & ((1 << 32) - 1)
    failures = random_uniform_bound_trials(20, 32, seed)
    _require(failures == 0, f"{failures} uniform-bound violations")


CHECKS = {
    "alternating-path": ("any", check_alternating_path),
    "backup-worse-off": ("any", check_backup_worse_off),
    "backups-in-path": ("any", check_backups_in_path),
    "blockers-in-path-1": ("any", check_blockers_in_path_one),
    "blockers-in-path-2": ("ranking", check_blockers_in_path_two),
    "victim-of-match": ("any", check_victim_of_match),
    "ranking-path-monotone": ("ranking", check_ranking_path_monotone),
    "ranking-backup-rank": ("ranking", check_ranking_backup_rank),
    "ranking-match-guarantees": ("ranking", check_ranking_match_guarantees),
    "ranking-profiles": ("ranking", check_ranking_profiles),
    "profile-monotonicity": ("any", check_profile_monotonicity),
    "franking-match-guarantees": ("franking", check_franking_match_guarantees),
    "franking-profiles": ("franking", check_franking_profiles),
    "theta-ranking": ("ranking", check_theta_ranking),
    "theta-franking": ("franking", check_theta_franking),
    "theta1u-split": ("franking", check_theta1u_split),
    "insertion-piecewise": ("any", check_insertion_piecewise),
    "odd-girth-paths": ("oddgirth", check_odd_girth_paths),
    "fully-online-equiv": ("online", check_fully_online_equivalence),
    "engine-removal-monotone": ("any", check_engine_removal_monotone),
    "engine-maximality": ("any", check_engine_maximality),
    "engine-oracle": ("any", check_engine_oracle),
    "uniform-bound": ("ranking", check_uniform_bound),
}


@dataclass
class CheckOutcome:
    name: str
    instances: int
    failures: list = field(default_factory=list)  # (instance_index, message, witness)

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass
class SuiteReport:
    outcomes: dict

    @property
    def ok(self) -> bool:
        return all(o.ok for o in self.outcomes.values())

    def to_json(self) -> str:
        return json.dumps({
            name: {"instances": o.instances,
                   "failures": [{"index": i, "message": m} for (i, m, _) in o.failures]}
            for name, o in self.outcomes.items()
        }, indent=2)


def run_check_on_instance(name: str, inst: Instance, runner=greedy_match):
    flavor, fn = CHECKS[name]
    fn(inst, runner)


def witness_text(name: str, seed: int, inst: Instance, message: str) -> str:
    return json.dumps({"check": name, "seed": seed, "message": message,
                       "instance": inst.to_json_dict()}, indent=2)


def replay_witness(text: str, runner=greedy_match) -> str | None:
    """Re-run a dumped witness; returns the failure message or None."""
    data = json.loads(text)
    inst = Instance.from_json_dict(data["instance"])
    try:
        run_check_on_instance(data["check"], inst, runner)
    except Exception as exc:  # noqa: BLE001 - any failure is the result
        return str(exc)
    return None


def _instance_for(name: str, flavor: str, seed: int) -> Instance:
    if flavor == "any":
        flavor = ("ranking", "franking", "vi")[seed % 3]
        if name in ("profile-monotonicity", "insertion-piecewise"):
            flavor = ("ranking", "franking")[seed % 2]
        if name == "engine-oracle":
            flavor = ("small-ranking", "small-franking")[seed % 2]
    return make_instance(seed, flavor)


def _suite_task(task):
    name, idx, child = task
    flavor, fn = CHECKS[name]
    inst = _instance_for(name, flavor, child)
    try:
        fn(inst, greedy_match)
    except Exception as exc:  # noqa: BLE001 - record and continue
        return (name, idx, str(exc), witness_text(name, child, inst, str(exc)))
    return (name, idx, None, None)


def lemma_suite(names=None, instance_budget: int = 100, seed: int = 0,
                runner=greedy_match, witness_dir=None, jobs: int = 1,
                extra_instances=None) -> SuiteReport:
    """Run each named check over freshly generated instances plus any extra
    instances supplied; zero tolerated failures.

    Generated instances distribute over worker processes when jobs > 1 (only
    with the default runner; custom runners run serially)."""
    if names is None:
        names = list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks {unknown}; registered: {sorted(CHECKS)}")
    tasks = [(name, idx, split_seed(seed, ci, idx))
             for ci, name in enumerate(names)
             for idx in range(instance_budget)]
    if jobs > 1 and runner is greedy_match:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_suite_task, tasks, chunksize=8))
    elif runner is greedy_match:
        results = [_suite_task(t) for t in tasks]
    else:
        results = []
        for name, idx, child in tasks:
            flavor, fn = CHECKS[name]
            inst = _instance_for(name, flavor, child)
            try:
                fn(inst, runner)
                results.append((name, idx, None, None))
            except Exception as exc:  # noqa: BLE001
                results.append((name, idx, str(exc),
                                witness_text(name, child, inst, str(exc))))
    outcomes = {name: CheckOutcome(name, 0) for name in names}
    for name, idx, msg, wtext in results:
        outcomes[name].instances += 1
        if msg is not None:
            outcomes[name].failures.append((idx, msg, wtext))
    for ci, name in enumerate(names):
        flavor, fn = CHECKS[name]
        for j, inst in enumerate(extra_instances or ()):
            if not _instance_applicable(name, flavor, inst):
                continue
            outcomes[name].instances += 1
            try:
                fn(inst, runner)
            except Exception as exc:  # noqa: BLE001
                outcomes[name].failures.append(
                    (-1 - j, str(exc), witness_text(name, -1, inst, str(exc))))
    if witness_dir is not None:
        import pathlib
        for name, outcome in outcomes.items():
            if not outcome.failures:
                continue
            d = pathlib.Path(witness_dir)
            d.mkdir(parents=True, exist_ok=True)
            for (idx, _, wtext) in outcome.failures:
                (d / f"{name}-{idx}.json").write_text(wtext)
    return SuiteReport(outcomes)


def _instance_applicable(name: str, flavor: str, inst: Instance) -> bool:
    if flavor == "ranking":
        return inst.kind == "ranking"
    if flavor == "franking":
        return inst.kind == "franking" and inst.arrivals is None
    if flavor == "oddgirth":
        return inst.min_odd_girth is not None
    if flavor == "online":
        return inst.arrivals is not None
    if name in ("profile-monotonicity", "insertion-piecewise", "engine-oracle"):
        return inst.kind in ("ranking", "franking") and inst.arrivals is None
    return inst.arrivals is None
