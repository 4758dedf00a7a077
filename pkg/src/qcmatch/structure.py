"""Structural analysis of greedy matchings: alternating paths, backups,
victims/blockers, profiles, and the impacting/marginal rank thresholds.

Thresholds are computed exactly: the matching outcome as a function of an
inserted vertex's rank is piecewise constant with breakpoints at the existing
ranks, so one representative per open interval determines everything and
suprema are right endpoints of realized intervals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .engine import (MatchingTrace, QueryList, RankVector, exclude,
                     franking_list, greedy_match, ranking_list)
from .graph import Graph

BOT = None  # absent rank slot in profiles


class StructuralViolationError(AssertionError):
    """A structural guarantee of the greedy process failed to hold."""


@dataclass(frozen=True)
class AlternatingPath:
    """Symmetric difference of a run and its one-vertex-excluded rerun.

    vertices[0] is the pivot; edges at even positions belong to the full run,
    odd positions to the excluded run.  A single vertex means the matchings
    coincide.
    """

    vertices: tuple

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def is_degenerate(self) -> bool:
        return len(self.vertices) == 1

    def edge(self, i: int) -> tuple:
        a, b = self.vertices[i], self.vertices[i + 1]
        return (a, b) if a < b else (b, a)

    def to_json_dict(self) -> dict:
        return {"vertices": list(self.vertices)}


def order_symmetric_difference(full_pairs, excluded_pairs, pivot: int) -> AlternatingPath:
    """Arrange the symmetric difference of two matchings into the path rooted
    at the pivot, or raise if it is not a single such path."""
    diff = frozenset(full_pairs) ^ frozenset(excluded_pairs)
    if not diff:
        return AlternatingPath((pivot,))
    in_full = {}
    in_excl = {}
    for pair in diff:
        side = in_full if pair in full_pairs else in_excl
        for v in pair:
            if v in side:
                raise StructuralViolationError(
                    f"vertex {v} covered twice on one side of the difference")
            side[v] = pair
    if pivot in in_excl:
        raise StructuralViolationError(
            f"excluded vertex {pivot} matched in the excluded run")
    vertices = [pivot]
    seen = {pivot}
    use_full = True
    current = pivot
    while True:
        side = in_full if use_full else in_excl
        pair = side.get(current)
        if pair is None:
            break
        nxt = pair[0] if pair[1] == current else pair[1]
        if nxt in seen:
            raise StructuralViolationError("difference contains a cycle")
        vertices.append(nxt)
        seen.add(nxt)
        current = nxt
        use_full = not use_full
    if len(vertices) - 1 != len(diff):
        raise StructuralViolationError(
            "symmetric difference is not a single path rooted at the pivot")
    return AlternatingPath(tuple(vertices))


def alternating_path(g: Graph, qlist: QueryList, v: int,
                     traces: tuple | None = None) -> AlternatingPath:
    """Path structure of R(list) vs R(list with v excluded).

    Verifies that query times strictly increase along the path; any structural
    failure aborts loudly since it would falsify the underlying guarantee.
    """
    if v in qlist.excluded:
        raise ValueError(f"vertex {v} is already excluded")
    if traces is None:
        trace_full = greedy_match(g, qlist)
        trace_excl = greedy_match(g, exclude(qlist, {v}))
    else:
        trace_full, trace_excl = traces
    path = order_symmetric_difference(trace_full.matched_pairs,
                                      trace_excl.matched_pairs, v)
    last = -1
    for i in range(path.length):
        pair = path.edge(i)
        t = (trace_full if i % 2 == 0 else trace_excl).query_time_of[pair]
        if t <= last:
            raise StructuralViolationError("query times do not increase along path")
        last = t
    return path


def worse_off(trace_full: MatchingTrace, trace_excl: MatchingTrace, u: int) -> bool:
    """Whether u matches strictly later (or not at all) in the full run."""
    t_full = trace_full.match_time_of(u)
    t_excl = trace_excl.match_time_of(u)
    if t_full is None:
        t_full = math.inf
    if t_excl is None:
        t_excl = math.inf
    return t_full > t_excl


def backup_of(g: Graph, qlist: QueryList, u: int):
    """The vertex u would match if its current match were excluded, if any."""
    trace = greedy_match(g, qlist)
    v = trace.partner_of(u)
    if v is None:
        return None
    rerun = greedy_match(g, exclude(qlist, {v}))
    return rerun.partner_of(u)


def blockers_of(g: Graph, qlist: QueryList, u: int) -> set:
    """Vertices whose exclusion would let the unmatched u become matched."""
    trace = greedy_match(g, qlist)
    if trace.is_matched(u):
        return set()
    result = set()
    for w in range(g.vertex_count):
        if w == u or w in qlist.excluded:
            continue
        rerun = greedy_match(g, exclude(qlist, {w}))
        if rerun.is_matched(u):
            result.add(w)
    return result


_FRANKING_PROFILES = {
    (None, None), ("P", None), ("P", "P"), ("P", "A"), ("A", None), ("A", "A"),
}


@dataclass(frozen=True)
class Profile:
    """Rank of a vertex, of its match, and of its backup, with activity tags."""

    x_u: float
    x_v: float | None
    x_b: float | None
    v_tag: str | None = None
    b_tag: str | None = None
    v_vertex: int | None = None
    b_vertex: int | None = None

    def __post_init__(self):
        if self.x_b is not None and self.x_v is None:
            raise ValueError("a backup requires a match")

    @property
    def tags(self) -> tuple:
        return (self.v_tag, self.b_tag)

    def to_json_dict(self) -> dict:
        return {"x_u": self.x_u, "x_v": self.x_v, "x_b": self.x_b,
                "v_tag": self.v_tag, "b_tag": self.b_tag,
                "v_vertex": self.v_vertex, "b_vertex": self.b_vertex}


def _activity_tag(trace: MatchingTrace, u: int) -> str | None:
    v = trace.partner_of(u)
    if v is None:
        return None
    pair = (u, v) if u < v else (v, u)
    return "A" if trace.active_endpoint_of[pair] == u else "P"


def _profile_from_lists(g: Graph, qlist: QueryList, x: RankVector, u: int,
                        ustar: int) -> Profile:
    base = exclude(qlist, {ustar})
    trace = greedy_match(g, base)
    v = trace.partner_of(u)
    if v is None:
        return Profile(x.ranks[u], BOT, BOT)
    v_tag = _activity_tag(trace, u)
    rerun = greedy_match(g, exclude(base, {v}))
    b = rerun.partner_of(u)
    if b is None:
        return Profile(x.ranks[u], x.ranks[v], BOT, v_tag, None, v, None)
    return Profile(x.ranks[u], x.ranks[v], x.ranks[b], v_tag,
                   _activity_tag(rerun, u), v, b)


def ranking_profile(g: Graph, x: RankVector, u: int, ustar: int) -> Profile:
    """Profile of u once ustar is excluded, under the rank-driven order."""
    if ustar == u:
        raise ValueError("the excluded vertex must differ from the profiled one")
    prof = _profile_from_lists(g, ranking_list(x), x, u, ustar)
    if prof.x_b is not None and not prof.x_v < prof.x_b:
        raise StructuralViolationError("backup does not outrank the match")
    return prof


def franking_profile(g: Graph, decision_order, x: RankVector, u: int,
                     ustar: int) -> Profile:
    """Profile of u under an adversarial decision order; u must decide first."""
    if ustar == u:
        raise ValueError("the excluded vertex must differ from the profiled one")
    slot = {v: i for i, v in enumerate(decision_order)}
    if slot[u] >= slot[ustar]:
        raise ValueError("the profiled vertex must decide before the excluded one")
    prof = _profile_from_lists(g, franking_list(decision_order, x), x, u, ustar)
    if prof.tags not in _FRANKING_PROFILES:
        raise StructuralViolationError(f"impossible profile tags {prof.tags}")
    if prof.v_tag == "A" and prof.x_b is not None:
        if prof.b_tag != "A" or not prof.x_v < prof.x_b:
            raise StructuralViolationError(
                "active match with a backup must yield an active, worse backup")
    return prof


@dataclass(frozen=True)
class AnalysisContext:
    """How query lists are derived from rank vectors during insertion scans."""

    kind: str  # RANKING or FRANKING
    decision_order: tuple | None = None
    extra_excluded: frozenset = field(default_factory=frozenset)

    @classmethod
    def ranking(cls, extra_excluded=()) -> "AnalysisContext":
        return cls("RANKING", None, frozenset(extra_excluded))

    @classmethod
    def franking(cls, decision_order, extra_excluded=()) -> "AnalysisContext":
        return cls("FRANKING", tuple(decision_order), frozenset(extra_excluded))

    def list_for(self, x: RankVector) -> QueryList:
        if self.kind == "RANKING":
            qlist = ranking_list(x)
        elif self.kind == "FRANKING":
            qlist = franking_list(self.decision_order, x)
        else:
            raise ValueError(f"unknown context kind {self.kind!r}")
        return exclude(qlist, self.extra_excluded)


@dataclass(frozen=True)
class InsertionOutcome:
    """One constant piece of the outcome as a function of the inserted rank."""

    low: float
    high: float
    representative: float
    ranks: RankVector
    trace: MatchingTrace          # inserted vertex participating
    base_trace: MatchingTrace     # inserted vertex excluded, same ordering


def insertion_outcomes(g: Graph, base_x: RankVector, ustar: int,
                       context: AnalysisContext) -> list:
    """Evaluate one representative per open rank interval of the inserted
    vertex; the outcome is constant on each interval."""
    others = sorted(r for v, r in enumerate(base_x.ranks) if v != ustar)
    breakpoints = [0.0] + sorted(set(others)) + [1.0]
    outcomes = []
    for lo, hi in zip(breakpoints, breakpoints[1:]):
        if not lo < hi:
            continue
        rep = (lo + hi) / 2
        ranks = base_x.with_rank(ustar, rep)
        qlist = context.list_for(ranks)
        trace = greedy_match(g, qlist)
        base = greedy_match(g, exclude(qlist, {ustar}))
        outcomes.append(InsertionOutcome(lo, hi, rep, ranks, trace, base))
    return outcomes


@dataclass(frozen=True)
class InsertionWitness:
    """Summary of one insertion interval, kept with threshold reports."""

    low: float
    high: float
    representative: float
    observed_worse_off: bool | None
    inserted_passive: bool
    inserted_match_rank: float | None
    path_vertices: tuple | None


@dataclass(frozen=True)
class ThresholdReport:
    theta0: float
    theta1: float
    theta3: float
    witnesses: tuple

    @property
    def witness_interval_representatives(self) -> list:
        """(representative rank, outcome summary) per realized interval."""
        return [(w.representative,
                 {"observed_worse_off": w.observed_worse_off,
                  "inserted_passive": w.inserted_passive,
                  "inserted_match_rank": w.inserted_match_rank})
                for w in self.witnesses]

    def witness_interval_below(self, threshold: float):
        """The realized interval whose right endpoint equals the threshold."""
        for w in self.witnesses:
            if w.high == threshold:
                return w
        return None

    def to_json_dict(self) -> dict:
        return {
            "theta0": self.theta0, "theta1": self.theta1, "theta3": self.theta3,
            "witnesses": [
                {"low": w.low, "high": w.high,
                 "representative": w.representative,
                 "observed_worse_off": w.observed_worse_off,
                 "inserted_passive": w.inserted_passive,
                 "inserted_match_rank": w.inserted_match_rank,
                 "path": list(w.path_vertices) if w.path_vertices else None}
                for w in self.witnesses],
        }


def thresholds(g: Graph, base_x: RankVector, observed: int | None, inserted: int,
               context: AnalysisContext,
               outcomes: list | None = None) -> ThresholdReport:
    """Impacting rank, marginal rank, and the long-path impacting rank.

    theta0: supremum of inserted ranks making the observed vertex worse off
    (0 when the observed vertex is absent or unmatched in the excluded run).
    theta1: supremum of inserted ranks at which the inserted vertex ends up
    passively matched.  theta3: theta0 restricted to intervals whose
    alternating path has its third-to-last vertex ranked above theta0.
    """
    if observed == inserted:
        raise ValueError("observed and inserted vertices must differ")
    if outcomes is None:
        outcomes = insertion_outcomes(g, base_x, inserted, context)
    theta0 = 0.0
    theta1 = 0.0
    witnesses = []
    paths = []
    worse_flags = []
    for oc in outcomes:
        passive = (oc.trace.is_matched(inserted)
                   and _activity_tag(oc.trace, inserted) == "P")
        if passive:
            theta1 = max(theta1, oc.high)
        worse = None
        path = None
        if observed is not None:
            worse = worse_off(oc.trace, oc.base_trace, observed)
            if worse:
                theta0 = max(theta0, oc.high)
                path = alternating_path(g, context.list_for(oc.ranks), inserted,
                                        traces=(oc.trace, oc.base_trace))
        worse_flags.append(worse)
        paths.append(path)
        w = oc.trace.partner_of(inserted)
        witnesses.append(InsertionWitness(
            oc.low, oc.high, oc.representative, worse, passive,
            oc.ranks.ranks[w] if w is not None else None,
            path.vertices if path is not None else None))
    theta3 = 0.0
    for oc, worse, path in zip(outcomes, worse_flags, paths):
        # the long-path rank concerns insertions that leave the observed
        # vertex unmatched, i.e. the path terminates at it
        if (not worse or path is None or len(path.vertices) < 3
                or path.vertices[-1] != observed):
            continue
        if oc.ranks.ranks[path.vertices[-3]] > theta0:
            theta3 = max(theta3, oc.high)
    if theta3 > theta0:
        raise StructuralViolationError("long-path impacting rank exceeds theta0")
    if (context.kind == "FRANKING" and observed is not None
            and context.decision_order is not None):
        slot = {v: i for i, v in enumerate(context.decision_order)}
        if slot[observed] < slot[inserted] and theta0 > theta1:
            raise StructuralViolationError("impacting rank exceeds marginal rank")
    return ThresholdReport(theta0, theta1, theta3, tuple(witnesses))
