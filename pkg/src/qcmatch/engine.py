"""Query-commit greedy matching over ordered lists of vertex pairs.

A query list is a strict total order over ordered pairs (u, v) of distinct
vertices.  All the order families implemented here are vertex-iterative: pairs
sort lexicographically by (decision key of u, preference key of u for v), so
the list is represented by its generating keys and enumerated lazily instead
of being materialized.  Excluding a vertex marks it unavailable without
reordering anything, which keeps query times comparable across a list and its
exclusions.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field, replace

from .graph import Graph
from .rng import make_rng, split_seed

log = logging.getLogger(__name__)

ALGORITHM_KINDS = ("GREEDY", "IRP", "RDO", "MRG", "UUR", "RANKING", "FRANKING")
_ADVERSARIAL_KINDS = ("GREEDY", "IRP", "FRANKING")


@dataclass(frozen=True)
class RankVector:
    """Distinct real ranks in (0,1], one per vertex."""

    ranks: tuple

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(float(x) for x in self.ranks))
        if len(set(self.ranks)) != len(self.ranks):
            raise ValueError("ranks must be pairwise distinct")
        if any(not 0.0 < x <= 1.0 for x in self.ranks):
            raise ValueError("ranks must lie in (0,1]")

    @classmethod
    def sample(cls, n: int, rng) -> "RankVector":
        ranks = list(rng.random(n))
        # collisions have ~zero probability but finite floats make them
        # possible; re-sample offenders so distinctness always holds
        seen = set()
        for i, x in enumerate(ranks):
            while x in seen or not 0.0 < x <= 1.0:
                x = float(rng.random())
            seen.add(x)
            ranks[i] = x
        return cls(tuple(ranks))

    @classmethod
    def from_order(cls, order) -> "RankVector":
        """Ranks (pos+1)/n following a permutation given as a vertex sequence."""
        n = len(order)
        ranks = [0.0] * n
        for pos, v in enumerate(order):
            ranks[v] = (pos + 1) / n
        return cls(tuple(ranks))

    def with_rank(self, v: int, x: float) -> "RankVector":
        ranks = list(self.ranks)
        ranks[v] = x
        return RankVector(tuple(ranks))

    def order(self) -> tuple:
        """Vertices sorted by increasing rank."""
        return tuple(sorted(range(len(self.ranks)), key=self.ranks.__getitem__))


@dataclass(frozen=True)
class QueryList:
    """Total order over ordered vertex pairs plus a set of excluded vertices.

    decision_key gives each vertex's slot in the outer order; the preference
    key of u for v is either the shared common_preference[v] or the per-vertex
    entry preference_of[u][v].  Pair (u, v) precedes (u', v') iff
    (decision_key[u], pref(u, v)) < (decision_key[u'], pref(u', v')).
    """

    num_vertices: int
    decision_key: tuple
    common_preference: tuple | None = None
    preference_of: tuple | None = None
    excluded: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if (self.common_preference is None) == (self.preference_of is None):
            raise ValueError("exactly one preference representation is required")
        if len(set(self.decision_key)) != self.num_vertices:
            raise ValueError("decision keys must be distinct")
        if self.common_preference is not None:
            if len(set(self.common_preference)) != self.num_vertices:
                raise ValueError("preference keys must be distinct")
        else:
            for row in self.preference_of:
                if len(set(row)) != self.num_vertices:
                    raise ValueError("preference keys must be distinct per vertex")

    def pref(self, u: int, v: int):
        if self.common_preference is not None:
            return self.common_preference[v]
        return self.preference_of[u][v]

    def ordered_pairs(self):
        """Yield all ordered pairs of distinct vertices in list order."""
        n = self.num_vertices
        for u in sorted(range(n), key=self.decision_key.__getitem__):
            others = sorted((v for v in range(n) if v != u),
                            key=lambda v: self.pref(u, v))
            for v in others:
                yield (u, v)

    def pair_time(self, a: int, b: int) -> int:
        """Position of the first ordered occurrence of the unordered pair."""
        for t, (u, v) in enumerate(self.ordered_pairs()):
            if (u, v) == (a, b) or (u, v) == (b, a):
                return t
        raise ValueError(f"pair ({a},{b}) not in list")


def exclude(qlist: QueryList, vertices) -> QueryList:
    """Same ordering with the given vertices additionally marked unavailable."""
    extra = frozenset(vertices)
    if not extra:
        return qlist
    return replace(qlist, excluded=qlist.excluded | extra)


@dataclass(frozen=True)
class MatchingTrace:
    """Output matching plus per-edge query time and active endpoint."""

    num_vertices: int
    matched_pairs: frozenset
    query_time_of: dict
    active_endpoint_of: dict
    excluded: frozenset = field(default_factory=frozenset)

    @property
    def size(self) -> int:
        return len(self.matched_pairs)

    def partner_of(self, v: int):
        for (a, b) in self.matched_pairs:
            if a == v:
                return b
            if b == v:
                return a
        return None

    def is_matched(self, v: int) -> bool:
        return self.partner_of(v) is not None

    def match_time_of(self, v: int):
        """Query time of the edge matching v, or None."""
        for pair, t in self.query_time_of.items():
            if v in pair:
                return t
        return None

    def to_json(self) -> str:
        return json.dumps({
            "num_vertices": self.num_vertices,
            "matched_pairs": sorted(self.matched_pairs),
            "query_times": {f"{a},{b}": t
                            for (a, b), t in sorted(self.query_time_of.items())},
            "active_endpoints": {f"{a},{b}": w
                                 for (a, b), w in sorted(self.active_endpoint_of.items())},
            "excluded": sorted(self.excluded),
        })


def greedy_match(g: Graph, qlist: QueryList) -> MatchingTrace:
    """Run the greedy matcher: each queried pair joins the matching iff it is
    an edge and both endpoints are still available and not excluded."""
    partner = [-1] * g.vertex_count
    excluded = qlist.excluded
    times = {}
    active = {}
    for t, (u, v) in enumerate(qlist.ordered_pairs()):
        if (partner[u] < 0 and partner[v] < 0
                and u not in excluded and v not in excluded
                and g.has_edge(u, v)):
            partner[u] = v
            partner[v] = u
            key = (u, v) if u < v else (v, u)
            times[key] = t
            active[key] = u
    return MatchingTrace(g.vertex_count, frozenset(times), times, active, excluded)


def availability_history(g: Graph, qlist: QueryList) -> list:
    """Available (unmatched, non-excluded) vertex sets before each query time.

    Entry t is the availability right before the t-th ordered pair is queried;
    the final entry is the availability after the whole list ran.
    """
    partner = [-1] * g.vertex_count
    excluded = qlist.excluded
    history = []

    def snapshot():
        return frozenset(v for v in range(g.vertex_count)
                         if partner[v] < 0 and v not in excluded)

    for (u, v) in qlist.ordered_pairs():
        history.append(snapshot())
        if (partner[u] < 0 and partner[v] < 0
                and u not in excluded and v not in excluded
                and g.has_edge(u, v)):
            partner[u] = v
            partner[v] = u
    history.append(snapshot())
    return history


def ranking_list(x: RankVector) -> QueryList:
    """Ordered pairs sorted lexicographically by (rank of u, rank of v)."""
    return QueryList(len(x.ranks), x.ranks, common_preference=x.ranks)


def franking_list(decision_order, x: RankVector) -> QueryList:
    """Adversarial decision order with a shared random preference order.

    decision_order lists the vertices in the order they decide; preferences
    follow the rank vector.
    """
    n = len(x.ranks)
    if sorted(decision_order) != list(range(n)):
        raise ValueError("decision_order must be a permutation of the vertices")
    slot = [0] * n
    for pos, v in enumerate(decision_order):
        slot[v] = pos
    return QueryList(n, tuple(slot), common_preference=x.ranks)


def vertex_iterative_list(decision_order, preference_orders) -> QueryList:
    """Per-vertex preference permutations under a fixed decision order."""
    n = len(decision_order)
    slot = [0] * n
    for pos, v in enumerate(decision_order):
        slot[v] = pos
    prefs = []
    for u in range(n):
        p = [0] * n
        for pos, v in enumerate(preference_orders[u]):
            p[v] = pos
        prefs.append(tuple(p))
    return QueryList(n, tuple(slot), preference_of=tuple(prefs))


def build_algorithm_list(kind: str, g: Graph, adversarial_order=None,
                         seed: int = 0) -> QueryList:
    """Construct the query list of one of the named order families."""
    if kind not in ALGORITHM_KINDS:
        raise ValueError(f"unknown algorithm kind {kind!r}")
    n = g.vertex_count
    if kind in _ADVERSARIAL_KINDS:
        if adversarial_order is None:
            raise ValueError(f"{kind} requires an adversarial decision order")
        if sorted(adversarial_order) != list(range(n)):
            raise ValueError("adversarial_order must be a permutation")
    rng = make_rng(seed)
    identity = tuple(range(n))

    if kind == "GREEDY":
        order = tuple(adversarial_order)
        return vertex_iterative_list(order, [order] * n)
    if kind == "IRP":
        prefs = [tuple(rng.permutation(n)) for _ in range(n)]
        return vertex_iterative_list(tuple(adversarial_order), prefs)
    if kind == "RDO":
        pi = tuple(rng.permutation(n))
        return vertex_iterative_list(pi, [identity] * n)
    if kind == "MRG":
        pi = tuple(rng.permutation(n))
        prefs = [tuple(rng.permutation(n)) for _ in range(n)]
        return vertex_iterative_list(pi, prefs)
    if kind == "UUR":
        pi = tuple(rng.permutation(n))
        sigma = tuple(rng.permutation(n))
        return vertex_iterative_list(pi, [sigma] * n)
    if kind == "RANKING":
        return ranking_list(RankVector.sample(n, rng))
    # FRANKING
    return franking_list(tuple(adversarial_order), RankVector.sample(n, rng))


# Fully-online model: every vertex has an arrival time and a later decision
# deadline; at its deadline an unmatched vertex picks its smallest-ranked
# available neighbor among those already arrived.  Two timelines are
# supported: "front" places all arrivals before any deadline (the model
# assumption holds automatically), "alternate" interleaves the i-th arrival
# at time 2i with the j-th deadline at time 2j+1.  Edges whose endpoints do
# not both arrive before the earlier of their two deadlines can never match
# and are dropped up front with a warning.

def _online_times(g: Graph, arrivals, deadlines, interleave: str):
    n = g.vertex_count
    if sorted(arrivals) != list(range(n)) or sorted(deadlines) != list(range(n)):
        raise ValueError("arrivals and deadlines must be permutations")
    arrive_time = [0] * n
    deadline_time = [0] * n
    if interleave == "front":
        for i, v in enumerate(arrivals):
            arrive_time[v] = i
        for j, v in enumerate(deadlines):
            deadline_time[v] = n + j
    elif interleave == "alternate":
        for i, v in enumerate(arrivals):
            arrive_time[v] = 2 * i
        for j, v in enumerate(deadlines):
            deadline_time[v] = 2 * j + 1
    else:
        raise ValueError(f"unknown interleave {interleave!r}")
    return arrive_time, deadline_time


def fully_online_kept_edges(g: Graph, arrivals, deadlines,
                            interleave: str = "front") -> frozenset:
    arrive_time, deadline_time = _online_times(g, arrivals, deadlines, interleave)
    kept = set()
    for (u, v) in g.edges:
        if max(arrive_time[u], arrive_time[v]) < min(deadline_time[u],
                                                     deadline_time[v]):
            kept.add((u, v))
    return frozenset(kept)


def fully_online_match(g: Graph, arrivals, deadlines, seed: int = 0,
                       ranks: RankVector | None = None,
                       interleave: str = "front") -> MatchingTrace:
    """Deadline-driven matching with ranks sampled independently of arrivals."""
    n = g.vertex_count
    arrive_time, deadline_time = _online_times(g, arrivals, deadlines, interleave)
    if ranks is None:
        ranks = RankVector.sample(n, make_rng(seed))
    kept = fully_online_kept_edges(g, arrivals, deadlines, interleave)
    dropped = g.edges - kept
    if dropped:
        log.warning("fully-online instance drops %d edge(s) whose endpoints "
                    "do not arrive before the earlier deadline: %s",
                    len(dropped), sorted(dropped))
    partner = [-1] * n
    times = {}
    active = {}
    for j, v in enumerate(deadlines):
        if partner[v] >= 0 or arrive_time[v] > deadline_time[v]:
            continue
        best = None
        for u in range(n):
            if u == v or partner[u] >= 0:
                continue
            if deadline_time[u] < deadline_time[v]:
                continue  # u expired unmatched at its own deadline
            e = (u, v) if u < v else (v, u)
            if e not in kept:
                continue
            if arrive_time[u] > deadline_time[v]:
                continue
            if best is None or ranks.ranks[u] < ranks.ranks[best]:
                best = u
        if best is not None:
            partner[v] = best
            partner[best] = v
            key = (v, best) if v < best else (best, v)
            times[key] = j
            active[key] = v
    return MatchingTrace(n, frozenset(times), times, active)
