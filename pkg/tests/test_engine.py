import itertools

import numpy as np
import pytest

from qcmatch import fastsim
from qcmatch.engine import (MatchingTrace, QueryList, RankVector,
                            build_algorithm_list, exclude, franking_list,
                            fully_online_kept_edges, fully_online_match,
                            greedy_match, ranking_list, vertex_iterative_list)
from qcmatch.graph import Graph, generate_perfect_matching_graph, maximum_matching_size
from qcmatch.rng import make_rng, split_seed


def test_rank_vector_validation():
    with pytest.raises(ValueError):
        RankVector((0.5, 0.5))
    with pytest.raises(ValueError):
        RankVector((0.0, 0.5))
    rv = RankVector.sample(6, make_rng(0))
    assert len(set(rv.ranks)) == 6


def test_ranking_list_order():
    two = ranking_list(RankVector((0.1, 0.2)))
    assert list(two.ordered_pairs()) == [(0, 1), (1, 0)]
    three = ranking_list(RankVector((0.3, 0.1, 0.2)))
    assert next(iter(three.ordered_pairs())) == (1, 2)


def test_franking_list_order():
    ql = franking_list((0, 1), RankVector((0.9, 0.8)))
    assert list(ql.ordered_pairs()) == [(0, 1), (1, 0)]


def test_greedy_on_triangle(triangle):
    ql = ranking_list(RankVector((0.1, 0.2, 0.3)))
    trace = greedy_match(triangle, ql)
    assert trace.matched_pairs == frozenset([(0, 1)])
    assert trace.active_endpoint_of[(0, 1)] == 0


def test_greedy_all_excluded(triangle):
    ql = exclude(ranking_list(RankVector((0.1, 0.2, 0.3))), {0, 1, 2})
    assert greedy_match(triangle, ql).size == 0


def test_greedy_middle_edge_first(path4):
    # ranks put the middle edge (1,2) first: greedy stops at size 1
    ql = ranking_list(RankVector((0.7, 0.1, 0.2, 0.9)))
    trace = greedy_match(path4, ql)
    assert trace.matched_pairs == frozenset([(1, 2)])
    assert maximum_matching_size(path4) == 2


def test_exclusion_semantics(triangle):
    ql = ranking_list(RankVector((0.1, 0.2, 0.3)))
    assert exclude(ql, set()) is ql
    one = exclude(ql, {1})
    trace = greedy_match(triangle, one)
    assert not trace.is_matched(1)
    assert exclude(exclude(ql, {0}), {1}).excluded == exclude(ql, {0, 1}).excluded
    # exclusion does not reorder the remaining pairs
    assert list(one.ordered_pairs()) == list(ql.ordered_pairs())


def test_query_list_validation():
    with pytest.raises(ValueError):
        QueryList(2, (0.1, 0.1), common_preference=(0.1, 0.2))
    with pytest.raises(ValueError):
        QueryList(2, (0.1, 0.2))


def test_trace_times_increase():
    g = generate_perfect_matching_graph(3, 0.7, 4)
    ql = ranking_list(RankVector.sample(6, make_rng(1)))
    trace = greedy_match(g, ql)
    times = sorted(trace.query_time_of.values())
    assert len(set(times)) == len(times)
    assert trace.to_json()


def test_build_algorithm_list_kinds(k4):
    ident = tuple(range(4))
    a = build_algorithm_list("GREEDY", k4, ident, 1)
    b = build_algorithm_list("GREEDY", k4, ident, 2)
    assert list(a.ordered_pairs()) == list(b.ordered_pairs())
    with pytest.raises(ValueError):
        build_algorithm_list("FRANKING", k4)
    with pytest.raises(ValueError):
        build_algorithm_list("NOPE", k4)
    for kind in ("IRP", "RDO", "MRG", "UUR", "RANKING"):
        ql = build_algorithm_list(kind, k4, ident, 7)
        assert greedy_match(k4, ql).size == 2  # K4 always matches fully


def test_ranking_dispatch_equals_ranking_list(k4):
    ql = build_algorithm_list("RANKING", k4, None, 99)
    x = RankVector(ql.common_preference)
    assert list(ql.ordered_pairs()) == list(ranking_list(x).ordered_pairs())


def test_franking_equals_ranking_when_pi_is_rank_order():
    for seed in range(500):
        g = generate_perfect_matching_graph(3, 0.5, seed)
        x = RankVector.sample(6, make_rng(seed, 1))
        pi = x.order()
        a = greedy_match(g, ranking_list(x))
        b = greedy_match(g, franking_list(pi, x))
        assert a.matched_pairs == b.matched_pairs


def test_engine_matches_direct_transcriptions():
    for seed in range(500):
        g = generate_perfect_matching_graph(3, 0.45, seed)
        adj = fastsim.adjacency_bitmasks(g)
        rng = make_rng(seed)
        perm = tuple(int(v) for v in rng.permutation(6))
        x = RankVector.from_order(perm)
        assert greedy_match(g, ranking_list(x)).matched_pairs == \
            fastsim.vi_run_pairs(adj, perm, [perm.index(v) for v in range(6)])
        pi = tuple(int(v) for v in rng.permutation(6))
        assert greedy_match(g, franking_list(pi, x)).matched_pairs == \
            fastsim.vi_run_pairs(adj, pi, [perm.index(v) for v in range(6)])


def test_mrg_monte_carlo_vs_exact(k4):
    from qcmatch.harness import exact_expected_ratio
    exact = exact_expected_ratio(k4, "MRG").mean
    trials = 100000
    total = 0
    for t in range(trials):
        ql = build_algorithm_list("MRG", k4, None, split_seed(5, t))
        total += greedy_match(k4, ql).size
    mean = total / trials / 2
    sigma = 0.5 / (2 * trials ** 0.5)  # matching size varies within [1,2]
    assert abs(mean - exact) <= 3 * sigma + 1e-9


def test_removal_monotonicity_and_maximality():
    rng = make_rng(3)
    for trial in range(120):
        g = generate_perfect_matching_graph(int(rng.integers(2, 5)),
                                            float(rng.uniform(0.2, 0.8)),
                                            int(rng.integers(0, 2 ** 31)))
        x = RankVector.sample(g.vertex_count, rng)
        ql = ranking_list(x)
        trace = greedy_match(g, ql)
        assert 2 * trace.size >= maximum_matching_size(g)
        matched = {v for p in trace.matched_pairs for v in p}
        assert not any(u not in matched and v not in matched for (u, v) in g.edges)
        for v in range(g.vertex_count):
            assert trace.size >= greedy_match(g, exclude(ql, {v})).size


def test_fully_online_single_edge():
    g = Graph(2, frozenset([(0, 1)]))
    trace = fully_online_match(g, (0, 1), (0, 1), seed=4)
    assert trace.matched_pairs == frozenset([(0, 1)])


def test_fully_online_all_arrive_first_equals_franking():
    for seed in range(80):
        rng = make_rng(seed)
        g = generate_perfect_matching_graph(3, 0.5, seed)
        n = g.vertex_count
        x = RankVector.sample(n, rng)
        deadlines = tuple(int(v) for v in rng.permutation(n))
        arrivals = tuple(range(n))
        # every arrival precedes every deadline here once edges are kept
        kept = fully_online_kept_edges(g, arrivals, deadlines)
        online = fully_online_match(g, arrivals, deadlines, ranks=x)
        offline = greedy_match(Graph(n, kept), franking_list(deadlines, x))
        assert online.matched_pairs == offline.matched_pairs


def test_fully_online_drops_late_edges():
    g = Graph(4, frozenset([(0, 1), (2, 3), (0, 3)]))
    # interleaved timeline: vertex 3 arrives after vertex 3's own deadline slot
    kept = fully_online_kept_edges(g, (0, 1, 2, 3), (3, 2, 1, 0), "alternate")
    assert (0, 3) not in kept
    assert (0, 1) in kept
    # with all arrivals first nothing is dropped
    assert fully_online_kept_edges(g, (0, 1, 2, 3), (0, 1, 2, 3)) == g.edges


def test_vertex_iterative_list_matches_manual():
    g = Graph(4, frozenset([(0, 1), (1, 2), (2, 3)]))
    ql = vertex_iterative_list((2, 0, 1, 3), ((1, 0, 2, 3),) * 4)
    # vertex 2 decides first and prefers 1 over 3
    assert (1, 2) in greedy_match(g, ql).matched_pairs


def test_batch_simulators_match_scalar():
    for seed in range(20):
        g = generate_perfect_matching_graph(3, 0.5, seed)
        adj = fastsim.adjacency_bitmasks(g)
        perms = fastsim.all_permutations(6)[:100]
        batch = fastsim.batch_ranking_sizes(g, perms)
        direct = [fastsim.ranking_run_size(adj, tuple(p)) for p in perms]
        assert batch.tolist() == direct
        pi = tuple(int(v) for v in make_rng(seed).permutation(6))
        batch_f = fastsim.batch_franking_sizes(g, pi, perms)
        direct_f = [fastsim.franking_run_size(adj, pi, tuple(p)) for p in perms]
        assert batch_f.tolist() == direct_f
