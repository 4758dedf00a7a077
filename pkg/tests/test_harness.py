import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcmatch.graph import Graph, generate_perfect_matching_graph
from qcmatch.harness import (RatioEstimate, adversarial_order_search,
                             canonical_extra_masks, check_bound_dominance,
                             exact_expected_ratio, monte_carlo_ratio,
                             perfect_matching_graphs, uniform_bound_check,
                             random_uniform_bound_trials)
from qcmatch.rng import make_rng


def test_ratio_estimate_invariant():
    with pytest.raises(ValueError):
        RatioEstimate(1.0, 5, 0.1, True)


def test_exact_single_edge_and_triangle(triangle):
    edge = Graph(2, frozenset([(0, 1)]))
    assert exact_expected_ratio(edge, "RANKING").mean == 1.0
    for kind in ("RANKING", "RDO", "MRG", "UUR"):
        assert exact_expected_ratio(triangle, kind).mean == 1.0
    assert exact_expected_ratio(triangle, "FRANKING", (2, 1, 0)).mean == 1.0
    assert exact_expected_ratio(triangle, "GREEDY", (0, 1, 2)).mean == 1.0


def test_exact_methods_agree_on_c5():
    c5 = Graph(5, frozenset((i, (i + 1) % 5) for i in range(5)))
    values = {exact_expected_ratio(c5, "RANKING", method=m).mean
              for m in ("engine", "direct", "batch")}
    assert len(values) == 1


def test_exact_methods_agree_on_random_graphs():
    for seed in range(10):
        g = generate_perfect_matching_graph(3, 0.5, seed)
        for kind in ("RANKING", "RDO"):
            vals = {exact_expected_ratio(g, kind, method=m).mean
                    for m in ("engine", "direct", "batch")}
            assert len(vals) == 1
        order = tuple(range(6))
        vals = {exact_expected_ratio(g, "FRANKING", order, method=m).mean
                for m in ("engine", "direct", "batch")}
        assert len(vals) == 1


def test_exact_scale_caps():
    big = generate_perfect_matching_graph(5, 0.3, 1)
    with pytest.raises(ValueError):
        exact_expected_ratio(big, "RANKING")
    with pytest.raises(ValueError):
        exact_expected_ratio(generate_perfect_matching_graph(4, 0.3, 1), "MRG")


def test_irp_uniform_choice_matches_enumeration():
    # per-vertex independent preferences, enumerated literally on 4 vertices
    from qcmatch import fastsim
    g = generate_perfect_matching_graph(2, 0.8, 3)
    adj = fastsim.adjacency_bitmasks(g)
    order = (2, 0, 3, 1)
    total = 0
    count = 0
    for prefs in itertools.product(itertools.permutations(range(4)), repeat=4):
        pos = [[0] * 4 for _ in range(4)]
        for v in range(4):
            for i, w in enumerate(prefs[v]):
                pos[v][w] = i
        matched = 0
        size = 0
        for v in order:
            if matched >> v & 1:
                continue
            cand = adj[v] & ~matched
            best, best_pos = -1, None
            while cand:
                bit = cand & -cand
                cand ^= bit
                u = bit.bit_length() - 1
                if best_pos is None or pos[v][u] < best_pos:
                    best, best_pos = u, pos[v][u]
            if best >= 0:
                matched |= (1 << v) | (1 << best)
                size += 1
        total += size
        count += 1
    literal = Fraction(total, count)
    dp = exact_expected_ratio(g, "IRP", order).mean * 2
    assert abs(float(literal) - dp) < 1e-12


def test_mrg_exact_on_k4(k4):
    # K4 always ends perfectly matched, any order distribution
    assert exact_expected_ratio(k4, "MRG").mean == 1.0


def test_monte_carlo_consistency():
    rng = make_rng(12)
    for trial in range(12):
        g = generate_perfect_matching_graph(3, float(rng.uniform(0.2, 0.8)),
                                            int(rng.integers(0, 2 ** 31)))
        exact = exact_expected_ratio(g, "RANKING").mean
        mc = monte_carlo_ratio(g, "RANKING", trials=3000, seed=trial)
        assert abs(mc.mean - exact) <= 4 * mc.std_error + 1e-9
    edge = Graph(2, frozenset([(0, 1)]))
    est = monte_carlo_ratio(edge, "RANKING", trials=50, seed=0)
    assert est.mean == 1.0 and est.std_error == 0.0


def test_monte_carlo_reproducible():
    g = generate_perfect_matching_graph(3, 0.5, 5)
    a = monte_carlo_ratio(g, "RANKING", trials=500, seed=42)
    b = monte_carlo_ratio(g, "RANKING", trials=500, seed=42)
    assert a == b


def test_adversarial_search_single_edge():
    edge = Graph(2, frozenset([(0, 1)]))
    pi, est = adversarial_order_search(edge, "FRANKING")
    assert est.mean == 1.0


def test_adversarial_search_floor():
    rng = make_rng(3)
    for trial in range(8):
        g = generate_perfect_matching_graph(3, float(rng.uniform(0.2, 0.8)),
                                            int(rng.integers(0, 2 ** 31)))
        _, est = adversarial_order_search(g, "FRANKING")
        assert est.mean >= 0.5
        from qcmatch import tables
        assert est.mean >= tables.FRANKING[6]  # the solved size-6 bound
        given_order = exact_expected_ratio(g, "FRANKING", tuple(range(6))).mean
        assert est.mean <= given_order + 1e-12


def test_adversarial_search_kind_validation(k4):
    with pytest.raises(ValueError):
        adversarial_order_search(k4, "RANKING")


def test_canonical_masks_cover_orbits():
    # every labeled 2-pair graph is isomorphic to some canonical representative
    masks = set(int(m) for m in canonical_extra_masks(2))
    from qcmatch.harness import _extra_pairs, _pair_group
    extras = _extra_pairs(2)
    index = {e: i for i, e in enumerate(extras)}
    for mask in range(1 << len(extras)):
        orbit_min = mask
        for perm in _pair_group(2):
            image = 0
            for i, (u, v) in enumerate(extras):
                if mask >> i & 1:
                    a, b = perm[u], perm[v]
                    image |= 1 << index[(a, b) if a < b else (b, a)]
            orbit_min = min(orbit_min, image)
        assert orbit_min in masks


def test_perfect_matching_graph_family_counts():
    assert sum(1 for _ in perfect_matching_graphs(1)) == 1
    canon2 = list(perfect_matching_graphs(2))
    assert len(canon2) == 6
    full2 = list(perfect_matching_graphs(2, canonical=False))
    assert len(full2) == 16
    for g in canon2:
        assert g.designated_perfect_matching == ((0, 1), (2, 3))


def test_check_bound_dominance_modes():
    graphs = list(perfect_matching_graphs(2))
    report = check_bound_dominance(graphs, "RANKING", 0.5)
    assert report.holds and report.min_margin >= 0
    report = check_bound_dominance(graphs, "RANKING", 0.99)
    assert not report.holds
    sampled = check_bound_dominance(graphs, "RANKING", 0.5, exact=False,
                                    trials=400, seed=9)
    assert sampled.holds


def test_uniform_bound_examples():
    # constant density with a non-decreasing table: equality
    f = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
    g = [Fraction(2), Fraction(2), Fraction(2)]
    rep = uniform_bound_check(f, g)
    assert rep.holds and rep.lhs == rep.rhs
    # constant table: equality regardless of the density
    rep = uniform_bound_check([Fraction(1, 3)] * 4,
                              [Fraction(0), Fraction(1), Fraction(1), Fraction(5)])
    assert rep.holds and rep.lhs == rep.rhs
    with pytest.raises(ValueError):
        uniform_bound_check([1, 2], [2, 1])
    with pytest.raises(ValueError):
        uniform_bound_check([1], [-1])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.fractions(0, 1, max_denominator=64), min_size=1, max_size=12),
       st.lists(st.fractions(0, 1, max_denominator=64), min_size=1, max_size=12))
def test_uniform_bound_property(f, steps):
    size = min(len(f), len(steps))
    f = f[:size]
    density = []
    acc = Fraction(0)
    for s in steps[:size]:
        acc += s
        density.append(acc)
    assert uniform_bound_check(f, density).holds


def test_uniform_bound_random_trials():
    assert random_uniform_bound_trials(300, 64, 17) == 0


def test_removal_never_helps_in_expectation():
    # mean matching size cannot grow when a vertex is deleted outright
    from qcmatch import fastsim
    rng = make_rng(21)
    for trial in range(10):
        g = generate_perfect_matching_graph(3, float(rng.uniform(0.2, 0.8)),
                                            int(rng.integers(0, 2 ** 31)))
        full_mean = int(fastsim.ranking_totals([g], 6)[0]) / 720
        for v in range(6):
            keep = [w for w in range(6) if w != v]
            relabel = {w: i for i, w in enumerate(keep)}
            edges = frozenset((relabel[a], relabel[b]) for (a, b) in g.edges
                              if a != v and b != v)
            if not edges:
                continue
            sub = Graph(5, edges)
            sub_mean = int(fastsim.ranking_totals([sub], 5)[0]) / 120
            assert full_mean >= sub_mean - 1e-12


def test_every_kind_at_least_half():
    rng = make_rng(44)
    order6 = tuple(range(6))
    for trial in range(5):
        g = generate_perfect_matching_graph(3, float(rng.uniform(0.2, 0.8)),
                                            int(rng.integers(0, 2 ** 31)))
        for kind in ("RANKING", "RDO", "FRANKING"):
            order = order6 if kind == "FRANKING" else None
            assert exact_expected_ratio(g, kind, order).mean >= 0.5
        small = generate_perfect_matching_graph(2, 0.5, trial)
        for kind in ("UUR", "MRG", "IRP", "GREEDY"):
            order = (0, 1, 2, 3) if kind in ("IRP", "GREEDY") else None
            assert exact_expected_ratio(small, kind, order).mean >= 0.5


def test_adversarial_search_greedy_and_irp(k4):
    pi, est = adversarial_order_search(k4, "GREEDY")
    assert est.mean == 1.0  # K4 greedy always perfect
    p3 = Graph(4, frozenset([(0, 1), (1, 2), (2, 3)]))
    pi, est = adversarial_order_search(p3, "GREEDY")
    assert est.mean == 0.5  # worst order grabs the middle edge
    pi_irp, est_irp = adversarial_order_search(p3, "IRP")
    assert 0.5 <= est_irp.mean <= 1.0
