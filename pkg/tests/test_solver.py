from fractions import Fraction

import pytest

from qcmatch.lpfactory import (build_franking_lp, build_odd_girth_ranking_lp,
                               build_ranking_lp, build_tightened_ranking_lp)
from qcmatch.lpmodel import LPModel
from qcmatch.solver import (INFEASIBLE, ITERATION_LIMIT, OPTIMAL, UNBOUNDED,
                            solve, verify_solution)


def _model(name, variables, constraints, objective):
    m = LPModel(name, "test", 1)
    for v, lo, hi in variables:
        m.add_variable(v, lo, hi)
    for i, (coeffs, sense, rhs) in enumerate(constraints):
        m.add_constraint("c", (i,), coeffs, sense, rhs)
    m.objective = {v: Fraction(c) for v, c in objective.items()}
    return m


# hand-built library of tiny models with known optima
TINY_MODELS = [
    (_model("box", [("x", 0, 1)], [({"x": 1}, "<=", 1)], {"x": 1}), 1.0),
    (_model("two", [("x", 0, None), ("y", 0, None)],
            [({"x": 1, "y": 1}, "<=", 4), ({"x": 1}, "<=", 3)],
            {"x": 2, "y": 1}), 7.0),
    (_model("eq", [("x", 0, None), ("y", 0, None)],
            [({"x": 1, "y": 2}, "=", 4)], {"x": 1, "y": 1}), 4.0),
    (_model("ge", [("x", 0, None)],
            [({"x": 1}, ">=", 2), ({"x": 1}, "<=", 5)], {"x": -1}), -2.0),
    (_model("free", [("x", None, None)],
            [({"x": 1}, "<=", 3), ({"x": -1}, "<=", 10)], {"x": 1}), 3.0),
    (_model("free-neg", [("x", None, None)],
            [({"x": 1}, ">=", -7), ({"x": 1}, "<=", -2)], {"x": 1}), -2.0),
    (_model("diet", [("a", 0, None), ("b", 0, None)],
            [({"a": 2, "b": 1}, ">=", 8), ({"a": 1, "b": 3}, ">=", 9)],
            {"a": -3, "b": -2}), -13.0),
    (_model("deg", [("x", 0, None), ("y", 0, None), ("z", 0, None)],
            [({"x": 1, "y": 1}, "<=", 1), ({"y": 1, "z": 1}, "<=", 1),
             ({"x": 1, "z": 1}, "<=", 1)], {"x": 1, "y": 1, "z": 1}), 1.5),
    (_model("tight-eq", [("x", 0, 2), ("y", 0, 2)],
            [({"x": 1, "y": 1}, "=", 2), ({"x": 1, "y": -1}, "<=", 0)],
            {"x": 1}), 1.0),
    (_model("redundant", [("x", 0, 5)],
            [({"x": 1}, "<=", 4), ({"x": 1}, "<=", 4), ({"x": 2}, "<=", 8)],
            {"x": 3}), 12.0),
    (_model("minmax", [("t", None, None), ("x", 0, 1)],
            [({"t": 1, "x": -1}, "<=", 0), ({"t": 1, "x": 1}, "<=", 1)],
            {"t": 1}), 0.5),
    (_model("knap", [("x", 0, 1), ("y", 0, 1), ("z", 0, 1)],
            [({"x": 3, "y": 4, "z": 5}, "<=", 6)],
            {"x": 3, "y": 5, "z": 6}), 7.4),
    (_model("assign", [("a", 0, 1), ("b", 0, 1), ("c", 0, 1), ("d", 0, 1)],
            [({"a": 1, "b": 1}, "<=", 1), ({"c": 1, "d": 1}, "<=", 1),
             ({"a": 1, "c": 1}, "<=", 1), ({"b": 1, "d": 1}, "<=", 1)],
            {"a": 2, "b": 1, "c": 1, "d": 2}), 4.0),
    (_model("scaled", [("x", 0, None)],
            [({"x": Fraction(1, 3)}, "<=", Fraction(1, 7))], {"x": 21}),
     9.0),
    (_model("negative-rhs", [("x", 0, None), ("y", 0, None)],
            [({"x": -1, "y": -1}, "<=", -2), ({"x": 1, "y": 2}, "<=", 6)],
            {"x": -1, "y": -1}), -2.0),
    (_model("interval", [("x", Fraction(1, 2), Fraction(3, 2))],
            [({"x": 1}, "<=", 2)], {"x": -1}), -0.5),
    (_model("three-eq", [("x", 0, None), ("y", 0, None), ("z", 0, None)],
            [({"x": 1, "y": 1, "z": 1}, "=", 1), ({"x": 1, "y": -1}, "=", 0)],
            {"z": -1, "x": 1}), 0.5),
    (_model("dual-deg", [("x", 0, None), ("y", 0, None)],
            [({"x": 1}, "<=", 1), ({"y": 1}, "<=", 1),
             ({"x": 1, "y": 1}, "<=", 2)], {"x": 1, "y": 1}), 2.0),
    (_model("mixed", [("x", None, None), ("y", 0, 2)],
            [({"x": 1, "y": 1}, ">=", 1), ({"x": 1, "y": -1}, "<=", 3),
             ({"x": 1}, "<=", 4)], {"x": 1, "y": -2}), 3.0),
    (_model("flat", [("x", 0, 1), ("y", 0, 1)],
            [({"x": 1, "y": 1}, "<=", 1)], {"x": 1, "y": 1}), 1.0),
]


@pytest.mark.parametrize("model,expected", TINY_MODELS,
                         ids=[m.name for m, _ in TINY_MODELS])
def test_tiny_library_both_engines(model, expected):
    for engine in ("simplex", "highs"):
        sol = solve(model, engine=engine)
        assert sol.status == OPTIMAL, f"{engine} failed on {model.name}"
        assert abs(sol.objective_value - expected) <= 1e-9
        report = verify_solution(model, sol.assignment, tol=1e-7)
        assert report.ok


def test_infeasible_and_unbounded():
    bad = _model("infeasible", [("x", 0, None)],
                 [({"x": 1}, "<=", 1), ({"x": 1}, ">=", 2)], {"x": 1})
    for engine in ("simplex", "highs"):
        assert solve(bad, engine=engine).status == INFEASIBLE
    unb = _model("unbounded", [("x", 0, None)], [({"x": -1}, "<=", 0)], {"x": 1})
    for engine in ("simplex", "highs"):
        assert solve(unb, engine=engine).status == UNBOUNDED


def test_iteration_limit_status():
    model = _model("slow", [(f"x{i}", 0, None) for i in range(6)],
                   [({f"x{i}": 1 for i in range(6)}, "<=", 3)],
                   {f"x{i}": 1 for i in range(6)})
    sol = solve(model, engine="simplex", max_iterations=0)
    assert sol.status == ITERATION_LIMIT


def test_factory_models_agree_across_engines():
    for model in (build_ranking_lp(2), build_tightened_ranking_lp(2),
                  build_odd_girth_ranking_lp(2, 2), build_franking_lp(2),
                  build_ranking_lp(3)):
        a = solve(model, engine="simplex")
        b = solve(model, engine="highs")
        assert a.status == b.status == OPTIMAL
        assert abs(a.objective_value - b.objective_value) <= 1e-9


def test_determinism():
    model = build_tightened_ranking_lp(3)
    values = {solve(model, engine="highs").objective_value for _ in range(3)}
    assert len(values) == 1
    values = {solve(model, engine="simplex").objective_value for _ in range(2)}
    assert len(values) == 1


def test_verify_solution_reports_perturbations():
    model = build_ranking_lp(2)
    sol = solve(model, engine="simplex")
    assert verify_solution(model, sol.assignment, 1e-8).ok
    bumped = dict(sol.assignment)
    bumped["h_1_1"] += 1.0
    report = verify_solution(model, bumped, 1e-8)
    assert not report.ok
    families = {t.split("[")[0] for (t, _) in report.violations}
    assert families & {"func-h-col", "func-h-row", "func-active-floor",
                       "func-passive-floor", "def-gB", "def-gP"}


def test_verify_solution_missing_variable():
    model = build_ranking_lp(1)
    with pytest.raises(KeyError):
        verify_solution(model, {}, 1e-8)


def test_feasibility_of_returned_solutions():
    for model in (build_tightened_ranking_lp(2), build_franking_lp(3)):
        sol = solve(model)
        report = verify_solution(model, sol.assignment, tol=1e-8)
        assert report.ok, report.violations[:3]
