from pathlib import Path

import pytest

from qcmatch.lpfactory import build_franking_lp, build_tightened_ranking_lp
from qcmatch.lpio import (LP_TEXT, MPS, export_model, models_equal_as_floats,
                          parse_model, read_solution, write_solution)
from qcmatch.solver import solve, verify_solution

GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("fmt", [LP_TEXT, MPS])
def test_round_trip(fmt):
    for model in (build_franking_lp(2), build_tightened_ranking_lp(2)):
        text = export_model(model, fmt)
        back = parse_model(text)
        assert models_equal_as_floats(model, back)


def test_byte_stability():
    a = export_model(build_franking_lp(2), LP_TEXT)
    b = export_model(build_franking_lp(2), LP_TEXT)
    assert a == b
    assert export_model(build_franking_lp(2), MPS) == \
        export_model(build_franking_lp(2), MPS)


def test_seventeen_significant_digits():
    model = build_tightened_ranking_lp(3)
    text = export_model(model, LP_TEXT)
    # a third shows up in aggregation weights and must round-trip exactly
    assert "0.33333333333333331" in text


def test_parsed_model_solves_to_same_objective():
    model = build_franking_lp(3)
    want = solve(model, engine="highs").objective_value
    for fmt in (LP_TEXT, MPS):
        back = parse_model(export_model(model, fmt))
        got = solve(back, engine="highs").objective_value
        assert abs(got - want) <= 1e-9


def test_golden_franking_n1():
    text = export_model(build_franking_lp(1), LP_TEXT)
    golden = (GOLDEN / "franking_n1.lp").read_text()
    assert text == golden


def test_solution_file_round_trip():
    model = build_franking_lp(1)
    sol = solve(model, engine="simplex")
    text = write_solution(sol.assignment, sol.objective_value)
    back = read_solution(text)
    assert back == sol.assignment
    report = verify_solution(model, back, tol=1e-8)
    assert report.ok


def test_solution_file_comments_ignored():
    parsed = read_solution("# heading\nx 1.5\n\n y 2 # trailing\n")
    assert parsed == {"x": 1.5, "y": 2.0}


def test_model_dump_lists_every_constraint():
    model = build_franking_lp(1)
    dump = model.dump()
    assert dump.count("\n") >= model.constraint_count
    for c in model.constraints[:5]:
        assert c.tag in dump
