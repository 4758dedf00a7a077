from fractions import Fraction
from itertools import product

import pytest

from qcmatch.lpfactory import (build_franking_lp, build_odd_girth_ranking_lp,
                               build_ranking_lp, build_tightened_ranking_lp)
from qcmatch.solver import solve, verify_solution


def declarative_tags(variant: str, n: int) -> list:
    """Independent re-enumeration of every constraint family as a declarative
    index-set product, written separately from the factory's loop nests."""
    R = range
    tags = []

    def emit(family, *idx):
        tags.append(f"{family}[{','.join(str(i) for i in idx)}]")

    if variant == "franking":
        for i in R(1, n):
            emit("func-g-mono", i)
        for k in R(0, n):
            emit("func-h-mono", k)
        emit("func-h-zero")
        for i in R(1, n + 1):
            emit("func-active-floor", i)
            emit("func-passive-floor", i)
        for iu in R(1, n + 1):
            emit("prof-botbot", iu)
            emit("prof-pp", iu)
        for iu, t0 in product(R(1, n + 1), R(0, n + 1)):
            emit("prof-pbot", iu, t0)
        for iu, ib, t0 in product(R(1, n + 1), R(1, n + 1), R(0, n + 1)):
            emit("prof-pa", iu, ib, t0)
        for iu, iv, t0, t1 in product(R(1, n + 1), R(1, n + 1),
                                      R(0, n + 1), R(1, n + 1)):
            if not iv <= t1:
                continue
            if t0 < t1:
                for fam in ("prof-abot-1", "prof-abot-2", "prof-abot-3",
                            "prof-abot-4"):
                    emit(fam, iu, iv, t0, t1)
            elif t0 == t1:
                for fam in ("prof-abot-eq1", "prof-abot-eq2"):
                    emit(fam, iu, iv, t0, t1)
        for iu, iv, ib, t0, t1 in product(R(1, n + 1), R(1, n + 1), R(1, n + 1),
                                          R(0, n + 1), R(1, n + 1)):
            if not (iv <= ib and iv <= t1):
                continue
            if t0 < t1:
                for fam in ("prof-aa-1", "prof-aa-2", "prof-aa-3",
                            "prof-aa-4", "prof-aa-5", "prof-aa-6"):
                    emit(fam, iu, iv, ib, t0, t1)
            elif t0 == t1:
                for fam in ("prof-aa-eq1", "prof-aa-eq2", "prof-aa-eq3"):
                    emit(fam, iu, iv, ib, t0, t1)
        for iu in R(1, n + 1):
            emit("agg-p-nobackup", iu)
            emit("agg-p-passive-backup", iu)
            emit("agg-a-nomatch", iu)
        for iu, ib in product(R(1, n + 1), R(1, n + 1)):
            emit("agg-p-active-backup", iu, ib)
        for iu, isv in product(R(1, n + 1), R(1, n + 1)):
            emit("agg-a-nobackup", iu, isv)
        for iu, ib, isv in product(R(1, n + 1), R(1, n + 1), R(1, n + 1)):
            if isv <= ib:
                emit("agg-a-backup-at", iu, ib, isv)
                emit("agg-a-backup-above", iu, ib, isv)
        for t1u in R(0, n + 1):
            emit("objective-split", t1u)
        return tags

    # rank-driven variants share the base families
    for i, j in product(R(1, n + 1), R(1, n)):
        emit("func-g-col", i, j)
    for k, l in product(R(0, n + 1), R(0, n)):
        emit("func-h-col", k, l)
    for i, j in product(R(1, n), R(1, n + 1)):
        emit("func-g-row", i, j)
    for k, l in product(R(0, n), R(0, n + 1)):
        emit("func-h-row", k, l)
    for k in R(0, n + 1):
        emit("func-h-zero", k)
    for i, j in product(R(1, n + 1), R(1, n + 1)):
        emit("func-active-floor", i, j)
        emit("func-passive-floor", i, j)
        emit("def-gB", i, j)
        emit("def-gP", i, j)
    for iu in R(1, n + 1):
        emit("nomatch", iu)

    if variant == "simple":
        for iu, iv, t0 in product(R(1, n + 1), R(1, n + 1), R(0, n + 1)):
            if t0 <= iu <= iv:
                emit("nobackup-1", iu, iv, t0)
            if iv <= iu and t0 <= iu:
                emit("nobackup-2", iu, iv, t0)
            if iv <= iu and iu - 1 <= t0 <= iu:
                emit("nobackup-3", iu, iv, t0)
    elif variant == "tightened":
        for iu, iv, t0, t3 in product(R(1, n + 1), R(1, n + 1),
                                      R(0, n + 1), R(0, n + 1)):
            if t3 < t0 <= iu <= iv:
                emit("nobackup-t1", iu, iv, t0, t3)
            if t3 == t0 <= iu <= iv:
                emit("nobackup-t2", iu, iv, t0, t3)
            if iv <= iu and t3 < t0 <= iu:
                emit("nobackup-t3", iu, iv, t0, t3)
            if iv <= iu and t3 == t0 <= iu:
                emit("nobackup-t4", iu, iv, t0, t3)
        for iu, iv, t0 in product(R(1, n + 1), R(1, n + 1), R(0, n + 1)):
            if iv <= iu and iu - 1 <= t0 <= iu:
                emit("nobackup-t5", iu, iv, t0)
    else:  # oddgirth
        for iu, iv, t0 in product(R(1, n + 1), R(1, n + 1), R(0, n + 1)):
            if t0 <= iu <= iv:
                emit("nobackup-og1", iu, iv, t0)
            if iv <= iu and t0 <= iu:
                emit("nobackup-og2", iu, iv, t0)

    backup3 = variant in ("simple", "tightened")
    for iu, iv, ib, t0 in product(R(1, n + 1), R(1, n + 1), R(1, n + 1),
                                  R(0, n + 1)):
        if t0 <= iu <= iv < ib:
            emit("backup-11", iu, iv, ib, t0)
        if t0 <= iu <= iv == ib:
            emit("backup-12", iu, iv, ib, t0)
        if iv <= iu and iv <= ib and t0 <= iu:
            emit("backup-2", iu, iv, ib, t0)
        if backup3 and iv <= iu and iv <= ib and iu - 1 <= t0 <= iu:
            emit("backup-3", iu, iv, ib, t0)

    for iu in R(1, n + 1):
        emit("agg-nomatch", iu)
    for iu, isv in product(R(1, n + 1), R(1, n + 1)):
        emit("agg-nobackup", iu, isv)
    for iu, ib, isv in product(R(1, n + 1), R(1, n + 1), R(1, n + 1)):
        if isv <= ib:
            emit("agg-backup-above", iu, ib, isv)
            emit("agg-backup-at", iu, ib, isv)
    return tags


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("builder,variant,extra", [
    (build_ranking_lp, "simple", ()),
    (build_tightened_ranking_lp, "tightened", ()),
    (build_odd_girth_ranking_lp, "oddgirth", (2,)),
    (build_odd_girth_ranking_lp, "oddgirth", (3,)),
    (build_franking_lp, "franking", ()),
])
def test_constraint_multiset_parity(n, builder, variant, extra):
    model = builder(n, *extra)
    assert sorted(model.tags()) == sorted(declarative_tags(variant, n))


def test_tag_totality_simple():
    model = build_ranking_lp(2)
    families = set(model.families())
    assert families == {
        "func-g-col", "func-h-col", "func-g-row", "func-h-row", "func-h-zero",
        "func-active-floor", "func-passive-floor", "def-gB", "def-gP",
        "nomatch", "nobackup-1", "nobackup-2", "nobackup-3",
        "backup-11", "backup-12", "backup-2", "backup-3",
        "agg-nomatch", "agg-nobackup", "agg-backup-above", "agg-backup-at"}


def test_h_zero_rows_pinned():
    model = build_ranking_lp(3)
    zero_rows = [c for c in model.constraints if c.family == "func-h-zero"]
    assert len(zero_rows) == 4
    for c in zero_rows:
        assert c.sense == "=" and c.rhs == 0
        assert list(c.coeffs.values()) == [Fraction(1)]


def test_models_validate():
    for model in (build_ranking_lp(2), build_tightened_ranking_lp(2),
                  build_odd_girth_ranking_lp(2, 4), build_franking_lp(2)):
        model.validate()
        assert model.dump() == model.dump()  # bit-stable


def test_zero_assignment_feasible_in_function_families():
    model = build_ranking_lp(2)
    zero = {v: 0.0 for v in model.variables}
    # direction variables defined as 1 - g - h need their defining value
    for name in model.variables:
        if name.startswith("gB"):
            zero[name] = 1.0
    report = verify_solution(model, zero, tol=1e-9)
    bad_families = {t.split("[")[0] for (t, _) in report.violations}
    assert "func-active-floor" not in bad_families
    assert "func-passive-floor" not in bad_families
    assert "func-h-col" not in bad_families
    assert report.objective_value == 0.0


def test_simple_not_above_tightened_at_n1():
    simple = solve(build_ranking_lp(1), engine="simplex").objective_value
    tight = solve(build_tightened_ranking_lp(1), engine="simplex").objective_value
    assert simple <= tight + 1e-9
    assert abs(tight - 0.39999) <= 5e-5


def test_oddgirth_requires_k_at_least_two():
    with pytest.raises(ValueError):
        build_odd_girth_ranking_lp(3, 1)


def test_oddgirth_k2_at_least_simple():
    for n in (1, 2, 3):
        simple = solve(build_ranking_lp(n), engine="highs").objective_value
        og = solve(build_odd_girth_ranking_lp(n, 2), engine="highs").objective_value
        assert og >= simple - 1e-9


def test_monotone_in_n_regression_signal(recwarn):
    import warnings
    values = [solve(build_franking_lp(n), engine="highs").objective_value
              for n in (1, 2, 3)]
    for a, b in zip(values, values[1:]):
        if b < a - 1e-9:
            warnings.warn(f"objective regressed from {a} to {b}")
    assert len(recwarn) == 0


def test_solved_functions_respect_shape_constraints():
    model = build_tightened_ranking_lp(3)
    sol = solve(model, engine="highs")
    a = sol.assignment
    n = 3
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            assert -1e-9 <= a[f"g_{i}_{j}"] <= 1 + 1e-9
    for k in range(0, n + 1):
        for l in range(0, n + 1):
            assert a[f"h_{k}_{l}"] >= -1e-9
            if l < n:
                assert a[f"h_{k}_{l}"] <= a[f"h_{k}_{l + 1}"] + 1e-9
            if k < n:
                assert a[f"h_{k}_{l}"] >= a[f"h_{k + 1}_{l}"] - 1e-9
        assert abs(a[f"h_{k}_0"]) <= 1e-9
