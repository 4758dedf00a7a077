"""Constraint generators for the four discretized factor-revealing LPs.

The unit interval is split into n cells; cell i covers ((i-1)/n, i/n].  The
gain function g and compensation function h are piecewise constant on cells,
so each bounding-function family enumerates concrete grid indices and all
coefficients are exact rationals with denominator n (or 2n).

Variants:
  simple     rank-driven order, paths of length >= 4 treated as length 4
  tightened  adds the long-path (length-6) refinement of the no-backup family
  oddgirth   simple base plus k compensation copies on graphs without short
             odd cycles (k >= 2)
  franking   adversarial decision order with one-sided randomness
"""

from __future__ import annotations

from fractions import Fraction

from .lpmodel import LPModel, add_term

HALF = Fraction(1, 2)


def _g(i, j):
    return f"g_{i}_{j}"


def _h(k, l):
    return f"h_{k}_{l}"


def _gB(i, j):
    return f"gB_{i}_{j}"


def _gP(i, j):
    return f"gP_{i}_{j}"


def _G0(iu):
    return f"G0_{iu}"


def _Gv(iu, iv):
    return f"Gv_{iu}_{iv}"


def _Gb(iu, iv, ib):
    return f"Gb_{iu}_{iv}_{ib}"


def _Gu(iu):
    return f"Gu_{iu}"


def _declare_ranking_base(model: LPModel, n: int, copies: int) -> None:
    """Shared variables and function/definition constraints of the rank-driven
    LPs; `copies` is the compensation multiple in the matched-gain floors."""
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            model.add_variable(_g(i, j), 0, 1)
    for k in range(0, n + 1):
        for l in range(0, n + 1):
            model.add_variable(_h(k, l), 0, 1)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            model.add_variable(_gB(i, j))
            model.add_variable(_gP(i, j))
    for i in range(1, n + 1):
        model.add_variable(_G0(i))
        model.add_variable(_Gu(i))
        for j in range(1, n + 1):
            model.add_variable(_Gv(i, j))
            for b in range(j, n + 1):
                model.add_variable(_Gb(i, j, b))

    # monotone in the second argument, antitone in the first
    for i in range(1, n + 1):
        for j in range(1, n):
            model.add_constraint("func-g-col", (i, j),
                                 {_g(i, j): 1, _g(i, j + 1): -1}, "<=")
    for k in range(0, n + 1):
        for l in range(0, n):
            model.add_constraint("func-h-col", (k, l),
                                 {_h(k, l): 1, _h(k, l + 1): -1}, "<=")
    for i in range(1, n):
        for j in range(1, n + 1):
            model.add_constraint("func-g-row", (i, j),
                                 {_g(i, j): 1, _g(i + 1, j): -1}, ">=")
    for k in range(0, n):
        for l in range(0, n + 1):
            model.add_constraint("func-h-row", (k, l),
                                 {_h(k, l): 1, _h(k + 1, l): -1}, ">=")
    for k in range(0, n + 1):
        model.add_constraint("func-h-zero", (k,), {_h(k, 0): 1}, "=", 0)
    # being matched must outweigh `copies` compensation payments
    top = _h(1, n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            c = {_g(i, j): -1, _h(i, j): -1}
            add_term(c, top, -copies)
            model.add_constraint("func-active-floor", (i, j), c, ">=", -1)
            c = {_g(i, j): 1, _h(j, i): -1}
            add_term(c, top, -copies)
            model.add_constraint("func-passive-floor", (i, j), c, ">=", 0)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            model.add_constraint("def-gB", (i, j),
                                 {_gB(i, j): 1, _g(i, j): 1, _h(i, j): 1}, "=", 1)
            model.add_constraint("def-gP", (i, j),
                                 {_gP(i, j): 1, _g(i, j): -1, _h(j, i): 1}, "=", 0)


def _nomatch_family(model: LPModel, n: int) -> None:
    inv = Fraction(1, n)
    for iu in range(1, n + 1):
        c = {_G0(iu): 1}
        for j in range(1, n + 1):
            add_term(c, _gP(iu, j), -inv)
        model.add_constraint("nomatch", (iu,), c, "<=")


def _nobackup_rhs_1(n, iu, iv, t0) -> dict:
    """Upper bound for the no-backup profile when the vertex outranks its
    match's cell (iu <= iv), with the impacting rank at grid point t0."""
    c = {}
    for j in range(1, iv):
        add_term(c, _gP(iu, j), 1)
    add_term(c, _gP(iu, iv), HALF)
    add_term(c, _h(iu, t0), n - iv)
    add_term(c, _h(iv, iu), n - iv)
    for j in range(1, t0 + 1):
        add_term(c, _h(j, iu), 1)
    add_term(c, _h(iu, iv), t0)
    add_term(c, _gB(iu, iv), n - t0)
    return c


def _nobackup_rhs_2(n, iu, iv, t0) -> dict:
    c = {}
    for j in range(1, t0 + 1):
        add_term(c, _g(iv, j), 1)
    for j in range(t0 + 1, iv):
        add_term(c, _gP(iu, j), 1)
    cover = n - max(t0, iv - 1)
    add_term(c, _h(iv, t0), cover)
    add_term(c, _h(iv, iu), cover)
    add_term(c, _h(iu, iv), t0)
    add_term(c, _gB(iu, iv), n - t0)
    return c


def _nobackup_rhs_3(n, iu, iv, t0) -> dict:
    c = {}
    for j in range(1, t0 + 1):
        add_term(c, _g(iv, j), 1)
    add_term(c, _h(iv, iu), n - t0)
    add_term(c, _gB(iu, iv), n - t0)
    return c


def _backup_rhs_11(n, iu, iv, ib, t0) -> dict:
    c = {}
    for j in range(1, iv):
        add_term(c, _gP(iu, j), 1)
    add_term(c, _gP(iu, iv), HALF)
    span = max(ib - iv - 1, 0)
    add_term(c, _h(iu, t0), span)
    add_term(c, _h(iv, iu), span)
    add_term(c, _gB(iu, ib), t0)
    add_term(c, _gB(iu, iv), n - t0)
    return c


def _backup_rhs_12(n, iu, iv, ib, t0) -> dict:
    c = {}
    for j in range(1, iv):
        add_term(c, _gP(iu, j), 1)
    add_term(c, _gB(iu, ib), t0)
    add_term(c, _gB(iu, iv), n - t0)
    return c


def _backup_rhs_2(n, iu, iv, ib, t0) -> dict:
    c = {}
    for j in range(1, t0 + 1):
        add_term(c, _gP(iv, j), 1)
    for j in range(t0 + 1, iv):
        add_term(c, _gP(iu, j), 1)
    span = max(ib - 1 - max(t0, iv - 1), 0)
    add_term(c, _h(iv, t0), span)
    add_term(c, _h(iv, iu), span)
    add_term(c, _gB(iu, ib), t0)
    add_term(c, _gB(iu, iv), n - t0)
    return c


def _backup_rhs_3(n, iu, iv, ib, t0) -> dict:
    c = {}
    for j in range(1, t0 + 1):
        add_term(c, _gP(iv, j), 1)
    add_term(c, _h(iv, iu), max(ib - t0 - 1, 0))
    add_term(c, _gB(iu, ib), t0)
    add_term(c, _gB(iu, iv), n - t0)
    return c


def _backup_families(model: LPModel, n: int, extra_copies: int = 0,
                     include_theta_at_xu: bool = True) -> None:
    """Profile families for a matched vertex with a backup; extra_copies adds
    the large-odd-girth compensation multiple and drops the theta0-at-x_u
    family (short paths are impossible there)."""
    for iu in range(1, n + 1):
        for iv in range(iu, n + 1):
            for ib in range(iv + 1, n + 1):
                for t0 in range(0, iu + 1):
                    rhs = _backup_rhs_11(n, iu, iv, ib, t0)
                    if extra_copies:
                        add_term(rhs, _h(iv, t0), (ib - iv - 1) * extra_copies)
                    _emit(model, "backup-11", (iu, iv, ib, t0),
                          _Gb(iu, iv, ib), rhs, n)
            for t0 in range(0, iu + 1):
                _emit(model, "backup-12", (iu, iv, iv, t0), _Gb(iu, iv, iv),
                      _backup_rhs_12(n, iu, iv, iv, t0), n)
    for iu in range(1, n + 1):
        for iv in range(1, iu + 1):
            for ib in range(iv, n + 1):
                for t0 in range(0, iu + 1):
                    rhs = _backup_rhs_2(n, iu, iv, ib, t0)
                    if extra_copies:
                        add_term(rhs, _h(iv, t0),
                                 max(ib - 1 - max(t0, iv - 1), 0) * extra_copies)
                    _emit(model, "backup-2", (iu, iv, ib, t0),
                          _Gb(iu, iv, ib), rhs, n)
                if include_theta_at_xu:
                    for t0 in (iu - 1, iu):
                        _emit(model, "backup-3", (iu, iv, ib, t0),
                              _Gb(iu, iv, ib),
                              _backup_rhs_3(n, iu, iv, ib, t0), n)


def _aggregation(model: LPModel, n: int) -> None:
    for iu in range(1, n + 1):
        model.add_constraint("agg-nomatch", (iu,),
                             {_Gu(iu): 1, _G0(iu): -1}, "<=")
        for isv in range(1, n + 1):
            c = {_Gu(iu): Fraction(1)}
            w = Fraction(1, n + 1 - isv)
            for j in range(isv, n + 1):
                add_term(c, _Gv(iu, j), -w)
            model.add_constraint("agg-nobackup", (iu, isv), c, "<=")
        for ib in range(1, n + 1):
            for isv in range(1, ib + 1):
                w = Fraction(1, ib + 1 - isv)
                c = {_Gu(iu): Fraction(1)}
                for j in range(isv, ib + 1):
                    add_term(c, _Gb(iu, j, min(ib + 1, n)), -w)
                model.add_constraint("agg-backup-above", (iu, ib, isv), c, "<=")
                c = {_Gu(iu): Fraction(1)}
                for j in range(isv, ib + 1):
                    add_term(c, _Gb(iu, j, ib), -w)
                model.add_constraint("agg-backup-at", (iu, ib, isv), c, "<=")
    model.objective = {_Gu(iu): Fraction(1, n) for iu in range(1, n + 1)}


def build_ranking_lp(n: int) -> LPModel:
    """Rank-driven LP treating every long alternating path as length 4."""
    if n < 1:
        raise ValueError("n must be >= 1")
    model = LPModel(f"ranking_n{n}", "simple", n)
    _declare_ranking_base(model, n, copies=4)
    _nomatch_family(model, n)
    for iu in range(1, n + 1):
        for iv in range(iu, n + 1):
            for t0 in range(0, iu + 1):
                _emit(model, "nobackup-1", (iu, iv, t0), _Gv(iu, iv),
                      _nobackup_rhs_1(n, iu, iv, t0), n)
        for iv in range(1, iu + 1):
            for t0 in range(0, iu + 1):
                _emit(model, "nobackup-2", (iu, iv, t0), _Gv(iu, iv),
                      _nobackup_rhs_2(n, iu, iv, t0), n)
            for t0 in (iu - 1, iu):
                _emit(model, "nobackup-3", (iu, iv, t0), _Gv(iu, iv),
                      _nobackup_rhs_3(n, iu, iv, t0), n)
    _backup_families(model, n)
    _aggregation(model, n)
    model.validate()
    return model


def build_tightened_ranking_lp(n: int) -> LPModel:
    """Rank-driven LP with the length-6 refinement of the no-backup family."""
    if n < 1:
        raise ValueError("n must be >= 1")
    model = LPModel(f"tightened_n{n}", "tightened", n)
    _declare_ranking_base(model, n, copies=4)
    _nomatch_family(model, n)
    for iu in range(1, n + 1):
        for iv in range(iu, n + 1):
            for t0 in range(0, iu + 1):
                for t3 in range(0, t0):
                    _emit(model, "nobackup-t1", (iu, iv, t0, t3), _Gv(iu, iv),
                          _tight_rhs_1(n, iu, iv, t0, t3), n)
                _emit(model, "nobackup-t2", (iu, iv, t0, t0), _Gv(iu, iv),
                      _tight_rhs_2(n, iu, iv, t0), n)
        for iv in range(1, iu + 1):
            for t0 in range(0, iu + 1):
                for t3 in range(0, t0):
                    _emit(model, "nobackup-t3", (iu, iv, t0, t3), _Gv(iu, iv),
                          _tight_rhs_3(n, iu, iv, t0, t3), n)
                _emit(model, "nobackup-t4", (iu, iv, t0, t0), _Gv(iu, iv),
                      _tight_rhs_4(n, iu, iv, t0), n)
            for t0 in (iu - 1, iu):
                _emit(model, "nobackup-t5", (iu, iv, t0), _Gv(iu, iv),
                      _nobackup_rhs_3(n, iu, iv, t0), n)
    _backup_families(model, n)
    _aggregation(model, n)
    model.validate()
    return model


def _tight_rhs_1(n, iu, iv, t0, t3) -> dict:
    c = {}
    for j in range(1, iv):
        add_term(c, _gP(iu, j), 1)
    add_term(c, _gP(iu, iv), HALF)
    add_term(c, _gB(iu, iv), n - t0)
    span = n - iv
    add_term(c, _h(iu, t0), span)
    add_term(c, _h(iv, iu), span)
    add_term(c, _h(iu, t3), span)
    add_term(c, _h(iv, t3), span)
    for j in range(1, t0 + 1):
        add_term(c, _h(j, iu), 1)
    add_term(c, _h(min(t3 + 1, iu), 1), t3)
    add_term(c, _h(iu, iv), t3)
    add_term(c, _h(min(t0 + 1, iu), iv), t0 - t3)
    return c


def _tight_rhs_2(n, iu, iv, t0) -> dict:
    t3 = t0
    c = {}
    for j in range(1, iv):
        add_term(c, _gP(iu, j), 1)
    add_term(c, _gP(iu, iv), HALF)
    add_term(c, _gB(iu, iv), n - t0)
    span = n - iv
    add_term(c, _h(iv, iu), span)
    add_term(c, _h(iu, t3), span)
    add_term(c, _h(iv, t3), span)
    for j in range(1, t0 + 1):
        add_term(c, _h(j, iu), 1)
    add_term(c, _h(min(t3 + 1, iu), 1), t3)
    add_term(c, _h(iu, iv), t3)
    return c


def _tight_rhs_3(n, iu, iv, t0, t3) -> dict:
    c = {}
    for j in range(1, t0 + 1):
        add_term(c, _g(iv, j), 1)
    for j in range(t0 + 1, iv):
        add_term(c, _gP(iu, j), 1)
    add_term(c, _gB(iu, iv), n - t0)
    cover = n - max(t0, iv - 1)
    add_term(c, _h(iv, t0), cover)
    add_term(c, _h(iv, iu), cover)
    add_term(c, _h(iv, t3), 2 * cover)
    add_term(c, _h(min(t3 + 1, iu), 1), t3)
    add_term(c, _h(iu, iv), t3)
    add_term(c, _h(min(t0 + 1, iu), iv), t0 - t3)
    return c


def _tight_rhs_4(n, iu, iv, t0) -> dict:
    t3 = t0
    c = {}
    for j in range(1, t0 + 1):
        add_term(c, _g(iv, j), 1)
    for j in range(t0 + 1, iv):
        add_term(c, _gP(iu, j), 1)
    add_term(c, _gB(iu, iv), n - t0)
    cover = n - max(t0, iv - 1)
    add_term(c, _h(iv, iu), cover)
    add_term(c, _h(iv, t3), 2 * cover)
    add_term(c, _h(min(t3 + 1, iu), 1), t3)
    add_term(c, _h(iu, iv), t3)
    return c


def build_odd_girth_ranking_lp(n: int, k: int) -> LPModel:
    """Simple-base LP for graphs whose shortest odd cycle has length >= 2k+1.

    Matched-gain floors scale to k compensation copies; the unmatched ranges
    collect max(k-2, 0) extra copies; the theta0-at-x_u families drop out
    because length-2 alternating paths need a triangle.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if k < 2:
        raise ValueError("k must be >= 2")
    mk = max(k - 2, 0)
    model = LPModel(f"oddgirth_n{n}_k{k}", "oddgirth", n, k)
    _declare_ranking_base(model, n, copies=k)
    _nomatch_family(model, n)
    for iu in range(1, n + 1):
        for iv in range(iu, n + 1):
            for t0 in range(0, iu + 1):
                rhs = _nobackup_rhs_1(n, iu, iv, t0)
                add_term(rhs, _h(iv, t0), (n - iv) * mk)
                add_term(rhs, _h(iu, 1), t0 * mk)
                _emit(model, "nobackup-og1", (iu, iv, t0), _Gv(iu, iv), rhs, n)
        for iv in range(1, iu + 1):
            for t0 in range(0, iu + 1):
                rhs = _nobackup_rhs_2(n, iu, iv, t0)
                add_term(rhs, _h(iv, t0), (n - max(t0, iv - 1)) * mk)
                add_term(rhs, _h(iu, 1), t0 * mk)
                _emit(model, "nobackup-og2", (iu, iv, t0), _Gv(iu, iv), rhs, n)
    _backup_families(model, n, extra_copies=mk, include_theta_at_xu=False)
    _aggregation(model, n)
    model.validate()
    return model


# --- adversarial-decision-order LP -----------------------------------------

def _fg(i):
    return f"g_{i}"


def _fh(k):
    return f"h_{k}"


def _GF0(iu):
    return f"GFbb_{iu}"


def _GFpb(iu):
    return f"GFpb_{iu}"


def _GFpp(iu):
    return f"GFpp_{iu}"


def _GFpa(iu, ib):
    return f"GFpa_{iu}_{ib}"


def _GFab(iu, iv):
    return f"GFab_{iu}_{iv}"


def _GFaa(iu, iv, ib):
    return f"GFaa_{iu}_{iv}_{ib}"


def _GFP(iu):
    return f"GFP_{iu}"


def _GFA(iu):
    return f"GFA_{iu}"


def build_franking_lp(n: int) -> LPModel:
    """One-sided-randomness LP for the adversarial decision order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    model = LPModel(f"franking_n{n}", "franking", n)
    for i in range(1, n + 1):
        model.add_variable(_fg(i), 0, 1)
    for kk in range(0, n + 1):
        model.add_variable(_fh(kk), 0, 1)
    for iu in range(1, n + 1):
        model.add_variable(_GF0(iu))
        model.add_variable(_GFpb(iu))
        model.add_variable(_GFpp(iu))
        model.add_variable(_GFP(iu))
        model.add_variable(_GFA(iu))
        for ib in range(1, n + 1):
            model.add_variable(_GFpa(iu, ib))
        for iv in range(1, n + 1):
            model.add_variable(_GFab(iu, iv))
            for ib in range(iv, n + 1):
                model.add_variable(_GFaa(iu, iv, ib))
    model.add_variable("W")

    for i in range(1, n):
        model.add_constraint("func-g-mono", (i,),
                             {_fg(i): 1, _fg(i + 1): -1}, "<=")
    for kk in range(0, n):
        model.add_constraint("func-h-mono", (kk,),
                             {_fh(kk): 1, _fh(kk + 1): -1}, "<=")
    model.add_constraint("func-h-zero", (), {_fh(0): 1}, "=", 0)
    for i in range(1, n + 1):
        model.add_constraint("func-active-floor", (i,),
                             {_fg(i): -1, _fh(i): -1, _fh(n): -1}, ">=", -1)
        model.add_constraint("func-passive-floor", (i,),
                             {_fg(i): 1, _fh(n): -1}, ">=", 0)

    inv = Fraction(1, n)
    sum_g_full = {}
    for kk in range(1, n + 1):
        add_term(sum_g_full, _fg(kk), 1)

    for iu in range(1, n + 1):
        _emit(model, "prof-botbot", (iu,), _GF0(iu), dict(sum_g_full), n)
        model.add_constraint("prof-pp", (iu,),
                             {_GFpp(iu): 1, _fg(iu): -1}, "<=")
        for t0 in range(0, n + 1):
            c = {}
            for kk in range(1, t0 + 1):
                add_term(c, _fg(kk), 1)
            add_term(c, _fh(t0), n - t0)
            add_term(c, _fg(iu), n - t0)
            _emit(model, "prof-pbot", (iu, t0), _GFpb(iu), c, n)
        for ib in range(1, n + 1):
            for t0 in range(0, n + 1):
                c = {}
                for kk in range(1, t0 + 1):
                    add_term(c, _fg(kk), 1)
                add_term(c, _fh(t0), max(ib - t0 - 1, 0))
                # active match with the backup: pays 1 - g(ib) - h(ib)
                add_term(c, _fg(ib), -t0)
                add_term(c, _fh(ib), -t0)
                add_term(c, _fg(iu), n - t0)
                _emit_with_const(model, "prof-pa", (iu, ib, t0), _GFpa(iu, ib),
                                 c, Fraction(t0), n)

    for iu in range(1, n + 1):
        for iv in range(1, n + 1):
            for t1 in range(iv, n + 1):
                for t0 in range(0, t1):
                    for tag, c, const in _abot_cases(n, iu, iv, t0, t1):
                        _emit_with_const(model, tag, (iu, iv, t0, t1),
                                         _GFab(iu, iv), c, const, n)
                t0 = t1
                for tag, c, const in _abot_eq_cases(n, iu, iv, t0):
                    _emit_with_const(model, tag, (iu, iv, t0, t1),
                                     _GFab(iu, iv), c, const, n)
            for ib in range(iv, n + 1):
                for t1 in range(iv, n + 1):
                    for t0 in range(0, t1):
                        for tag, c, const in _aa_cases(n, iu, iv, ib, t0, t1):
                            _emit_with_const(model, tag, (iu, iv, ib, t0, t1),
                                             _GFaa(iu, iv, ib), c, const, n)
                    t0 = t1
                    for tag, c, const in _aa_eq_cases(n, iu, iv, ib, t0):
                        _emit_with_const(model, tag, (iu, iv, ib, t0, t1),
                                         _GFaa(iu, iv, ib), c, const, n)

    for iu in range(1, n + 1):
        model.add_constraint("agg-p-nobackup", (iu,),
                             {_GFP(iu): 1, _GFpb(iu): -1}, "<=")
        model.add_constraint("agg-p-passive-backup", (iu,),
                             {_GFP(iu): 1, _GFpp(iu): -1}, "<=")
        for ib in range(1, n + 1):
            model.add_constraint("agg-p-active-backup", (iu, ib),
                                 {_GFP(iu): 1, _GFpa(iu, ib): -1}, "<=")
        model.add_constraint("agg-a-nomatch", (iu,),
                             {_GFA(iu): 1, _GF0(iu): -1}, "<=")
        for isv in range(1, n + 1):
            c = {_GFA(iu): Fraction(1)}
            w = Fraction(1, n + 1 - isv)
            for iv in range(isv, n + 1):
                add_term(c, _GFab(iu, iv), -w)
            model.add_constraint("agg-a-nobackup", (iu, isv), c, "<=")
        for ib in range(1, n + 1):
            for isv in range(1, ib + 1):
                w = Fraction(1, ib + 1 - isv)
                c = {_GFA(iu): Fraction(1)}
                for iv in range(isv, ib + 1):
                    add_term(c, _GFaa(iu, iv, ib), -w)
                model.add_constraint("agg-a-backup-at", (iu, ib, isv), c, "<=")
                c = {_GFA(iu): Fraction(1)}
                for iv in range(isv, ib + 1):
                    add_term(c, _GFaa(iu, iv, min(ib + 1, n)), -w)
                model.add_constraint("agg-a-backup-above", (iu, ib, isv), c, "<=")

    for t1u in range(0, n + 1):
        c = {"W": Fraction(1)}
        for iu in range(1, t1u + 1):
            add_term(c, _GFP(iu), -inv)
        for iu in range(t1u + 1, n + 1):
            add_term(c, _GFA(iu), -inv)
        model.add_constraint("objective-split", (t1u,), c, "<=")
    model.objective = {"W": Fraction(1)}
    model.validate()
    return model


def _emit_with_const(model: LPModel, family: str, indices, bound_var: str,
                     rhs: dict, const, n: int) -> None:
    """bound_var <= (1/n) * (rhs + const)."""
    inv = Fraction(1, n)
    c = {bound_var: Fraction(1)}
    for var, coef in rhs.items():
        add_term(c, var, -coef * inv)
    model.add_constraint(family, indices, c, "<=", Fraction(const) * inv)


def _emit(model: LPModel, family: str, indices, bound_var: str, rhs: dict,
          n: int) -> None:
    _emit_with_const(model, family, indices, bound_var, rhs, 0, n)


def _sum_g(c, upto):
    for kk in range(1, upto + 1):
        add_term(c, _fg(kk), 1)


def _abot_cases(n, iu, iv, t0, t1):
    """No-backup active profile, thresholds at distinct grid cells."""
    pay = 1  # constant part contributed by each 1 - g(iv) - h(iv) copy
    # (1): both thresholds at the right cell ends, worse value g(iu)
    c = {}
    _sum_g(c, t1)
    add_term(c, _fh(t0), n - t1)
    add_term(c, _fh(iv), t0)
    add_term(c, _fg(iu), t1 - t0)
    add_term(c, _fg(iv), -(n - t1))
    add_term(c, _fh(iv), -(n - t1))
    yield "prof-abot-1", c, Fraction((n - t1) * pay)
    # (2): both right, worse value 1 - g(iv) - h(iv)
    c = {}
    _sum_g(c, t1)
    add_term(c, _fh(t0), n - t1)
    add_term(c, _fh(iv), t0)
    add_term(c, _fg(iv), -(n - t0))
    add_term(c, _fh(iv), -(n - t0))
    yield "prof-abot-2", c, Fraction((n - t0) * pay)
    # (3): marginal rank at the left cell end, worse value g(iu)
    c = {}
    _sum_g(c, t1 - 1)
    add_term(c, _fh(t0), n - t1 + 1)
    add_term(c, _fh(iv), t0)
    add_term(c, _fg(iu), t1 - t0 - 1)
    add_term(c, _fg(iv), -(n - t1 + 1))
    add_term(c, _fh(iv), -(n - t1 + 1))
    yield "prof-abot-3", c, Fraction((n - t1 + 1) * pay)
    # (4): marginal rank left, worse value 1 - g(iv) - h(iv)
    c = {}
    _sum_g(c, t1 - 1)
    add_term(c, _fh(t0), n - t1 + 1)
    add_term(c, _fh(iv), t0)
    add_term(c, _fg(iv), -(n - t0))
    add_term(c, _fh(iv), -(n - t0))
    yield "prof-abot-4", c, Fraction((n - t0) * pay)


def _abot_eq_cases(n, iu, iv, t0):
    t1 = t0
    c = {}
    _sum_g(c, t1)
    add_term(c, _fh(t0), n - t1)
    add_term(c, _fh(iv), t0)
    add_term(c, _fg(iu), t1 - t0)
    add_term(c, _fg(iv), -(n - t1))
    add_term(c, _fh(iv), -(n - t1))
    yield "prof-abot-eq1", c, Fraction(n - t1)
    c = {}
    _sum_g(c, t1)
    add_term(c, _fh(t0), n - t1)
    add_term(c, _fh(iv), t0)
    add_term(c, _fg(iv), -(n - t0))
    add_term(c, _fh(iv), -(n - t0))
    yield "prof-abot-eq2", c, Fraction(n - t0)


def _aa_cases(n, iu, iv, ib, t0, t1):
    """Backup-bearing active profile; six threshold/worst-value combinations."""
    head = {}
    _sum_g(head, t1)
    add_term(head, _fh(t0), max(ib - t1 - 1, 0))
    # (1): pre-threshold worst values (1-g(ib)-h(ib)) then (1-g(iv)-h(iv))
    c = dict(head)
    add_term(c, _fg(ib), -t0)
    add_term(c, _fh(ib), -t0)
    add_term(c, _fg(iv), -(t1 - t0))
    add_term(c, _fh(iv), -(t1 - t0))
    add_term(c, _fg(iv), -(n - t1))
    add_term(c, _fh(iv), -(n - t1))
    yield "prof-aa-1", c, Fraction(t0 + (t1 - t0) + (n - t1))
    # (2): (1-g(ib)-h(ib)) then g(iu)
    c = dict(head)
    add_term(c, _fg(ib), -t0)
    add_term(c, _fh(ib), -t0)
    add_term(c, _fg(iu), t1 - t0)
    add_term(c, _fg(iv), -(n - t1))
    add_term(c, _fh(iv), -(n - t1))
    yield "prof-aa-2", c, Fraction(t0 + (n - t1))
    # (3): g(iu) twice
    c = dict(head)
    add_term(c, _fg(iu), t0)
    add_term(c, _fg(iu), t1 - t0)
    add_term(c, _fg(iv), -(n - t1))
    add_term(c, _fh(iv), -(n - t1))
    yield "prof-aa-3", c, Fraction(n - t1)
    head = {}
    _sum_g(head, t1 - 1)
    add_term(head, _fh(t0), max(ib - t1, 0))
    # (4)-(6): marginal rank at the left cell end
    c = dict(head)
    add_term(c, _fg(ib), -t0)
    add_term(c, _fh(ib), -t0)
    add_term(c, _fg(iv), -(t1 - t0 - 1))
    add_term(c, _fh(iv), -(t1 - t0 - 1))
    add_term(c, _fg(iv), -(n - t1 + 1))
    add_term(c, _fh(iv), -(n - t1 + 1))
    yield "prof-aa-4", c, Fraction(t0 + (t1 - t0 - 1) + (n - t1 + 1))
    c = dict(head)
    add_term(c, _fg(ib), -t0)
    add_term(c, _fh(ib), -t0)
    add_term(c, _fg(iu), t1 - t0 - 1)
    add_term(c, _fg(iv), -(n - t1 + 1))
    add_term(c, _fh(iv), -(n - t1 + 1))
    yield "prof-aa-5", c, Fraction(t0 + (n - t1 + 1))
    c = dict(head)
    add_term(c, _fg(iu), t0)
    add_term(c, _fg(iu), t1 - t0 - 1)
    add_term(c, _fg(iv), -(n - t1 + 1))
    add_term(c, _fh(iv), -(n - t1 + 1))
    yield "prof-aa-6", c, Fraction(n - t1 + 1)


def _aa_eq_cases(n, iu, iv, ib, t0):
    t1 = t0
    head = {}
    _sum_g(head, t1)
    add_term(head, _fh(t0), max(ib - t1 - 1, 0))
    c = dict(head)
    add_term(c, _fg(ib), -t0)
    add_term(c, _fh(ib), -t0)
    add_term(c, _fg(iv), -(n - t1))
    add_term(c, _fh(iv), -(n - t1))
    yield "prof-aa-eq1", c, Fraction(t0 + (n - t1))
    c = dict(head)
    add_term(c, _fg(ib), -t0)
    add_term(c, _fh(ib), -t0)
    add_term(c, _fg(iu), t1 - t0)
    add_term(c, _fg(iv), -(n - t1))
    add_term(c, _fh(iv), -(n - t1))
    yield "prof-aa-eq2", c, Fraction(t0 + (n - t1))
    c = dict(head)
    add_term(c, _fg(iu), t0)
    add_term(c, _fg(iu), t1 - t0)
    add_term(c, _fg(iv), -(n - t1))
    add_term(c, _fh(iv), -(n - t1))
    yield "prof-aa-eq3", c, Fraction(n - t1)
