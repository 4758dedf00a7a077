"""Model export/import: CPLEX-LP dialect and free MPS, plus solution files.

Exports are byte-stable for a given model and print numerals with 17
significant digits so coefficients round-trip through text exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .lpmodel import LPModel

LP_TEXT = "LP_TEXT"
MPS = "MPS"


def _num(x) -> str:
    return format(float(x), ".17g")


def _lp_terms(coeffs: dict) -> str:
    parts = []
    for i, var in enumerate(sorted(coeffs)):
        c = float(coeffs[var])
        sign = "-" if c < 0 else "+"
        if i == 0 and sign == "+":
            parts.append(f"{_num(abs(c))} {var}")
        else:
            parts.append(f"{sign} {_num(abs(c))} {var}")
    return " ".join(parts) if parts else "0"


def _row_name(i: int) -> str:
    return f"c{i}"


def export_model(model: LPModel, format: str = LP_TEXT) -> str:
    if format == LP_TEXT:
        return _export_lp(model)
    if format == MPS:
        return _export_mps(model)
    raise ValueError(f"unknown format {format!r}")


def _export_lp(model: LPModel) -> str:
    lines = [f"\\ {model.name} variant={model.variant} n={model.n}"
             + (f" k={model.k}" if model.k is not None else ""),
             "Maximize",
             f" obj: {_lp_terms(model.objective)}",
             "Subject To"]
    for i, con in enumerate(model.constraints):
        op = {"<=": "<=", ">=": ">=", "=": "="}[con.sense]
        lines.append(f" {_row_name(i)}: {_lp_terms(con.coeffs)} {op} {_num(con.rhs)}")
    lines.append("Bounds")
    for name in model.variables:
        lo, hi = model.variables[name]
        if lo is None and hi is None:
            lines.append(f" {name} free")
        elif lo is None:
            lines.append(f" -infinity <= {name} <= {_num(hi)}")
        elif hi is None:
            lines.append(f" {_num(lo)} <= {name}")
        else:
            lines.append(f" {_num(lo)} <= {name} <= {_num(hi)}")
    lines.append("End")
    return "\n".join(lines) + "\n"


def _export_mps(model: LPModel) -> str:
    lines = [f"NAME {model.name}", "ROWS", " N obj"]
    sense_code = {"<=": "L", ">=": "G", "=": "E"}
    for i, con in enumerate(model.constraints):
        lines.append(f" {sense_code[con.sense]} {_row_name(i)}")
    lines.append("COLUMNS")
    rows_of = {name: [] for name in model.variables}
    for v, c in model.objective.items():
        rows_of[v].append(("obj", c))
    for i, con in enumerate(model.constraints):
        rn = _row_name(i)
        for v, c in con.coeffs.items():
            rows_of[v].append((rn, c))
    for name in model.variables:
        entries = rows_of[name]
        for j in range(0, len(entries), 2):
            chunk = entries[j:j + 2]
            body = " ".join(f"{rn} {_num(c)}" for rn, c in chunk)
            lines.append(f" {name} {body}")
    lines.append("RHS")
    for i, con in enumerate(model.constraints):
        if con.rhs != 0:
            lines.append(f" RHS {_row_name(i)} {_num(con.rhs)}")
    lines.append("BOUNDS")
    for name in model.variables:
        lo, hi = model.variables[name]
        if lo is None and hi is None:
            lines.append(f" FR BND {name}")
        else:
            if lo is None:
                lines.append(f" MI BND {name}")
            elif lo != 0:
                lines.append(f" LO BND {name} {_num(lo)}")
            if hi is not None:
                lines.append(f" UP BND {name} {_num(hi)}")
    lines.append("ENDATA")
    return "\n".join(lines) + "\n"


def parse_model(text: str) -> LPModel:
    stripped = text.lstrip()
    if stripped.startswith("NAME"):
        return _parse_mps(text)
    return _parse_lp(text)


def _frac(token: str) -> Fraction:
    return Fraction(float(token))


def _parse_linear(tokens: list) -> dict:
    """Parse `[+-] coef name ...` token runs into a coefficient dict."""
    coeffs = {}
    sign = 1
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok == "+":
            sign = 1
            i += 1
            continue
        if tok == "-":
            sign = -1
            i += 1
            continue
        coef = _frac(tok)
        name = tokens[i + 1]
        coeffs[name] = coeffs.get(name, Fraction(0)) + sign * coef
        sign = 1
        i += 2
    return {v: c for v, c in coeffs.items() if c != 0}


def _parse_lp(text: str) -> LPModel:
    header = {}
    section = None
    objective = {}
    constraints = []  # (name, coeffs, sense, rhs)
    bounds = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("\\"):
            for part in line[1:].split():
                if "=" in part:
                    key, val = part.split("=", 1)
                    header[key] = val
                else:
                    header.setdefault("name", part)
            continue
        low = line.lower()
        if low in ("maximize", "minimize"):
            section = "obj"
            continue
        if low == "subject to":
            section = "st"
            continue
        if low == "bounds":
            section = "bounds"
            continue
        if low == "end":
            break
        if section == "obj":
            body = line.split(":", 1)[1] if ":" in line else line
            objective.update(_parse_linear(body.split()))
        elif section == "st":
            name, body = line.split(":", 1)
            for op in ("<=", ">=", "="):
                if f" {op} " in body:
                    lhs, rhs = body.rsplit(f" {op} ", 1)
                    constraints.append((name.strip(), _parse_linear(lhs.split()),
                                        op, _frac(rhs)))
                    break
            else:
                raise ValueError(f"constraint without comparator: {line!r}")
        elif section == "bounds":
            tokens = line.split()
            if tokens[-1] == "free" and len(tokens) == 2:
                bounds[tokens[0]] = (None, None)
            elif "<=" in tokens:
                if len(tokens) == 5:
                    lo = None if tokens[0] == "-infinity" else _frac(tokens[0])
                    bounds[tokens[2]] = (lo, _frac(tokens[4]))
                elif len(tokens) == 3:
                    bounds[tokens[2]] = (_frac(tokens[0]), None)
            else:
                raise ValueError(f"unparsed bound line {line!r}")
    model = LPModel(header.get("name", "parsed"), header.get("variant", "parsed"),
                    int(header.get("n", 0)),
                    int(header["k"]) if "k" in header else None)
    seen = set()
    for _, coeffs, _, _ in constraints:
        seen.update(coeffs)
    seen.update(objective)
    for name in sorted(seen | set(bounds)):
        lo, hi = bounds.get(name, (Fraction(0), None))
        model.add_variable(name, lo, hi)
    for cname, coeffs, op, rhs in constraints:
        model.add_constraint(cname, (), coeffs, op, rhs)
    model.objective = objective
    return model


def _parse_mps(text: str) -> LPModel:
    section = None
    name = "parsed"
    row_sense = {}
    row_order = []
    columns = {}
    rhs = {}
    bounds = {}
    objective_row = None
    for raw in text.splitlines():
        if not raw.strip():
            continue
        tokens = raw.split()
        head = tokens[0].upper()
        if head == "NAME":
            name = tokens[1] if len(tokens) > 1 else name
            continue
        if len(tokens) == 1 and head in ("ROWS", "COLUMNS", "RHS", "BOUNDS", "RANGES"):
            section = head
            continue
        if head == "ENDATA":
            break
        if section == "ROWS":
            code, rname = tokens
            if code == "N":
                objective_row = rname
            else:
                row_sense[rname] = {"L": "<=", "G": ">=", "E": "="}[code]
                row_order.append(rname)
        elif section == "COLUMNS":
            var = tokens[0]
            col = columns.setdefault(var, {})
            for j in range(1, len(tokens), 2):
                col[tokens[j]] = col.get(tokens[j], Fraction(0)) + _frac(tokens[j + 1])
        elif section == "RHS":
            for j in range(1, len(tokens), 2):
                rhs[tokens[j]] = _frac(tokens[j + 1])
        elif section == "BOUNDS":
            code, _, var = tokens[0], tokens[1], tokens[2]
            lo, hi = bounds.get(var, (Fraction(0), None))
            if code == "FR":
                lo, hi = None, None
            elif code == "MI":
                lo = None
            elif code == "LO":
                lo = _frac(tokens[3])
            elif code == "UP":
                hi = _frac(tokens[3])
            else:
                raise ValueError(f"unsupported bound code {code}")
            bounds[var] = (lo, hi)
    model = LPModel(name, "parsed", 0)
    for var in columns:
        lo, hi = bounds.get(var, (Fraction(0), None))
        model.add_variable(var, lo, hi)
    objective = {}
    by_row = {rname: {} for rname in row_order}
    for var, entries in columns.items():
        for rname, coef in entries.items():
            if rname == objective_row:
                objective[var] = coef
            else:
                by_row[rname][var] = coef
    for rname in row_order:
        model.add_constraint(rname, (), by_row[rname], row_sense[rname],
                             rhs.get(rname, Fraction(0)))
    model.objective = objective
    return model


def models_equal_as_floats(a: LPModel, b: LPModel) -> bool:
    """Structural equality after float conversion, comparing constraints by
    export row order (tags are not preserved by the text formats)."""
    def norm_bounds(m):
        return [(None if lo is None else float(lo), None if hi is None else float(hi))
                for (lo, hi) in m.variables.values()]

    def norm_obj(m):
        return {v: float(c) for v, c in m.objective.items() if float(c) != 0.0}

    def norm_cons(m):
        return [({v: float(c) for v, c in con.coeffs.items() if float(c) != 0.0},
                 con.sense, float(con.rhs)) for con in m.constraints]

    return (sorted(a.variables) == sorted(b.variables)
            and dict(zip(a.variables, norm_bounds(a)))
            == dict(zip(b.variables, norm_bounds(b)))
            and norm_obj(a) == norm_obj(b)
            and norm_cons(a) == norm_cons(b))


def read_solution(text: str) -> dict:
    """Parse `name value` lines; '#' starts a comment."""
    out = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, value = line.split()
        out[name] = float(value)
    return out


def write_solution(assignment: dict, objective: float | None = None) -> str:
    lines = []
    if objective is not None:
        lines.append(f"# objective {_num(objective)}")
    for name in sorted(assignment):
        lines.append(f"{name} {_num(assignment[name])}")
    return "\n".join(lines) + "\n"
