"""Linear program container with exact rational coefficients.

Every constraint carries a provenance tag (family label plus index tuple) so
solved models can be audited family by family; coefficients stay Fractions
until a solver ingests them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def add_term(coeffs: dict, var: str, coef) -> None:
    c = coeffs.get(var, Fraction(0)) + Fraction(coef)
    if c == 0:
        coeffs.pop(var, None)
    else:
        coeffs[var] = c


@dataclass(frozen=True)
class Constraint:
    family: str
    indices: tuple
    coeffs: dict
    sense: str  # "<=", ">=", "="
    rhs: Fraction

    @property
    def tag(self) -> str:
        inner = ",".join(str(i) for i in self.indices)
        return f"{self.family}[{inner}]"

    def render(self) -> str:
        parts = []
        for var in sorted(self.coeffs):
            c = self.coeffs[var]
            sign = "+" if c >= 0 else "-"
            parts.append(f"{sign} {abs(c)} {var}")
        lhs = " ".join(parts) if parts else "0"
        return f"{lhs} {self.sense} {self.rhs}"


@dataclass
class LPModel:
    """Maximization LP: variables with bounds, tagged constraints, objective."""

    name: str
    variant: str
    n: int
    k: int | None = None
    variables: dict = field(default_factory=dict)  # name -> (lower, upper); None = unbounded
    constraints: list = field(default_factory=list)
    objective: dict = field(default_factory=dict)

    def add_variable(self, name: str, lower=None, upper=None) -> str:
        if name in self.variables:
            raise ValueError(f"variable {name} declared twice")
        self.variables[name] = (None if lower is None else Fraction(lower),
                                None if upper is None else Fraction(upper))
        return name

    def add_constraint(self, family: str, indices, coeffs: dict, sense: str,
                       rhs=0) -> Constraint:
        if sense not in ("<=", ">=", "="):
            raise ValueError(f"bad sense {sense!r}")
        con = Constraint(family, tuple(indices), dict(coeffs), sense, Fraction(rhs))
        self.constraints.append(con)
        return con

    @property
    def constraint_count(self) -> int:
        return len(self.constraints)

    @property
    def variable_count(self) -> int:
        return len(self.variables)

    def families(self) -> dict:
        counts = {}
        for c in self.constraints:
            counts[c.family] = counts.get(c.family, 0) + 1
        return counts

    def tags(self) -> list:
        return [c.tag for c in self.constraints]

    def validate(self) -> None:
        """Every constraint references declared variables; every variable is
        referenced by at least one constraint or the objective."""
        used = set(self.objective)
        for c in self.constraints:
            unknown = set(c.coeffs) - set(self.variables)
            if unknown:
                raise ValueError(f"constraint {c.tag} uses undeclared {sorted(unknown)}")
            used.update(c.coeffs)
        unused = set(self.variables) - used
        if unused:
            raise ValueError(f"variables never referenced: {sorted(unused)[:8]}")
        dup = len(self.constraints) - len(set(self.tags()))
        if dup:
            raise ValueError(f"{dup} duplicate constraint tags")

    def dump(self) -> str:
        """One line per constraint: tag then the inequality with rational
        coefficients.  Bit-stable across runs for golden-file testing."""
        lines = [f"model {self.name} variant={self.variant} n={self.n}"
                 + (f" k={self.k}" if self.k is not None else "")]
        obj = " ".join(f"{'+' if self.objective[v] >= 0 else '-'} "
                       f"{abs(self.objective[v])} {v}"
                       for v in sorted(self.objective))
        lines.append(f"maximize {obj}")
        for name in sorted(self.variables):
            lo, hi = self.variables[name]
            lines.append(f"var {name} in "
                         f"[{'-inf' if lo is None else lo}, "
                         f"{'inf' if hi is None else hi}]")
        for c in self.constraints:
            lines.append(f"{c.tag}: {c.render()}")
        return "\n".join(lines) + "\n"

    def constraint_by_tag(self) -> dict:
        return {c.tag: c for c in self.constraints}
