"""Exact linear feasibility by phase-one simplex over fractions.

A system consists of equality rows ``a.x = b`` and inequality rows
``a.x >= b``, optionally with ``x >= 0``.  Infeasibility is reported with a
Farkas certificate: multipliers ``u`` (free on equalities, nonnegative on
inequalities and on the variable bounds) whose combined row has all-zero
coefficients and a strictly positive right-hand side, i.e. ``0 >= positive``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Row = tuple[tuple[Fraction, ...], Fraction]


def _row(coeffs: Iterable, rhs) -> Row:
    return tuple(Fraction(a) for a in coeffs), Fraction(rhs)


@dataclass(frozen=True)
class LinearSystem:
    variable_count: int
    equalities: tuple[Row, ...] = ()
    inequalities_ge: tuple[Row, ...] = ()
    nonnegative_variables: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "equalities", tuple(_row(a, b) for a, b in self.equalities))
        object.__setattr__(self, "inequalities_ge", tuple(_row(a, b) for a, b in self.inequalities_ge))
        for coeffs, _ in self.equalities + self.inequalities_ge:
            if len(coeffs) != self.variable_count:
                raise ValueError(f"row of length {len(coeffs)} in a system of {self.variable_count} variables")

    def satisfied_by(self, point: Sequence[Fraction]) -> bool:
        if len(point) != self.variable_count:
            return False
        if self.nonnegative_variables and any(x < 0 for x in point):
            return False
        dot = lambda a: sum((ai * xi for ai, xi in zip(a, point)), Fraction(0))  # noqa: E731
        return all(dot(a) == b for a, b in self.equalities) and all(dot(a) >= b for a, b in self.inequalities_ge)


@dataclass(frozen=True)
class FarkasCertificate:
    equalities: tuple[Fraction, ...]
    inequalities: tuple[Fraction, ...]
    bounds: tuple[Fraction, ...] = ()


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    point: tuple[Fraction, ...] | None = None
    certificate: FarkasCertificate | None = None
    pivots: int = field(default=0, compare=False)


def verify_certificate(system: LinearSystem, certificate: FarkasCertificate) -> bool:
    """Re-check a Farkas certificate by plain arithmetic."""
    n = system.variable_count
    n_bounds = n if system.nonnegative_variables else 0
    if (
        len(certificate.equalities) != len(system.equalities)
        or len(certificate.inequalities) != len(system.inequalities_ge)
        or len(certificate.bounds) not in (0, n_bounds)
    ):
        raise ValueError("certificate shape does not match the system")
    if any(u < 0 for u in certificate.inequalities) or any(u < 0 for u in certificate.bounds):
        return False
    combined = [Fraction(0)] * n
    rhs = Fraction(0)
    rows = zip(
        list(certificate.equalities) + list(certificate.inequalities),
        system.equalities + system.inequalities_ge,
    )
    for u, (coeffs, b) in rows:
        if u:
            for j, a in enumerate(coeffs):
                combined[j] += u * a
            rhs += u * b
    for j, mu in enumerate(certificate.bounds):
        combined[j] += mu
    return all(c == 0 for c in combined) and rhs > 0


def solve_feasibility(system: LinearSystem) -> FeasibilityResult:
    """Decide feasibility of ``system`` exactly.

    Phase one of the simplex method with Bland's rule.  Inequality rows with a
    positive right-hand side get an artificial variable that is the negative of
    their surplus column, so it is never stored; once it leaves the basis it
    cannot return.  Equality rows keep explicit artificial columns because their
    reduced costs give the certificate multipliers.
    """
    n = system.variable_count
    free = not system.nonnegative_variables
    n_struct = 2 * n if free else n
    eqs, ineqs = system.equalities, system.inequalities_ge
    n_eq, n_in = len(eqs), len(ineqs)
    slack0 = n_struct
    art0 = n_struct + n_in
    width = art0 + n_eq  # last tableau entry is the rhs

    rows: list[list[Fraction]] = []
    basis: list[int] = []
    sign: list[int] = []
    zero = Fraction(0)

    def structural(coeffs: Sequence[Fraction]) -> list[Fraction]:
        return list(coeffs) + [-a for a in coeffs] if free else list(coeffs)

    for i, (coeffs, b) in enumerate(eqs):
        s = -1 if b < 0 else 1
        row = [zero] * (width + 1)
        row[:n_struct] = [s * a for a in structural(coeffs)]
        row[art0 + i] = Fraction(1)
        row[width] = s * b
        rows.append(row)
        basis.append(art0 + i)
        sign.append(s)
    virtual = width  # indices >= width denote stored-implicitly artificials
    for i, (coeffs, b) in enumerate(ineqs):
        row = [zero] * (width + 1)
        if b > 0:
            row[:n_struct] = structural(coeffs)
            row[slack0 + i] = Fraction(-1)
            row[width] = b
            basis.append(virtual + i)
            sign.append(1)
        else:
            row[:n_struct] = [-a for a in structural(coeffs)]
            row[slack0 + i] = Fraction(1)
            row[width] = -b
            basis.append(slack0 + i)
            sign.append(-1)
        rows.append(row)

    # reduced costs of the phase-one objective (sum of artificials)
    cost = [zero] * (width + 1)
    for j in range(art0, width):
        cost[j] = Fraction(1)
    for row, bv in zip(rows, basis):
        if bv >= art0:
            for j, v in enumerate(row):
                if v:
                    cost[j] -= v
    for j in range(art0, width):
        if any(bv == j for bv in basis):
            cost[j] = zero

    pivots = 0
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:  # cannot happen: phase one is bounded below by zero
            raise ArithmeticError("unbounded phase-one problem")
        _pivot(rows, cost, leave, enter)
        basis[leave] = enter
        pivots += 1

    objective = -cost[width]
    if objective == 0:
        point = [zero] * n_struct
        for row, bv in zip(rows, basis):
            if bv < n_struct:
                point[bv] = row[width]
        if free:
            point = [point[j] - point[n + j] for j in range(n)]
        return FeasibilityResult(True, point=tuple(point), pivots=pivots)

    # phase-one duals y, mapped back to the original row orientation
    u_eq = tuple(sign[i] * (1 - cost[art0 + i]) for i in range(n_eq))
    u_in = []
    for i in range(n_in):
        r = cost[slack0 + i]
        y = r if sign[n_eq + i] == 1 else -r
        u_in.append(sign[n_eq + i] * y)
    bounds: tuple[Fraction, ...] = ()
    if not free:
        combined = [zero] * n
        for u, (coeffs, _) in zip(list(u_eq) + u_in, eqs + ineqs):
            if u:
                for j, a in enumerate(coeffs):
                    combined[j] += u * a
        bounds = tuple(-c for c in combined)
    cert = FarkasCertificate(u_eq, tuple(u_in), bounds)
    return FeasibilityResult(False, certificate=cert, pivots=pivots)


def _pivot(rows: list[list[Fraction]], cost: list[Fraction], r: int, c: int) -> None:
    prow = rows[r]
    piv = prow[c]
    if piv != 1:
        prow[:] = [v / piv if v else v for v in prow]
    nz = [j for j, v in enumerate(prow) if v]
    for i, row in enumerate(rows):
        if i != r:
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
    f = cost[c]
    if f:
        for j in nz:
            cost[j] -= f * prow[j]
