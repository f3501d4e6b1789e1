"""Blocking coalitions, core verdicts and core non-emptiness.

Coalitions are searched in (size, lexicographic) order and the first blocking
one is reported.  Two shortcuts keep this tractable without changing the
answer:

* TU: voters sharing both ballot and utility are interchangeable, so only
  coalitions taking the lowest-index members of each such class are tried.
  Any blocking coalition maps to one of these with the same size, sum and
  value, and the replacement is never lexicographically larger.
* NTU: the search runs over committees.  For a committee ``W`` the smallest
  coalitions it can serve have size ``ceil(|W| n / k)`` and the lex-first of
  those is a prefix of the voters that strictly prefer ``W``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil, lcm
from typing import Iterable, Sequence

import numpy as np

from . import guard
from .model import Coalition, Committee, Instance, ProfileError, Rule, UtilityVector, utility_vector
from .scoring import (
    ballot_score,
    best_committee,
    cap_for_size,
    coalition_value,
    grand_value,
    induced_vector,
    weigh,
)
from .simplex import FarkasCertificate, LinearSystem, solve_feasibility, verify_certificate


class Model(str, enum.Enum):
    TU = "tu"
    NTU = "ntu"

    @classmethod
    def parse(cls, value: "str | Model") -> "Model":
        if isinstance(value, Model):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ProfileError(f"unknown model {value!r}") from None


class Status(str, enum.Enum):
    MEMBER = "member"
    BLOCKED = "blocked"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class BlockingWitness:
    coalition: Coalition
    committee: Committee
    model: Model
    achieved: Fraction | tuple[Fraction, ...]


@dataclass(frozen=True)
class CoreVerdict:
    status: Status
    witness: BlockingWitness | None = None
    reason: str | None = None
    grand_value: Fraction | None = None
    feasibility_witness: Committee | None = None

    @property
    def is_member(self) -> bool:
        return self.status is Status.MEMBER


@dataclass(frozen=True)
class TuCoreResult:
    nonempty: bool
    alpha: UtilityVector | None
    certificate: FarkasCertificate | None
    system: LinearSystem


def _prepare(instance: Instance, rule, alpha) -> tuple[Rule, UtilityVector]:
    return Rule.parse(rule), utility_vector(alpha, instance.n)


# -- TU ----------------------------------------------------------------------


def tu_blocks(instance: Instance, rule, alpha, coalition: Iterable[int], override_guard: bool = False):
    """Witness if ``coalition`` TU-blocks ``alpha``, else None."""
    rule, alpha = _prepare(instance, rule, alpha)
    coalition = tuple(sorted(coalition))
    if cap_for_size(instance, len(coalition)) < 1:
        return None
    value, committee = coalition_value(instance, rule, coalition, override_guard)
    if value > sum((alpha[v] for v in coalition), Fraction(0)):
        return BlockingWitness(coalition, committee, Model.TU, value)
    return None


def find_tu_blocking(instance: Instance, rule, alpha, override_guard: bool = False) -> BlockingWitness | None:
    """Lexicographically first TU-blocking coalition (by size, then members)."""
    rule, alpha = _prepare(instance, rule, alpha)
    guard.check_voters(instance.n, override_guard)
    classes: dict[tuple[frozenset, Fraction], list[int]] = {}
    for v in range(instance.n):
        classes.setdefault((instance.approvals[v], alpha[v]), []).append(v)
    keys = list(classes)
    members = [classes[key] for key in keys]
    vectors_by_size: dict[int, list[tuple[int, ...]]] = {}
    for counts in product(*(range(len(ms) + 1) for ms in members)):
        vectors_by_size.setdefault(sum(counts), []).append(counts)

    if rule.totally_separable:
        return _separable_tu_blocking(instance, rule, keys, members, vectors_by_size)

    memo: dict[tuple, tuple[Fraction, Committee]] = {}
    for size in sorted(vectors_by_size):
        cap = cap_for_size(instance, size)
        if size == 0 or cap < 1:
            continue
        hits = []
        for counts in vectors_by_size[size]:
            weights: dict[frozenset, int] = {}
            total = Fraction(0)
            for (ballot, a), c in zip(keys, counts):
                if c:
                    weights[ballot] = weights.get(ballot, 0) + c
                    total += c * a
            key = (cap, frozenset(weights.items()))
            if key not in memo:
                memo[key] = best_committee(rule, instance.m, list(weights.items()), cap, override_guard)
            value, committee = memo[key]
            if value > total:
                coalition = tuple(sorted(v for ms, c in zip(members, counts) for v in ms[:c]))
                hits.append((coalition, committee, value))
        if hits:
            coalition, committee, value = min(hits)
            return BlockingWitness(coalition, committee, Model.TU, value)
    return None


def _separable_tu_blocking(instance, rule, keys, members, vectors_by_size) -> BlockingWitness | None:
    """Batch version for AV/SAV: a coalition's worth is the sum of its ``cap``
    largest alternative scores, and those scores are linear in the class counts.
    Everything is scaled to integers so the comparison stays exact."""
    m = instance.m
    sizes = [len(b) for b, _ in keys]
    d_score = 1 if rule is Rule.AV else lcm(1, *(s for s in sizes if s))
    d_alpha = lcm(1, *(a.denominator for _, a in keys))
    units = [[(d_score // len(b) if rule is Rule.SAV else 1) if c in b else 0 for c in range(m)] for b, _ in keys]
    alphas = [int(a * d_alpha) for _, a in keys]
    bound = instance.n * max([1, d_score] + [max(u, default=0) for u in units]) * max(instance.k, 1)
    bound = bound * d_alpha + instance.n * max([0] + alphas) * d_score
    dtype = np.int64 if bound < 2**62 else object
    unit_mat = np.array(units, dtype=dtype).reshape(len(keys), m)
    alpha_vec = np.array(alphas, dtype=dtype)

    for size in sorted(vectors_by_size):
        cap = min(cap_for_size(instance, size), m)
        if size == 0 or cap < 1:
            continue
        counts = np.array(vectors_by_size[size], dtype=dtype).reshape(-1, len(keys))
        scores = counts.dot(unit_mat)
        top = -np.sort(-scores, axis=1)[:, :cap]
        worth = top.sum(axis=1) * d_alpha
        owed = counts.dot(alpha_vec) * d_score
        rows = np.nonzero(worth > owed)[0]
        if len(rows):
            coalition = min(
                tuple(sorted(v for ms, c in zip(members, vectors_by_size[size][r]) for v in ms[:c])) for r in rows
            )
            value, committee = coalition_value(instance, rule, coalition, override_guard=True)
            return BlockingWitness(coalition, committee, Model.TU, value)
    return None


def tu_core_membership(instance: Instance, rule, alpha, override_guard: bool = False) -> CoreVerdict:
    rule, alpha = _prepare(instance, rule, alpha)
    guard.check_voters(instance.n, override_guard)
    chi = grand_value(instance, rule, override_guard)
    total = sum(alpha, Fraction(0))
    if total != chi:
        return CoreVerdict(Status.INFEASIBLE, reason=f"sum of utilities {total} differs from grand value {chi}",
                           grand_value=chi)
    witness = find_tu_blocking(instance, rule, alpha, override_guard)
    if witness is not None:
        return CoreVerdict(Status.BLOCKED, witness=witness, grand_value=chi)
    return CoreVerdict(Status.MEMBER, grand_value=chi)


# -- NTU ---------------------------------------------------------------------


def _improving(instance: Instance, rule: Rule, alpha: Sequence[Fraction], committee: Committee) -> list[int]:
    return [v for v, b in enumerate(instance.approvals) if ballot_score(rule, b, committee) > alpha[v]]


def ntu_blocks(instance: Instance, rule, alpha, coalition: Iterable[int], override_guard: bool = False):
    """Witness if ``coalition`` NTU-blocks ``alpha``, else None.

    Scans committees of size ``min(cap, m)`` in lex order; monotone scores make
    smaller committees redundant.
    """
    rule, alpha = _prepare(instance, rule, alpha)
    coalition = tuple(sorted(coalition))
    cap = min(cap_for_size(instance, len(coalition)), instance.m)
    if cap < 1 or not coalition:
        return None
    guard.check_committees(instance.m, cap, override_guard)
    for committee in combinations(range(instance.m), cap):
        scores = tuple(ballot_score(rule, instance.approvals[v], committee) for v in coalition)
        if all(s > alpha[v] for s, v in zip(scores, coalition)):
            return BlockingWitness(coalition, committee, Model.NTU, scores)
    return None


def find_ntu_blocking(instance: Instance, rule, alpha, override_guard: bool = False) -> BlockingWitness | None:
    """Lexicographically first NTU-blocking coalition (by size, then members)."""
    rule, alpha = _prepare(instance, rule, alpha)
    n, k, m = instance.n, instance.k, instance.m
    best: tuple[int, Coalition] | None = None
    for t in range(1, min(k, m) + 1):
        need = ceil(t * n / k)
        if need > n or (best is not None and need > best[0]):
            break
        guard.check_committees(m, t, override_guard)
        for committee in combinations(range(m), t):
            improving = _improving(instance, rule, alpha, committee)
            if len(improving) >= need:
                cand = (need, tuple(improving[:need]))
                if best is None or cand < best:
                    best = cand
    if best is None:
        return None
    witness = ntu_blocks(instance, rule, alpha, best[1], override_guard)
    assert witness is not None
    return witness


def ntu_feasibility_witness(instance: Instance, rule, alpha, override_guard: bool = False) -> Committee | None:
    """First committee of size at most k, by (size, lex), inducing exactly ``alpha``."""
    rule, alpha = _prepare(instance, rule, alpha)
    for size in range(0, instance.k + 1):
        guard.check_committees(instance.m, size, override_guard)
        for committee in combinations(range(instance.m), size):
            if induced_vector(instance, rule, committee) == alpha:
                return committee
    return None


def ntu_core_membership(instance: Instance, rule, alpha, override_guard: bool = False) -> CoreVerdict:
    rule, alpha = _prepare(instance, rule, alpha)
    feasible = ntu_feasibility_witness(instance, rule, alpha, override_guard)
    if feasible is None:
        return CoreVerdict(Status.INFEASIBLE, reason="no committee of size at most k induces the vector")
    witness = find_ntu_blocking(instance, rule, alpha, override_guard)
    if witness is not None:
        return CoreVerdict(Status.BLOCKED, witness=witness, feasibility_witness=feasible)
    return CoreVerdict(Status.MEMBER, feasibility_witness=feasible)


def enumerate_ntu_core(instance: Instance, rule, override_guard: bool = False) -> list[tuple[Committee, UtilityVector]]:
    """Committees whose induced vectors lie in the NTU core.

    All size-k committees are listed.  For CC, smaller committees are scanned
    too and kept only when they contribute a core vector not already listed.
    """
    rule = Rule.parse(rule)
    k, m = instance.k, instance.m
    guard.check_committees(m, k, override_guard)
    out: list[tuple[Committee, UtilityVector]] = []
    seen: set[UtilityVector] = set()
    for committee in combinations(range(m), k):
        vec = induced_vector(instance, rule, committee)
        if find_ntu_blocking(instance, rule, vec, override_guard) is None:
            out.append((committee, vec))
            seen.add(vec)
    if rule is Rule.CC:
        for size in range(0, k):
            guard.check_committees(m, size, override_guard)
            for committee in combinations(range(m), size):
                vec = induced_vector(instance, rule, committee)
                if vec not in seen and find_ntu_blocking(instance, rule, vec, override_guard) is None:
                    out.append((committee, vec))
                    seen.add(vec)
        out.sort(key=lambda item: (len(item[0]), item[0]))
    return out


# -- TU core non-emptiness -------------------------------------------------


def tu_core_system(instance: Instance, rule, override_guard: bool = False) -> tuple[LinearSystem, list[Coalition]]:
    """The core constraints: efficiency, one row per nonempty coalition, alpha >= 0."""
    rule = Rule.parse(rule)
    n = instance.n
    guard.check_voters(n, override_guard)
    chi = grand_value(instance, rule, override_guard)
    memo: dict[tuple, Fraction] = {}
    rows, coalitions = [], []
    for mask in range(1, 1 << n):
        coalition = tuple(v for v in range(n) if mask >> v & 1)
        cap = cap_for_size(instance, len(coalition))
        ballots = weigh(instance.profile, coalition)
        key = (cap, frozenset(ballots))
        if key not in memo:
            memo[key] = best_committee(rule, instance.m, ballots, cap, override_guard)[0]
        rows.append(([1 if mask >> v & 1 else 0 for v in range(n)], memo[key]))
        coalitions.append(coalition)
    system = LinearSystem(n, equalities=(([1] * n, chi),), inequalities_ge=tuple(rows))
    return system, coalitions


def tu_core_nonempty(instance: Instance, rule, override_guard: bool = False) -> TuCoreResult:
    """Decide whether the TU core is nonempty by exact linear feasibility.

    Rows with a zero right-hand side follow from ``alpha >= 0`` and are left
    out of the solve; the certificate is lifted back to the full system with
    zero multipliers on them and re-verified.
    """
    system, _ = tu_core_system(instance, rule, override_guard)
    keep = [i for i, (_, b) in enumerate(system.inequalities_ge) if b > 0]
    reduced = LinearSystem(
        system.variable_count,
        equalities=system.equalities,
        inequalities_ge=tuple(system.inequalities_ge[i] for i in keep),
    )
    result = solve_feasibility(reduced)
    if result.feasible:
        alpha = result.point
        assert system.satisfied_by(alpha)
        return TuCoreResult(True, alpha, None, system)
    cert = result.certificate
    lifted = [Fraction(0)] * len(system.inequalities_ge)
    for i, u in zip(keep, cert.inequalities):
        lifted[i] = u
    full = FarkasCertificate(cert.equalities, tuple(lifted), cert.bounds)
    if not verify_certificate(system, full):
        raise ArithmeticError("solver produced an invalid infeasibility certificate")
    return TuCoreResult(False, None, full, system)
