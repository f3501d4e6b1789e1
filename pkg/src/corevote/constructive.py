"""Constructive core elements, justified representation and rule-to-rule utility maps."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Callable, Iterable

from .model import ApprovalProfile, Coalition, Committee, Instance, ProfileError, Rule, UtilityVector, utility_vector
from .scoring import ballot_score, harmonic


@dataclass(frozen=True)
class JrViolation:
    cohesive_group: Coalition
    common_alternative: int


def _separable_split(
    instance: Instance, pair_score: Callable[[int, int], Fraction]
) -> UtilityVector:
    # rule-generic form: pair_score(v, c) is the voter's score for the singleton {c}
    m, n, k = instance.m, instance.n, instance.k
    totals = [sum((pair_score(v, c) for v in range(n)), Fraction(0)) for c in range(m)]
    order = sorted(range(m), key=lambda c: (-totals[c], c))
    s_k = totals[order[k - 1]]
    alpha = [k * s_k / n] * n
    for c in order[: k - 1]:
        s_j = totals[c]
        if s_j == 0:
            continue
        share = (s_j - s_k) / s_j
        for v in range(n):
            p = pair_score(v, c)
            if p:
                alpha[v] += share * p
    return tuple(alpha)


def algorithm1_totsep(instance: Instance, rule) -> UtilityVector:
    """TU-core element for a totally separable rule (AV or SAV).

    Every voter gets an equal share of k times the k-th best alternative's
    score; each better alternative's excess over that score goes back to its
    own supporters in proportion to their scores.
    """
    rule = Rule.parse(rule)
    if not rule.totally_separable:
        raise ProfileError(f"rule {rule.value} is not totally separable")
    approvals = instance.approvals
    return _separable_split(instance, lambda v, c: ballot_score(rule, approvals[v], (c,)))


def algorithm2_greedy_cc(instance: Instance, tie_break: str = "lowest") -> tuple[UtilityVector, Committee]:
    """Greedy cover: repeatedly add the alternative covering most uncovered voters.

    ``tie_break`` picks the lowest (default) or highest index among equally good
    alternatives.  Unused seats are filled with the lowest-index leftovers.
    """
    if tie_break not in ("lowest", "highest"):
        raise ValueError("tie_break must be 'lowest' or 'highest'")
    m, k = instance.m, instance.k
    uncovered = set(range(instance.n))
    chosen: list[int] = []
    sign = 1 if tie_break == "lowest" else -1
    while uncovered and len(chosen) < k:
        rest = [c for c in range(m) if c not in chosen]
        gain = {c: len(uncovered.intersection(instance.profile.approvers(c))) for c in rest}
        pick = min(rest, key=lambda c: (-gain[c], sign * c))
        chosen.append(pick)
        uncovered -= set(instance.profile.approvers(pick))
    for c in range(m):
        if len(chosen) >= k:
            break
        if c not in chosen:
            chosen.append(c)
    committee = tuple(sorted(chosen))
    alpha = tuple(Fraction(0 if v in uncovered else 1) for v in range(instance.n))
    return alpha, committee


def jr_check(instance: Instance, committee: Iterable[int]) -> JrViolation | None:
    """None if ``committee`` satisfies justified representation, else a violation."""
    committee = tuple(sorted(set(committee)))
    if len(committee) != instance.k:
        raise ProfileError(f"committee has {len(committee)} members, expected k={instance.k}")
    if any(not 0 <= c < instance.m for c in committee):
        raise ProfileError("alternative index out of range")
    quota = ceil(instance.n / instance.k)
    members = set(committee)
    uncovered = [v for v, b in enumerate(instance.approvals) if not b & members]
    for c in range(instance.m):
        group = [v for v in uncovered if c in instance.approvals[v]]
        if len(group) >= quota:
            return JrViolation(tuple(group[:quota]), c)
    return None


# -- utility maps between AV and PAV/SAV ----------------------------------


def _as_int(q: Fraction, what: str) -> int:
    if Fraction(q).denominator != 1:
        raise ProfileError(f"{what} value {q} is not integral")
    return int(q)


def map_av_to_pav(alpha, k: int) -> UtilityVector:
    out = []
    for a in utility_vector(alpha):
        z = _as_int(a, "AV")
        if z > k:
            raise ProfileError(f"AV value {z} exceeds k={k}")
        out.append(harmonic(z))
    return tuple(out)


def map_pav_to_av(beta, k: int) -> UtilityVector:
    table = {harmonic(z): z for z in range(k + 1)}
    out = []
    for b in utility_vector(beta):
        if b not in table:
            raise ProfileError(f"{b} is not a harmonic number H(z) with z <= {k}")
        out.append(Fraction(table[b]))
    return tuple(out)


def map_av_to_sav(alpha, profile: ApprovalProfile) -> UtilityVector:
    alpha = utility_vector(alpha, profile.n)
    out = []
    for a, ballot in zip(alpha, profile.approvals):
        z = _as_int(a, "AV")
        if z > len(ballot):
            raise ProfileError(f"AV value {z} exceeds ballot size {len(ballot)}")
        out.append(Fraction(z, len(ballot)) if ballot else Fraction(0))
    return tuple(out)


def map_sav_to_av(beta, profile: ApprovalProfile) -> UtilityVector:
    beta = utility_vector(beta, profile.n)
    out = []
    for b, ballot in zip(beta, profile.approvals):
        z = b * len(ballot)
        if z.denominator != 1 or z > len(ballot) or (not ballot and b != 0):
            raise ProfileError(f"SAV value {b} is not reachable for a ballot of size {len(ballot)}")
        out.append(z)
    return tuple(out)

