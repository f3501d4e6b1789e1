"""Rule scores, seat caps and coalition values.

Internally coalitions are often handled as *weighted ballots*: a list of
``(approval set, multiplicity)`` pairs.  Voters with the same ballot are
interchangeable for every score in this module, so coalition values only
depend on that multiset.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

from . import guard
from .model import ApprovalProfile, Coalition, Committee, Instance, Rule

WeightedBallots = Sequence[tuple[frozenset, int]]


@dataclass(frozen=True)
class ScoredCommittee:
    committee: Committee
    score: Fraction


@lru_cache(maxsize=None)
def harmonic(x: int) -> Fraction:
    """``1 + 1/2 + ... + 1/x`` (zero for ``x == 0``)."""
    if x <= 0:
        return Fraction(0)
    return harmonic(x - 1) + Fraction(1, x)


def ballot_score(rule: Rule, ballot: frozenset, committee: Iterable[int]) -> Fraction:
    hits = len(ballot.intersection(committee))
    if rule is Rule.AV:
        return Fraction(hits)
    if rule is Rule.SAV:
        return Fraction(hits, len(ballot)) if ballot else Fraction(0)
    if rule is Rule.CC:
        return Fraction(min(hits, 1))
    if rule is Rule.PAV:
        return harmonic(hits)
    raise ValueError(f"unknown rule {rule!r}")


def voter_score(rule: Rule, profile: ApprovalProfile, voter: int, committee: Iterable[int]) -> Fraction:
    rule = Rule.parse(rule)
    if not 0 <= voter < profile.n:
        raise IndexError(f"voter index {voter} out of range")
    committee = tuple(committee)
    if any(not 0 <= c < profile.m for c in committee):
        raise IndexError("alternative index out of range")
    return ballot_score(rule, profile.approvals[voter], committee)


def coalition_score(
    rule: Rule, profile: ApprovalProfile, coalition: Iterable[int], committee: Iterable[int]
) -> Fraction:
    rule = Rule.parse(rule)
    committee = tuple(committee)
    return sum((voter_score(rule, profile, v, committee) for v in coalition), Fraction(0))


def cap_for_size(instance: Instance, size: int) -> int:
    return size * instance.k // instance.n


def seat_cap(instance: Instance, coalition: Iterable[int]) -> int:
    """Largest admissible committee size, ``floor(|coalition| * k / n)``."""
    return cap_for_size(instance, len(tuple(coalition)))


def weigh(profile: ApprovalProfile, coalition: Iterable[int]) -> list[tuple[frozenset, int]]:
    counts: dict[frozenset, int] = {}
    for v in coalition:
        ballot = profile.approvals[v]
        counts[ballot] = counts.get(ballot, 0) + 1
    return list(counts.items())


def weighted_score(rule: Rule, ballots: WeightedBallots, committee: Iterable[int]) -> Fraction:
    committee = frozenset(committee)
    return sum((w * ballot_score(rule, b, committee) for b, w in ballots), Fraction(0))


def _scaled_scores(rule: Rule, m: int, ballots: WeightedBallots) -> tuple[list[int], int]:
    """Integer alternative scores and their common denominator (AV/SAV)."""
    denom = 1
    if rule is Rule.SAV:
        denom = lcm(1, *(len(b) for b, _ in ballots if b))
    scores = [0] * m
    for ballot, w in ballots:
        if ballot:
            unit = w if rule is Rule.AV else w * (denom // len(ballot))
            for c in ballot:
                scores[c] += unit
    return scores, denom


def _alternative_scores(rule: Rule, m: int, ballots: WeightedBallots) -> list[Fraction]:
    scores, denom = _scaled_scores(rule, m, ballots)
    return [Fraction(s, denom) for s in scores]


def best_committee(
    rule: Rule, m: int, ballots: WeightedBallots, size: int, override_guard: bool = False
) -> tuple[Fraction, Committee]:
    """Maximum score over committees of ``size`` alternatives and the lex-first maximizer.

    AV and SAV are alternative-separable, so the top ``size`` alternatives by
    score are optimal; CC and PAV fall back to enumeration.
    """
    size = min(size, m)
    if size <= 0:
        return Fraction(0), ()
    if rule.totally_separable:
        scores, denom = _scaled_scores(rule, m, ballots)
        order = sorted(range(m), key=lambda c: (-scores[c], c))
        chosen = tuple(sorted(order[:size]))
        return Fraction(sum(scores[c] for c in chosen), denom), chosen
    guard.check_committees(m, size, override_guard)
    best, witness = Fraction(-1), ()
    for cand in combinations(range(m), size):
        s = weighted_score(rule, ballots, cand)
        if s > best:
            best, witness = s, cand
    return best, witness


def coalition_value(
    instance: Instance, rule: Rule, coalition: Iterable[int], override_guard: bool = False
) -> tuple[Fraction, Committee]:
    """Coalition worth under its seat cap, with an attaining committee."""
    rule = Rule.parse(rule)
    coalition = tuple(coalition)
    cap = seat_cap(instance, coalition)
    return best_committee(rule, instance.m, weigh(instance.profile, coalition), cap, override_guard)


def winning_committees(
    instance: Instance, rule: Rule, override_guard: bool = False
) -> tuple[Fraction, list[Committee]]:
    """Grand-coalition optimum over size-k committees and all maximizers, lex ordered."""
    rule = Rule.parse(rule)
    m, k = instance.m, instance.k
    ballots = weigh(instance.profile, range(instance.n))
    if rule.totally_separable:
        scores = _alternative_scores(rule, m, ballots)
        threshold = sorted(scores, reverse=True)[k - 1]
        fixed = [c for c in range(m) if scores[c] > threshold]
        tied = [c for c in range(m) if scores[c] == threshold]
        value = sum((scores[c] for c in fixed), Fraction(0)) + (k - len(fixed)) * threshold
        guard.check_committees(len(tied), k - len(fixed), override_guard)
        found = sorted(tuple(sorted(fixed + list(extra))) for extra in combinations(tied, k - len(fixed)))
        return value, found
    guard.check_committees(m, k, override_guard)
    best, found = Fraction(-1), []
    for cand in combinations(range(m), k):
        s = weighted_score(rule, ballots, cand)
        if s > best:
            best, found = s, [cand]
        elif s == best:
            found.append(cand)
    return best, found


def grand_value(instance: Instance, rule: Rule, override_guard: bool = False) -> Fraction:
    ballots = weigh(instance.profile, range(instance.n))
    return best_committee(Rule.parse(rule), instance.m, ballots, instance.k, override_guard)[0]


def scored_winners(instance: Instance, rule: Rule, override_guard: bool = False) -> list[ScoredCommittee]:
    value, found = winning_committees(instance, rule, override_guard)
    return [ScoredCommittee(c, value) for c in found]


def induced_vector(instance: Instance, rule: Rule, committee: Iterable[int]) -> tuple[Fraction, ...]:
    """Per-voter scores of ``committee``."""
    rule = Rule.parse(rule)
    committee = frozenset(committee)
    return tuple(ballot_score(rule, b, committee) for b in instance.approvals)


def max_voter_scores(instance: Instance, rule: Rule) -> tuple[Fraction, ...]:
    """Each voter's best score over committees of size k."""
    rule = Rule.parse(rule)
    out = []
    for ballot in instance.approvals:
        if rule is Rule.AV:
            out.append(Fraction(min(len(ballot), instance.k)))
        elif rule is Rule.SAV:
            out.append(Fraction(min(len(ballot), instance.k), len(ballot)) if ballot else Fraction(0))
        elif rule is Rule.CC:
            out.append(Fraction(1 if ballot else 0))
        else:
            out.append(harmonic(min(len(ballot), instance.k)))
    return tuple(out)
