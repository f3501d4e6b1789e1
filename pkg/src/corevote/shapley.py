"""Exact Shapley values of the coalition-value game."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb, factorial

from . import guard
from .model import Instance, Rule, UtilityVector
from .scoring import best_committee, cap_for_size


def shapley_value(instance: Instance, rule, override_guard: bool = False) -> UtilityVector:
    """Shapley value of every voter.

    Coalition worth depends only on how many voters of each ballot it holds, so
    the sum over subsets runs over count vectors, each weighted by the number of
    subsets it stands for.  Worths are cached per count vector.
    """
    rule = Rule.parse(rule)
    n, m = instance.n, instance.m
    guard.check_voters(n, override_guard)
    ballots: list[frozenset] = []
    for b in instance.approvals:
        if b not in ballots:
            ballots.append(b)
    sizes = [sum(1 for b in instance.approvals if b == ballot) for ballot in ballots]
    cache: dict[tuple[int, ...], Fraction] = {}

    def worth(counts: tuple[int, ...]) -> Fraction:
        if counts not in cache:
            weighted = [(b, c) for b, c in zip(ballots, counts) if c]
            cap = cap_for_size(instance, sum(counts))
            cache[counts] = best_committee(rule, m, weighted, cap, override_guard)[0]
        return cache[counts]

    n_fact = factorial(n)
    per_class = []
    for i, own in enumerate(ballots):
        limits = [s - 1 if j == i else s for j, s in enumerate(sizes)]
        total = Fraction(0)
        for counts in product(*(range(x + 1) for x in limits)):
            s = sum(counts)
            subsets = 1
            for x, c in zip(limits, counts):
                subsets *= comb(x, c)
            grown = counts[:i] + (counts[i] + 1,) + counts[i + 1 :]
            gain = worth(grown) - worth(counts)
            if gain:
                total += Fraction(subsets * factorial(s) * factorial(n - s - 1), n_fact) * gain
        per_class.append(total)
    return tuple(per_class[ballots.index(b)] for b in instance.approvals)
