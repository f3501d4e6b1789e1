"""Instance generators from hardness constructions, with brute-force source deciders.

Source problems use 0-based element/vertex indices.  JSON encodings:

* RX3C: ``{"universe_size": 6, "triples": [[0,1,2], ...]}``
* Biclique: ``{"vertices": 4, "edges": [[0,1], ...], "h": 1}``
* Set Cover: ``{"universe_size": 3, "sets": [[0,1], [2]], "h": 2}``
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .model import ApprovalProfile, Instance, ProfileError, UtilityVector


@dataclass(frozen=True)
class Rx3cInstance:
    universe_size: int
    triples: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "triples", tuple(frozenset(t) for t in self.triples))
        u = self.universe_size
        if u <= 0 or u % 3:
            raise ProfileError("universe size must be a positive multiple of 3")
        if len(self.triples) != u:
            raise ProfileError(f"expected {u} triples, got {len(self.triples)}")
        freq = [0] * u
        for t in self.triples:
            if len(t) != 3 or any(not 0 <= x < u for x in t):
                raise ProfileError(f"bad triple {sorted(t)}")
            for x in t:
                freq[x] += 1
        if any(f != 3 for f in freq):
            raise ProfileError("every element must occur in exactly three triples")

    @property
    def n_hat(self) -> int:
        return self.universe_size // 3


@dataclass(frozen=True)
class BicliqueInstance:
    vertices: int
    edges: frozenset[frozenset[int]]
    h: int

    def __post_init__(self) -> None:
        edges = frozenset(frozenset(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.h < 1:
            raise ProfileError("h must be positive")
        if self.vertices < max(2 * self.h, 2):
            raise ProfileError("need at least max(2h, 2) vertices")
        for e in edges:
            if len(e) != 2:
                raise ProfileError("self-loops are not allowed")
            if any(not 0 <= x < self.vertices for x in e):
                raise ProfileError("edge endpoint out of range")

    def adjacent(self, a: int, b: int) -> bool:
        return frozenset((a, b)) in self.edges


@dataclass(frozen=True)
class SetCoverInstance:
    universe_size: int
    sets: tuple[frozenset[int], ...]
    h: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        if self.universe_size < 1 or not self.sets:
            raise ProfileError("need a nonempty universe and at least one set")
        for s in self.sets:
            if not s or any(not 0 <= x < self.universe_size for x in s):
                raise ProfileError("sets must be nonempty subsets of the universe")
        if not 1 <= self.h <= len(self.sets):
            raise ProfileError("h must lie between 1 and the number of sets")


# -- JSON ----------------------------------------------------------------


def _load(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProfileError(f"malformed JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ProfileError("source instance must be a JSON object")
    return data


def _field(data: dict, name: str):
    try:
        return data[name]
    except KeyError:
        raise ProfileError(f"missing field {name!r}") from None


def parse_rx3c_json(text: str) -> Rx3cInstance:
    data = _load(text)
    return Rx3cInstance(_field(data, "universe_size"), tuple(_field(data, "triples")))


def parse_biclique_json(text: str) -> BicliqueInstance:
    data = _load(text)
    return BicliqueInstance(_field(data, "vertices"), frozenset(frozenset(e) for e in _field(data, "edges")),
                            _field(data, "h"))


def parse_setcover_json(text: str) -> SetCoverInstance:
    data = _load(text)
    return SetCoverInstance(_field(data, "universe_size"), tuple(_field(data, "sets")), _field(data, "h"))


def source_to_json(src: Rx3cInstance | BicliqueInstance | SetCoverInstance) -> str:
    if isinstance(src, Rx3cInstance):
        return json.dumps({"universe_size": src.universe_size, "triples": [sorted(t) for t in src.triples]})
    if isinstance(src, BicliqueInstance):
        edges = sorted(sorted(e) for e in src.edges)
        return json.dumps({"vertices": src.vertices, "edges": edges, "h": src.h})
    return json.dumps({"universe_size": src.universe_size, "sets": [sorted(s) for s in src.sets], "h": src.h})


# -- generators ------------------------------------------------------------


def _membership_profile(universe: int, sets: Iterable[frozenset[int]], prefix: str) -> ApprovalProfile:
    sets = list(sets)
    approvals = [frozenset(j for j, s in enumerate(sets) if x in s) for x in range(universe)]
    return ApprovalProfile.from_sets(
        len(sets), approvals,
        alternatives=[f"{prefix}{j + 1}" for j in range(len(sets))],
        voters=[f"e{x + 1}" for x in range(universe)],
    )


def gen_rx3c_core_nonempty(src: Rx3cInstance) -> Instance:
    """Alternative per triple, voter per element, ``k`` = number of cover triples."""
    return Instance(_membership_profile(src.universe_size, src.triples, "S"), src.n_hat)


def gen_rx3c_pav_membership(src: Rx3cInstance) -> tuple[Instance, UtilityVector]:
    inst = gen_rx3c_core_nonempty(src)
    return inst, (Fraction(1),) * inst.n


def gen_setcover_cc_membership(src: SetCoverInstance) -> tuple[Instance, UtilityVector]:
    inst = Instance(_membership_profile(src.universe_size, src.sets, "S"), src.h)
    return inst, (Fraction(1),) * inst.n


@dataclass(frozen=True)
class BicliqueLayout:
    """Index ranges of the voter groups inside a generated instance."""

    vertex_voters: range
    full_voters: range
    empty_voters: range
    vertex_alternatives: range
    dummy_alternatives: range
    big_l: int
    epsilon: Fraction


def biclique_layout(src: BicliqueInstance) -> BicliqueLayout:
    nh, h = src.vertices, src.h
    big_l = nh * nh + 1
    k = big_l + h
    d1 = big_l * nh * nh - (nh - h)
    d2 = h * nh * nh - h
    return BicliqueLayout(
        vertex_voters=range(0, nh),
        full_voters=range(nh, nh + d1),
        empty_voters=range(nh + d1, nh + d1 + d2),
        vertex_alternatives=range(0, nh),
        dummy_alternatives=range(nh, nh + k),
        big_l=big_l,
        epsilon=Fraction(nh * h - 1, d1),
    )


def gen_biclique_av_membership(src: BicliqueInstance) -> tuple[Instance, UtilityVector]:
    """AV instance whose utility vector is core-stable iff the graph has no h-biclique.

    Vertex voters approve the alternatives of their neighbours, full voters
    approve every dummy, empty voters approve nothing.
    """
    nh, h = src.vertices, src.h
    lay = biclique_layout(src)
    dummies = frozenset(lay.dummy_alternatives)
    approvals = [frozenset(j for j in range(nh) if src.adjacent(i, j)) for i in range(nh)]
    approvals += [dummies] * len(lay.full_voters)
    approvals += [frozenset()] * len(lay.empty_voters)
    alternatives = [f"u{i + 1}" for i in range(nh)] + [f"d{i + 1}" for i in range(len(dummies))]
    voters = (
        [f"v{i + 1}" for i in range(nh)]
        + [f"o{i + 1}" for i in range(len(lay.full_voters))]
        + [f"b{i + 1}" for i in range(len(lay.empty_voters))]
    )
    profile = ApprovalProfile.from_sets(len(alternatives), approvals, alternatives, voters)
    inst = Instance(profile, lay.big_l + h)
    alpha = (
        [Fraction(h) - Fraction(1, nh)] * nh
        + [lay.big_l + h - lay.epsilon] * len(lay.full_voters)
        + [Fraction(0)] * len(lay.empty_voters)
    )
    return inst, tuple(alpha)


# -- brute-force deciders --------------------------------------------------


def has_exact_cover(src: Rx3cInstance) -> bool:
    universe = frozenset(range(src.universe_size))
    for pick in combinations(src.triples, src.n_hat):
        if frozenset().union(*pick) == universe:
            return True
    return False


def has_biclique(src: BicliqueInstance) -> bool:
    vs = range(src.vertices)
    for left in combinations(vs, src.h):
        common = [w for w in vs if w not in left and all(src.adjacent(u, w) for u in left)]
        if len(common) >= src.h:
            return True
    return False


def has_set_cover(src: SetCoverInstance) -> bool:
    universe = frozenset(range(src.universe_size))
    return any(frozenset().union(*pick) == universe for pick in combinations(src.sets, src.h))


# -- random sources --------------------------------------------------------


def random_rx3c(n_hat: int, rng: random.Random, planted_cover: bool | None = None) -> Rx3cInstance:
    """Random RX3C instance; optionally plant an exact cover among the triples."""
    u = 3 * n_hat
    while True:
        triples: list[frozenset[int]] = []
        pool = [x for x in range(u) for _ in range(3)]
        if planted_cover:
            perm = list(range(u))
            rng.shuffle(perm)
            triples = [frozenset(perm[3 * i: 3 * i + 3]) for i in range(n_hat)]
            pool = [x for x in range(u) for _ in range(2)]
        rng.shuffle(pool)
        extra = [frozenset(pool[3 * i: 3 * i + 3]) for i in range(len(pool) // 3)]
        if all(len(t) == 3 for t in extra):
            src = Rx3cInstance(u, tuple(triples + extra))
            if planted_cover is False and has_exact_cover(src):
                continue
            return src


def random_biclique(vertices: int, h: int, rng: random.Random, density: float = 0.5) -> BicliqueInstance:
    edges = frozenset(
        frozenset((a, b)) for a, b in combinations(range(vertices), 2) if rng.random() < density
    )
    return BicliqueInstance(vertices, edges, h)


def random_setcover(universe: int, n_sets: int, h: int, rng: random.Random) -> SetCoverInstance:
    sets = []
    for _ in range(n_sets):
        size = rng.randint(1, universe)
        sets.append(frozenset(rng.sample(range(universe), size)))
    return SetCoverInstance(universe, tuple(sets), h)
