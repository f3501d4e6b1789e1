"""Domain types for approval profiles and their text/JSON encodings.

Every number in the package is a :class:`fractions.Fraction`.  Committees and
coalitions are plain tuples of sorted indices, so Python's tuple ordering is
the lexicographic order used for enumeration and tie-breaking.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Committee = tuple[int, ...]
Coalition = tuple[int, ...]
UtilityVector = tuple[Fraction, ...]


class ProfileError(ValueError):
    """Raised for malformed profiles, utility vectors and source instances."""


class Rule(str, enum.Enum):
    AV = "av"
    SAV = "sav"
    CC = "cc"
    PAV = "pav"

    @classmethod
    def parse(cls, value: "str | Rule") -> "Rule":
        if isinstance(value, Rule):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ProfileError(f"unknown rule {value!r}") from None

    @property
    def totally_separable(self) -> bool:
        return self in (Rule.AV, Rule.SAV)


@dataclass(frozen=True)
class ApprovalProfile:
    alternatives: tuple[str, ...]
    voters: tuple[str, ...]
    approvals: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        object.__setattr__(self, "voters", tuple(self.voters))
        object.__setattr__(self, "approvals", tuple(frozenset(a) for a in self.approvals))
        if len(self.approvals) != len(self.voters):
            raise ProfileError("one approval set per voter required")
        for kind, names in (("alternative", self.alternatives), ("voter", self.voters)):
            if any(not isinstance(s, str) or not s for s in names):
                raise ProfileError(f"{kind} names must be nonempty strings")
            if len(set(names)) != len(names):
                raise ProfileError(f"duplicate {kind} names")
        m = len(self.alternatives)
        for ballot in self.approvals:
            if any(not 0 <= c < m for c in ballot):
                raise ProfileError("approval index out of range")

    @property
    def m(self) -> int:
        return len(self.alternatives)

    @property
    def n(self) -> int:
        return len(self.voters)

    def approvers(self, alternative: int) -> Coalition:
        """Voters approving ``alternative``, in index order."""
        return tuple(i for i, a in enumerate(self.approvals) if alternative in a)

    @classmethod
    def from_sets(
        cls,
        m: int,
        approvals: Iterable[Iterable[int]],
        alternatives: Sequence[str] | None = None,
        voters: Sequence[str] | None = None,
    ) -> "ApprovalProfile":
        """Build a profile from 0-based approval sets with generated names."""
        approvals = tuple(frozenset(a) for a in approvals)
        if alternatives is None:
            alternatives = [f"c{j + 1}" for j in range(m)]
        if voters is None:
            voters = [f"v{i + 1}" for i in range(len(approvals))]
        return cls(tuple(alternatives), tuple(voters), approvals)


@dataclass(frozen=True)
class Instance:
    profile: ApprovalProfile
    k: int

    def __post_init__(self) -> None:
        if isinstance(self.k, bool) or not isinstance(self.k, int):
            raise ProfileError("k must be an integer")
        if not 1 <= self.k <= self.profile.m:
            raise ProfileError(f"k out of range: k={self.k}, m={self.profile.m}")

    @property
    def m(self) -> int:
        return self.profile.m

    @property
    def n(self) -> int:
        return self.profile.n

    @property
    def approvals(self) -> tuple[frozenset[int], ...]:
        return self.profile.approvals

    @classmethod
    def from_sets(cls, m: int, approvals: Iterable[Iterable[int]], k: int) -> "Instance":
        return cls(ApprovalProfile.from_sets(m, approvals), k)


def committee(members: Iterable[int]) -> Committee:
    """Canonical committee/coalition: sorted tuple without duplicates."""
    return tuple(sorted(set(members)))


def _check_indices(members: Sequence[int], bound: int, kind: str) -> None:
    if any(not 0 <= x < bound for x in members):
        raise ProfileError(f"{kind} index out of range")


def check_committee(instance: Instance, members: Iterable[int]) -> Committee:
    members = tuple(members)
    if len(set(members)) != len(members):
        raise ProfileError("duplicate alternative in committee")
    _check_indices(members, instance.m, "alternative")
    return tuple(sorted(members))


def check_coalition(instance: Instance, members: Iterable[int]) -> Coalition:
    members = tuple(members)
    if len(set(members)) != len(members):
        raise ProfileError("duplicate voter in coalition")
    _check_indices(members, instance.n, "voter")
    return tuple(sorted(members))


def utility_vector(values: Iterable, n: int | None = None) -> UtilityVector:
    """Validate and convert ``values`` to a tuple of nonnegative fractions."""
    out = []
    for v in values:
        if isinstance(v, float):
            raise ProfileError("floating point utilities are not accepted")
        q = parse_fraction(v) if isinstance(v, str) else Fraction(v)
        if q < 0:
            raise ProfileError(f"negative utility {q}")
        out.append(q)
    if n is not None and len(out) != n:
        raise ProfileError(f"utility vector has length {len(out)}, expected {n}")
    return tuple(out)


# -- fractions -------------------------------------------------------------


def parse_fraction(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` with integer p, q."""
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ProfileError(f"not a fraction: {text!r}") from None
    if q == 0:
        raise ProfileError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def serialize_utility_vector(alpha: Iterable) -> str:
    return json.dumps([format_fraction(q) for q in utility_vector(alpha)])


def parse_utility_vector(text: str, n: int) -> UtilityVector:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProfileError(f"malformed JSON: {exc}") from None
    if not isinstance(data, list) or not all(isinstance(x, (str, int)) for x in data):
        raise ProfileError("utility vector must be a JSON array of fraction strings")
    return utility_vector([str(x) for x in data], n)


# -- profile formats -------------------------------------------------------


def parse_profile_json(text: str) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProfileError(f"malformed JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ProfileError("profile must be a JSON object")
    try:
        alternatives = data["alternatives"]
        voters = data["voters"]
        k = data["k"]
    except KeyError as exc:
        raise ProfileError(f"missing field {exc.args[0]!r}") from None
    if not isinstance(alternatives, list) or not isinstance(voters, list):
        raise ProfileError("'alternatives' and 'voters' must be arrays")
    index = {name: j for j, name in enumerate(alternatives) if isinstance(name, str)}
    names, approvals = [], []
    for entry in voters:
        if not isinstance(entry, dict) or "id" not in entry:
            raise ProfileError("each voter needs an 'id'")
        ballot = entry.get("approves", [])
        if not isinstance(ballot, list):
            raise ProfileError("'approves' must be an array")
        unknown = [c for c in ballot if c not in index]
        if unknown:
            raise ProfileError(f"unknown alternative name {unknown[0]!r}")
        names.append(entry["id"])
        approvals.append(frozenset(index[c] for c in ballot))
    profile = ApprovalProfile(tuple(alternatives), tuple(names), tuple(approvals))
    return Instance(profile, k)


def profile_to_json(instance: Instance) -> str:
    p = instance.profile
    voters = [
        {"id": name, "approves": [p.alternatives[j] for j in sorted(ballot)]}
        for name, ballot in zip(p.voters, p.approvals)
    ]
    return json.dumps({"alternatives": list(p.alternatives), "voters": voters, "k": instance.k})


def parse_profile_text(text: str) -> Instance:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if not lines:
        raise ProfileError("empty profile")
    header = lines[0].split()
    if len(header) != 3:
        raise ProfileError("header must be 'm n k'")
    try:
        m, n, k = (int(t) for t in header)
    except ValueError:
        raise ProfileError(f"non-integer token in header {lines[0]!r}") from None
    if m < 0 or n < 0:
        raise ProfileError("m and n must be nonnegative")
    body = lines[1:]
    if len(body) != n:
        raise ProfileError(f"expected {n} ballot lines, got {len(body)}")
    approvals = []
    for line in body:
        if line == "-":
            approvals.append(frozenset())
            continue
        ballot = set()
        for tok in line.split():
            try:
                j = int(tok)
            except ValueError:
                raise ProfileError(f"non-integer token {tok!r}") from None
            if not 1 <= j <= m:
                raise ProfileError(f"index {j} out of range [1,{m}]")
            ballot.add(j - 1)
        approvals.append(frozenset(ballot))
    return Instance(ApprovalProfile.from_sets(m, approvals), k)


def profile_to_text(instance: Instance) -> str:
    """Text encoding; alternative and voter names are not preserved."""
    rows = [f"{instance.m} {instance.n} {instance.k}"]
    for ballot in instance.approvals:
        rows.append(" ".join(str(j + 1) for j in sorted(ballot)) if ballot else "-")
    return "\n".join(rows) + "\n"


def load_profile(path: str) -> Instance:
    """Read a profile file, choosing the format by content."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return parse_profile_json(text)
    return parse_profile_text(text)
