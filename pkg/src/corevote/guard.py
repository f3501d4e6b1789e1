"""Enumeration guard shared by every exhaustive search in the package."""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import comb

MAX_VOTERS = 20
MAX_COMMITTEES = 10**7
ENV_VAR = "COREVOTE_GUARD_LIMIT"


class GuardError(RuntimeError):
    """The requested enumeration exceeds the configured desk-scale limits."""


@dataclass(frozen=True)
class GuardLimits:
    max_voters: int = MAX_VOTERS
    max_committees: int = MAX_COMMITTEES


def current_limits() -> GuardLimits:
    """Limits after applying ``COREVOTE_GUARD_LIMIT``.

    The variable holds either ``MAX_COMMITTEES`` or ``MAX_VOTERS:MAX_COMMITTEES``.
    """
    raw = os.environ.get(ENV_VAR, "").strip()
    if not raw:
        return GuardLimits()
    try:
        if ":" in raw:
            voters, committees = raw.split(":", 1)
            return GuardLimits(int(voters), int(committees))
        return GuardLimits(MAX_VOTERS, int(raw))
    except ValueError:
        raise GuardError(f"cannot parse {ENV_VAR}={raw!r}") from None


def check_voters(n: int, override: bool = False) -> None:
    if override:
        return
    limit = current_limits().max_voters
    if n > limit:
        raise GuardError(f"{n} voters exceed the coalition enumeration limit of {limit}")


def check_committees(m: int, size: int, override: bool = False) -> None:
    if override:
        return
    limit = current_limits().max_committees
    count = comb(m, min(size, m))
    if count > limit:
        raise GuardError(f"C({m},{size}) = {count} committees exceed the limit of {limit}")
