"""The cofinal family of finite turnstile-closed ordinal sets.

A finite set A is closed when for every alpha, beta in A with beta <
alpha, all predecessors of beta in alpha's well-order belong to A as
well.  The family of such sets is cofinal: ``cofinal_extend`` embeds any
finite set into a member.  ``enumerate_family`` cuts a deterministic
finite window out of the (infinite) family for the analytics layer.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import DomainError, IterationCeilingError
from .ordinals import (
    ONE,
    ZERO,
    Ordinal,
    enum_prefix,
    ordinal,
    oset,
    parse_ordinal,
    _as_ord,
)
from .rng import Lcg
from .tower import OrdinalSet, Tower


def is_closed(a, tower: Tower) -> bool:
    """Decide membership in the family: every predecessor set stays inside a."""
    a = oset(a)
    members = set(a)
    for alpha in a:
        for beta in a:
            if not beta < alpha:
                continue
            r = tower.rank(alpha, beta)
            for i in range(r):
                if tower.nth(alpha, i) not in members:
                    return False
    return True


def cofinal_extend(a, tower: Tower) -> OrdinalSet:
    """Smallest-recursion closure of a: close(max(a)+1, a) plus the new top."""
    a = oset(a)
    alpha = a[-1].succ() if a else ONE
    out = set(tower.close(alpha, a))
    out.add(alpha)
    return oset(out)


def ladder(length: int, bound, tower: Tower) -> Tuple[List[Ordinal], List[OrdinalSet]]:
    """Points x_i and members s_i with x_i in s_j exactly when i <= j.

    x_0 = 0, s_i = cofinal_extend({x_0..x_i}), and x_{i+1} is the least
    ordinal below bound not yet covered by any earlier s_j.
    """
    bound = _as_ord(bound)
    tower._check_cap(bound)
    if length < 0:
        raise DomainError(f"ladder length must be >= 0, got {length}")
    if length == 0:
        return [], []
    if not ZERO < bound:
        raise DomainError("ladder needs bound > 0")
    points = [ZERO]
    sets = [cofinal_extend(points, tower)]
    used = set(sets[0])
    used.add(ZERO)
    while len(points) < length:
        points.append(_least_unused(used, bound))
        s = cofinal_extend(points, tower)
        sets.append(s)
        used.update(s)
        used.add(points[-1])
    return points, sets


def _least_unused(used, bound: Ordinal) -> Ordinal:
    # used is finite, so below an infinite bound some natural is always free
    k = 0
    while True:
        cand = ordinal(k)
        if not cand < bound:
            raise DomainError("bound exhausted before reaching ladder length")
        if cand not in used:
            return cand
        k += 1


class Entailment(enum.Enum):
    REFUTED = "REFUTED"
    NO_WITNESS_IN_WINDOW = "NO_WITNESS_IN_WINDOW"


def entails(a, b, window: "FamilyWindow") -> Tuple[Entailment, Optional[OrdinalSet]]:
    """Windowed refutation of "every member containing a meets b".

    REFUTED comes with a witness member and is sound for the full family;
    NO_WITNESS_IN_WINDOW is inconclusive (the window is finite).
    """
    sa, sb = set(oset(a)), set(oset(b))
    for member in window.members:
        d = set(member)
        if sa <= d and not (d & sb):
            return Entailment.REFUTED, member
    return Entailment.NO_WITNESS_IN_WINDOW, None


@dataclass(frozen=True)
class FamilyWindow:
    """A finite, deterministically regenerable slice of the family."""

    bound: Ordinal
    seed: int
    members: Tuple[OrdinalSet, ...]

    @property
    def count(self) -> int:
        return len(self.members)

    def to_dict(self) -> dict:
        return {
            "bound": str(self.bound),
            "seed": self.seed,
            "members": [[str(x) for x in m] for m in self.members],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @staticmethod
    def from_dict(d: dict) -> "FamilyWindow":
        try:
            bound = parse_ordinal(d["bound"])
            seed = int(d["seed"])
            members = tuple(oset(parse_ordinal(x) for x in m) for m in d["members"])
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed family window: {exc}") from exc
        return FamilyWindow(bound=bound, seed=seed, members=members)

    @staticmethod
    def from_json(text: str) -> "FamilyWindow":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"malformed family window JSON: {exc}") from exc
        return FamilyWindow.from_dict(d)


def enumerate_family(bound, count: int, seed: int, tower: Tower) -> FamilyWindow:
    """A window of `count` distinct members below bound.

    Construction blocks of the limits visible in bound's enumeration
    prefix come first (structurally interesting members), then closures
    of seeded random finite sets until the window is full.  Deterministic
    in (bound, count, seed); members are kept lexicographically sorted.
    """
    bound = _as_ord(bound)
    tower._check_cap(bound)
    if count < 0:
        raise DomainError(f"count must be >= 0, got {count}")
    members: List[OrdinalSet] = []
    seen = set()

    def push(m: OrdinalSet) -> None:
        if m and m not in seen and len(members) < count:
            seen.add(m)
            members.append(m)

    limits = [bound] if bound.is_limit() else []
    for x in enum_prefix(bound, 40) if bound > 0 else []:
        if x.is_limit() and x not in limits:
            limits.append(x)
    for eta in sorted(limits):
        for n in range(1, 5):
            push(tower.blocks(eta, n))

    rng = Lcg(seed)
    attempts = 0
    while len(members) < count:
        size = 1 + rng.below(4)
        a = [rng.sample_ordinal(bound, pool=200) for _ in range(size)]
        push(cofinal_extend(a, tower))
        attempts += 1
        if attempts > 200 * count + 1000:
            raise IterationCeilingError(
                f"could not reach {count} distinct members below {bound}")
    return FamilyWindow(bound=bound, seed=seed, members=tuple(sorted(members)))
