"""Finite set-system analytics over windowed families.

Traces, shattering, exact VC dimension and Sauer-Shelah counting on
explicit finite systems, plus the order-derived probes: the ternary
relation comparing rank positions, the 3-set arrangement check, and the
windowed pattern relations R_{m,k}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, permutations
from math import comb
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .errors import DomainError, GuardExceededError
from .family import FamilyWindow
from .ordinals import Ordinal, _as_ord, oset
from .tower import Tower

SHATTER_GUARD = 25
EXACT_LIMIT = 16


class SetSystemWindow:
    """A finite ground list with member sets stored as bitmasks.

    Ground points are sorted ordinals when ordinal-valued, otherwise an
    explicit duplicate-free ordering of opaque labels.
    """

    def __init__(self, ground: Sequence, sets: Sequence):
        pts = list(ground)
        if pts and all(isinstance(p, (Ordinal, int)) for p in pts):
            pts = sorted(_as_ord(p) for p in pts)
        if len(set(pts)) != len(pts):
            raise DomainError("ground has duplicate points")
        self.ground: Tuple = tuple(pts)
        self._index: Dict = {p: i for i, p in enumerate(self.ground)}
        masks = []
        for s in sets:
            if isinstance(s, int):
                if not 0 <= s < (1 << len(self.ground)):
                    raise DomainError(f"bitmask {s} does not fit the ground")
                masks.append(s)
            else:
                masks.append(self.subset_mask(s))
        self.masks: Tuple[int, ...] = tuple(masks)

    @staticmethod
    def from_window(window: FamilyWindow, ground: Sequence | None = None) -> "SetSystemWindow":
        """Trace a family window onto a ground set (default: all points
        appearing in members)."""
        if ground is None:
            pool: Set[Ordinal] = set()
            for mem in window.members:
                pool.update(mem)
            ground = sorted(pool)
        gset = set(_as_ord(p) if isinstance(p, (Ordinal, int)) else p for p in ground)
        sys_ = SetSystemWindow(ground, [])
        masks = []
        for mem in window.members:
            masks.append(sys_.subset_mask([p for p in mem if p in gset]))
        sys_.masks = tuple(masks)
        return sys_

    @property
    def n(self) -> int:
        return len(self.ground)

    def subset_mask(self, points) -> int:
        mask = 0
        for p in points:
            if isinstance(p, (Ordinal, int)):
                p = _as_ord(p)
            if p not in self._index:
                raise DomainError(f"{p} is not a ground point")
            mask |= 1 << self._index[p]
        return mask

    def mask_points(self, mask: int) -> Tuple:
        return tuple(p for i, p in enumerate(self.ground) if mask >> i & 1)


def trace(sys_: SetSystemWindow, a) -> Set[FrozenSet]:
    """The distinct intersections of the members with a."""
    amask = sys_.subset_mask(a)
    return {frozenset(sys_.mask_points(m & amask)) for m in sys_.masks}


def is_shattered(sys_: SetSystemWindow, a) -> bool:
    amask = sys_.subset_mask(a)
    k = bin(amask).count("1")
    if k > SHATTER_GUARD:
        raise GuardExceededError(f"shattering check limited to {SHATTER_GUARD} points")
    return len({m & amask for m in sys_.masks}) == 1 << k


def _shattered_mask(masks: Sequence[int], amask: int, k: int) -> bool:
    return len({m & amask for m in masks}) == 1 << k


def vc_dim(sys_: SetSystemWindow, limit: int = EXACT_LIMIT) -> int:
    """Largest size of a shattered subset, by exact level-wise search."""
    if sys_.n > limit:
        raise GuardExceededError(f"exact search limited to {limit} ground points")
    if not sys_.masks:
        return 0
    level = [0]  # shattered k-subset masks; subsets of shattered sets stay shattered
    d = 0
    while True:
        nxt = []
        for amask in level:
            for i in range(amask.bit_length(), sys_.n):
                ext = amask | 1 << i
                if _shattered_mask(sys_.masks, ext, d + 1):
                    nxt.append(ext)
        if not nxt:
            return d
        level = nxt
        d += 1


def hunt_shattered(sys_: SetSystemWindow, k: int,
                   exhaustive_limit: int = EXACT_LIMIT) -> Optional[Tuple]:
    """Search for a shattered k-subset.

    Below the limit the search is exhaustive, so None refutes existence;
    above it a greedy point-by-point extension runs and None is merely
    inconclusive (found sets are always certified).
    """
    if k > SHATTER_GUARD:
        raise GuardExceededError(f"hunt limited to k <= {SHATTER_GUARD}")
    if k == 0:
        return () if sys_.masks else None
    masks = sys_.masks
    if sys_.n <= exhaustive_limit:
        # depth-first over index-increasing extensions of shattered sets
        stack: List[Tuple[int, int, int]] = [(0, -1, 0)]  # (mask, max index, size)
        while stack:
            amask, top, size = stack.pop()
            if size == k:
                return sys_.mask_points(amask)
            for i in range(sys_.n - 1, top, -1):
                ext = amask | 1 << i
                if _shattered_mask(masks, ext, size + 1):
                    stack.append((ext, i, size + 1))
        return None
    amask, size = 0, 0
    while size < k:
        for i in range(sys_.n):
            if amask >> i & 1:
                continue
            ext = amask | 1 << i
            if _shattered_mask(masks, ext, size + 1):
                amask, size = ext, size + 1
                break
        else:
            return None
    return sys_.mask_points(amask)


def sauer_check(sys_: SetSystemWindow, d: int) -> bool:
    """Distinct full-ground traces within the binomial bound for dimension d."""
    traces = len(set(sys_.masks))
    return traces <= sum(comb(sys_.n, i) for i in range(d + 1))


def shatter_certificate(sys_: SetSystemWindow, a) -> dict:
    """JSON-ready witness map: every subset of a realized by some member."""
    points = tuple(a)
    amask = sys_.subset_mask(points)
    pts = sys_.mask_points(amask)
    bits = [1 << sys_._index[p] for p in pts]
    witnesses = {}
    for r in range(len(pts) + 1):
        for chosen in combinations(range(len(pts)), r):
            want = 0
            for c in chosen:
                want |= bits[c]
            for idx, m in enumerate(sys_.masks):
                if m & amask == want:
                    sub = sum(1 << c for c in chosen)
                    witnesses[str(sub)] = idx
                    break
            else:
                raise DomainError(f"{pts} is not shattered: trace {want} unrealized")
    return {"set": [str(p) for p in pts], "witnesses": witnesses}


def certificate_json(cert: dict) -> str:
    return json.dumps(cert, sort_keys=True)


def example_R(gamma, beta, alpha, tower: Tower) -> bool:
    """gamma strictly earlier than beta in the order attached to alpha."""
    return tower.turnstile(alpha, beta, gamma)


def cond4_check(a, tower: Tower) -> bool:
    """Some arrangement (x; y, z) of a 3-set satisfies the ternary relation."""
    pts = oset(a)
    if len(pts) != 3:
        raise DomainError(f"arrangement check needs exactly 3 points, got {len(pts)}")
    return any(example_R(x, y, z, tower) for x, y, z in permutations(pts))


class RmkValue(Enum):
    TRUE_IN_WINDOW = "TRUE_IN_WINDOW"
    FALSE_IN_WINDOW = "FALSE_IN_WINDOW"


@dataclass(frozen=True)
class RmkResult:
    value: RmkValue
    exists_witness: Optional[Tuple[Ordinal, ...]]
    universal_counterexample: Optional[Tuple[Ordinal, ...]]
    window_relative: bool = True

    def __bool__(self) -> bool:
        return self.value is RmkValue.TRUE_IN_WINDOW


def rmk_eval(m: int, k: int, points, window: FamilyWindow, n: int = 3) -> RmkResult:
    """Evaluate the two-clause pattern relation over the window.

    Pattern: the first m of points[1:] lie in the member, the rest stay
    out.  Value: some member matches the pattern AND every matching
    member contains points[0].  Quantifiers range over the window only,
    so the result is window-relative (a positive exists-witness is sound
    for any larger family; the universal clause is not).
    """
    if not 0 <= m <= k <= n:
        raise DomainError(f"need 0 <= m <= k <= {n}, got m={m}, k={k}")
    pts = [_as_ord(p) for p in points]
    if len(pts) != k + 1:
        raise DomainError(f"pattern over m={m}, k={k} needs {k + 1} points, got {len(pts)}")

    def matches(member: Tuple[Ordinal, ...]) -> bool:
        ms = set(member)
        for i in range(1, m + 1):
            if pts[i] not in ms:
                return False
        for i in range(m + 1, k + 1):
            if pts[i] in ms:
                return False
        return True

    witness = None
    counter = None
    for member in window.members:
        if not matches(member):
            continue
        if witness is None:
            witness = member
        if pts[0] not in set(member):
            counter = member
            break
    ok = witness is not None and counter is None
    return RmkResult(
        value=RmkValue.TRUE_IN_WINDOW if ok else RmkValue.FALSE_IN_WINDOW,
        exists_witness=witness,
        universal_counterexample=counter,
    )
