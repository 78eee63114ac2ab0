"""Almost-agreeing omega-orders on the ordinals below a cap.

Each alpha with omega <= alpha <= cap carries an order of type omega on
{gamma < alpha}:

  * base: the canonical order on the naturals;
  * alpha = lam + m: the tail lam+m-1, ..., lam prepended to lam's order;
  * alpha a limit: orders along the fundamental-sequence chain
    alpha_0 = omega < alpha_1 < ... are adjusted one by one so each
    extends the previous exactly (cut insertion at the certified
    exception points), then alpha is split into finite blocks
    b_i = {gamma < alpha_i strictly before the integer i} minus earlier
    blocks, listed block by block.

Any two of these orders agree off a finite set; ``exception_set``
returns a certified superset of the disagreement points, composed along
the same recursion that builds the orders.
"""

from __future__ import annotations

import json
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import (
    CapExceededError,
    CertificateViolation,
    DomainError,
    IterationCeilingError,
)
from .ordinals import (
    Ordinal,
    W,
    add,
    difference,
    enum_below,
    fund_seq,
    ordinal,
    oset,
    parse_ordinal,
    _as_ord,
)
from .rng import Lcg
from .tower import DEFAULT_CAP


class OmegaOrder:
    """A well-order of type omega given by a computable rank function."""

    provenance = "BASE"
    bound: Optional[Ordinal] = None

    def rank(self, x) -> int:
        raise NotImplementedError

    def nth(self, k: int) -> Ordinal:
        raise NotImplementedError

    def __contains__(self, x) -> bool:
        raise NotImplementedError

    def before(self, x, y) -> bool:
        """True when x strictly precedes y."""
        return self.rank(_as_ord(x)) < self.rank(_as_ord(y))

    def prefix(self, k: int) -> List[Ordinal]:
        """First k elements; subclasses override with bulk versions."""
        return [self.nth(i) for i in range(k)]


class CanonicalOmega(OmegaOrder):
    provenance = "BASE"

    def __init__(self):
        self.bound = W

    def rank(self, x) -> int:
        x = _as_ord(x)
        if not x.is_natural():
            raise DomainError(f"{x} is not below w")
        return x.natural()

    def nth(self, k: int) -> Ordinal:
        if k < 0:
            raise DomainError(f"rank index must be >= 0, got {k}")
        return ordinal(k)

    def prefix(self, k: int) -> List[Ordinal]:
        return [ordinal(i) for i in range(k)]

    def __contains__(self, x) -> bool:
        return _as_ord(x) < W


class PrependOrder(OmegaOrder):
    """Order on {gamma < lam+m}: the tail lam+m-1 ... lam, then lam's order."""

    provenance = "PREPEND"

    def __init__(self, inner: OmegaOrder, lam: Ordinal, m: int):
        self.inner = inner
        self.lam = lam
        self.m = m
        self.bound = add(lam, ordinal(m))
        self._heads = [add(lam, ordinal(m - 1 - k)) for k in range(m)]

    def rank(self, x) -> int:
        x = _as_ord(x)
        if not x < self.bound:
            raise DomainError(f"{x} is not below {self.bound}")
        if x >= self.lam:
            j = difference(x, self.lam).natural()
            return self.m - 1 - j
        return self.m + self.inner.rank(x)

    def nth(self, k: int) -> Ordinal:
        if k < 0:
            raise DomainError(f"rank index must be >= 0, got {k}")
        if k < self.m:
            return self._heads[k]
        return self.inner.nth(k - self.m)

    def prefix(self, k: int) -> List[Ordinal]:
        if k <= self.m:
            return self._heads[:k]
        return self._heads + self.inner.prefix(k - self.m)

    def __contains__(self, x) -> bool:
        return _as_ord(x) < self.bound


class ListOrder(OmegaOrder):
    """An explicit finite order, mainly for unit-level checks."""

    provenance = "EXPLICIT"

    def __init__(self, elements):
        self.elements = [_as_ord(x) for x in elements]
        self._ranks = {x: i for i, x in enumerate(self.elements)}
        if len(self._ranks) != len(self.elements):
            raise DomainError("explicit order has duplicate elements")

    def rank(self, x) -> int:
        x = _as_ord(x)
        if x not in self._ranks:
            raise DomainError(f"{x} is not in this order")
        return self._ranks[x]

    def nth(self, k: int) -> Ordinal:
        if not 0 <= k < len(self.elements):
            raise DomainError(f"rank {k} out of range")
        return self.elements[k]

    def __contains__(self, x) -> bool:
        return _as_ord(x) in self._ranks


class PatchedOrder(OmegaOrder):
    """An outer order with finitely many points moved to new positions.

    The moved points are deleted from the outer order (their old ranks in
    ``removed_ranks``) and reinserted at the fixed final ranks in
    ``placed``; everything else keeps its relative outer order, with
    ranks shifted past the deletions and insertions via binary search.
    """

    provenance = "ADJUSTED"

    def __init__(self, outer: OmegaOrder, removed_ranks, placed: Dict[Ordinal, int]):
        self.outer = outer
        self.bound = outer.bound
        self.removed_ranks = tuple(removed_ranks)
        self.placed = dict(placed)
        self.placed_at = {r: p for p, r in placed.items()}
        self.placed_ranks = tuple(sorted(self.placed_at))

    def rank(self, x) -> int:
        x = _as_ord(x)
        got = self.placed.get(x)
        if got is not None:
            return got
        r0 = self.outer.rank(x)
        r1 = r0 - bisect_left(self.removed_ranks, r0)
        t = r1
        while True:
            c = bisect_right(self.placed_ranks, t)
            if r1 + c == t:
                return t
            t = r1 + c

    def nth(self, k: int) -> Ordinal:
        if k < 0:
            raise DomainError(f"rank index must be >= 0, got {k}")
        got = self.placed_at.get(k)
        if got is not None:
            return got
        r1 = k - bisect_left(self.placed_ranks, k)
        j = r1
        while True:
            c = bisect_right(self.removed_ranks, j)
            if r1 + c == j:
                break
            j = r1 + c
        return self.outer.nth(j)

    def prefix(self, k: int) -> List[Ordinal]:
        n_ins = bisect_left(self.placed_ranks, k)
        need = k - n_ins
        j = need
        while True:
            c = bisect_right(self.removed_ranks, j - 1) if j else 0
            if need + c == j:
                break
            j = need + c
        raw = self.outer.prefix(j)
        removed = set(r for r in self.removed_ranks if r < j)
        base = [p for r, p in enumerate(raw) if r not in removed]
        out: List[Ordinal] = []
        bi = 0
        for pos in range(k):
            got = self.placed_at.get(pos)
            if got is not None:
                out.append(got)
            else:
                out.append(base[bi])
                bi += 1
        return out

    def __contains__(self, x) -> bool:
        return _as_ord(x) in self.outer


class LimitOrder(OmegaOrder):
    """Block order at a limit eta > omega, built over the adjusted chain."""

    provenance = "LIMIT"

    def __init__(self, ctx: "AAOrders", eta: Ordinal):
        self.ctx = ctx
        self.eta = eta
        self.bound = eta
        self._blocks: List[Tuple[Ordinal, ...]] = []
        self._seq: List[Ordinal] = []
        self._placed: Dict[Ordinal, int] = {}

    def ensure_blocks(self, n: int) -> None:
        while len(self._blocks) < n:
            self._extend()

    def block(self, i: int) -> Tuple[Ordinal, ...]:
        self.ensure_blocks(i + 1)
        return self._blocks[i]

    def _extend(self) -> None:
        i = len(self._blocks)
        if i >= self.ctx.ceiling:
            raise IterationCeilingError(
                f"block construction at {self.eta} exceeded {self.ctx.ceiling} stages")
        oi = self.ctx.chain_order(self.eta, i)
        ri = oi.rank(ordinal(i))
        placed = self._placed
        fresh = [p for p in oi.prefix(ri) if p not in placed]
        for p in fresh:  # prefix order = within-block order
            placed[p] = len(self._seq)
            self._seq.append(p)
        self._blocks.append(tuple(fresh))

    def rank(self, x) -> int:
        x = _as_ord(x)
        if not x < self.eta:
            raise DomainError(f"{x} is not below {self.eta}")
        while x not in self._placed:
            self._extend()
        return self._placed[x]

    def nth(self, k: int) -> Ordinal:
        if k < 0:
            raise DomainError(f"rank index must be >= 0, got {k}")
        while len(self._seq) <= k:
            self._extend()
        return self._seq[k]

    def prefix(self, k: int) -> List[Ordinal]:
        while len(self._seq) < k:
            self._extend()
        return self._seq[:k]

    def __contains__(self, x) -> bool:
        return _as_ord(x) < self.eta


@dataclass(frozen=True)
class ExceptionCert:
    """Finite certified superset of where two orders may disagree."""

    lower: Ordinal
    upper: Ordinal
    points: Tuple[Ordinal, ...]

    def to_dict(self) -> dict:
        return {
            "lower": str(self.lower),
            "upper": str(self.upper),
            "points": [str(p) for p in self.points],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @staticmethod
    def from_dict(d: dict) -> "ExceptionCert":
        try:
            return ExceptionCert(
                lower=parse_ordinal(d["lower"]),
                upper=parse_ordinal(d["upper"]),
                points=oset(parse_ordinal(p) for p in d["points"]),
            )
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed exception certificate: {exc}") from exc

    @staticmethod
    def from_json(text: str) -> "ExceptionCert":
        try:
            return ExceptionCert.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise DomainError(f"malformed certificate JSON: {exc}") from exc


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    witness: Optional[Tuple[Ordinal, Ordinal]] = None

    def __bool__(self) -> bool:
        return self.ok


def adjust_one(inner: OmegaOrder, outer: OmegaOrder, cert, spot_check: int = 0) -> OmegaOrder:
    """Rebuild outer so it extends inner exactly, given certified exceptions.

    Processes the exception points in increasing order; each is deleted
    and reinserted at the cut just after the last of its inner
    predecessors still present.  With no points the outer order is
    returned as is (the certificate claims the restriction already
    matches).  ``spot_check`` compares the result against inner on that
    many leading elements and raises CertificateViolation on a mismatch.
    """
    points = cert.points if isinstance(cert, ExceptionCert) else oset(cert)
    for p in points:
        if p not in inner:
            raise DomainError(f"exception point {p} is outside the inner order")
    result = _adjust(inner, outer, points)
    if spot_check > 0:
        xs = []
        for i in range(spot_check):
            try:
                xs.append(inner.nth(i))
            except DomainError:
                break
        for i in range(len(xs)):
            for j in range(i + 1, len(xs)):
                if inner.before(xs[i], xs[j]) != result.before(xs[i], xs[j]):
                    raise CertificateViolation(
                        f"orders disagree on ({xs[i]}, {xs[j]}) outside the certificate",
                        witness=(xs[i], xs[j]))
    return result


def _adjust(inner: OmegaOrder, outer: OmegaOrder, points: Tuple[Ordinal, ...]) -> OmegaOrder:
    if not points:
        return outer
    removed_ranks = sorted(outer.rank(p) for p in points)
    entries: List[List] = []  # [rank, point], sorted by rank
    ranks: List[int] = []     # parallel rank list
    placed: Dict[Ordinal, List] = {}
    remaining = set(points)

    def partial_rank(z: Ordinal) -> int:
        e = placed.get(z)
        if e is not None:
            return e[0]
        r0 = outer.rank(z)
        r1 = r0 - bisect_left(removed_ranks, r0)
        t = r1
        while True:
            c = bisect_right(ranks, t)
            if r1 + c == t:
                return t
            t = r1 + c

    for x in points:
        remaining.discard(x)
        # nearest inner predecessor still present gives the cut
        cut = 0
        j = inner.rank(x) - 1
        while j >= 0:
            z = inner.nth(j)
            if z not in remaining:
                cut = partial_rank(z) + 1
                break
            j -= 1
        pos = bisect_left(ranks, cut)
        for e in entries[pos:]:
            e[0] += 1
        ranks[pos:] = [r + 1 for r in ranks[pos:]]
        entries.insert(pos, [cut, x])
        ranks.insert(pos, cut)
    return PatchedOrder(outer, removed_ranks, {e[1]: e[0] for e in entries})


class AAOrders:
    """Shared context: memoized orders, chains and certificates below cap."""

    def __init__(self, cap: Ordinal | None = None, ceiling: int = 20000):
        self.cap = _as_ord(cap) if cap is not None else DEFAULT_CAP
        self.ceiling = ceiling
        self._orders: Dict[Ordinal, OmegaOrder] = {}
        self._chains: Dict[Ordinal, Tuple[List[Ordinal], List[int]]] = {}
        self._chain_orders: Dict[Tuple[Ordinal, int], OmegaOrder] = {}
        self._chain_certs: Dict[Tuple[Ordinal, int], Tuple[Ordinal, ...]] = {}
        self._exc: Dict[Tuple[Ordinal, Ordinal], Tuple[Ordinal, ...]] = {}

    def _check(self, alpha) -> Ordinal:
        alpha = _as_ord(alpha)
        if alpha > self.cap:
            raise CapExceededError(f"{alpha} exceeds the configured cap {self.cap}")
        if not alpha >= W:
            raise DomainError(f"orders start at w, got {alpha}")
        return alpha

    # -- the orders ----------------------------------------------------------

    def order(self, alpha) -> OmegaOrder:
        alpha = self._check(alpha)
        got = self._orders.get(alpha)
        if got is None:
            if alpha == W:
                got = CanonicalOmega()
            else:
                lam, m = alpha.split()
                if m > 0:
                    got = PrependOrder(self.order(lam), lam, m)
                else:
                    got = LimitOrder(self, alpha)
            self._orders[alpha] = got
        return got

    def rank(self, alpha, x) -> int:
        alpha = self._check(alpha)
        x = _as_ord(x)
        if not x < alpha:
            raise DomainError(f"rank needs x < alpha, got x={x}, alpha={alpha}")
        return self.order(alpha).rank(x)

    def nth(self, alpha, k: int) -> Ordinal:
        return self.order(alpha).nth(k)

    def limit_blocks(self, eta, n: int) -> List[Tuple[Ordinal, ...]]:
        """First n blocks b_0..b_{n-1} of the limit construction at eta."""
        eta = self._check(eta)
        o = self.order(eta)
        if not isinstance(o, LimitOrder):
            raise DomainError(f"{eta} is not a limit above w")
        o.ensure_blocks(n)
        return [o.block(i) for i in range(n)]

    # -- fundamental-sequence chain -----------------------------------------

    def chain(self, eta: Ordinal, i: int) -> Ordinal:
        """i-th member of eta's chain: omega first, then the fundamental
        sequence values above omega."""
        got = self._chains.get(eta)
        if got is None:
            got = self._chains[eta] = ([W], [0])
        lst, nxt = got
        while len(lst) <= i:
            v = fund_seq(eta, nxt[0])
            nxt[0] += 1
            if v > W:
                lst.append(v)
        return lst[i]

    def chain_cert(self, eta: Ordinal, i: int) -> Tuple[Ordinal, ...]:
        # composed certificate between the adjusted order at stage i-1
        # and the plain order at stage i
        if i == 0:
            return ()
        key = (eta, i)
        got = self._chain_certs.get(key)
        if got is None:
            prev = self.chain_cert(eta, i - 1)
            step = self.exception_points(self.chain(eta, i - 1), self.chain(eta, i))
            got = oset(prev + step)
            self._chain_certs[key] = got
        return got

    def chain_order(self, eta: Ordinal, i: int) -> OmegaOrder:
        for j in range(i + 1):
            key = (eta, j)
            if key in self._chain_orders:
                continue
            if j == 0:
                got = self.order(W)
            else:
                inner = self._chain_orders[(eta, j - 1)]
                outer = self.order(self.chain(eta, j))
                got = _adjust(inner, outer, self.chain_cert(eta, j))
            self._chain_orders[key] = got
        return self._chain_orders[(eta, i)]

    # -- exception certificates ----------------------------------------------

    def exception_points(self, beta: Ordinal, alpha: Ordinal) -> Tuple[Ordinal, ...]:
        """Certified superset of {x < beta : the orders at beta and alpha
        place x differently relative to other points < beta}."""
        if beta == alpha:
            return ()
        key = (beta, alpha)
        got = self._exc.get(key)
        if got is not None:
            return got
        lam, m = alpha.split()
        if m > 0:
            # the prepended tail never reorders {gamma < lam}
            pts = self.exception_points(beta, lam) if beta < lam else ()
        else:
            i = 0
            while not beta <= self.chain(alpha, i):
                i += 1
            o = self.order(alpha)
            assert isinstance(o, LimitOrder)
            o.ensure_blocks(i + 1)
            collected = set()
            for j in range(i + 1):
                collected.update(p for p in o.block(j) if p < beta)
            collected.update(p for p in self.chain_cert(alpha, i) if p < beta)
            collected.update(self.exception_points(beta, self.chain(alpha, i)))
            pts = oset(collected)
        self._exc[key] = pts
        return pts

    def exception_set(self, beta, alpha) -> ExceptionCert:
        beta, alpha = self._check(beta), self._check(alpha)
        if not beta < alpha:
            raise DomainError(f"exception_set needs beta < alpha, got {beta}, {alpha}")
        return ExceptionCert(lower=beta, upper=alpha,
                             points=self.exception_points(beta, alpha))

    def verify_exception(self, cert: ExceptionCert, samples: int, seed: int,
                         lower_order: OmegaOrder | None = None,
                         upper_order: OmegaOrder | None = None,
                         pool: int = 60) -> VerifyResult:
        """Sampled check of the defining property: orders agree on pairs
        outside the certificate points.  Order overrides let callers probe
        deliberately mismatched orders (negative control)."""
        lo = lower_order if lower_order is not None else self.order(cert.lower)
        hi = upper_order if upper_order is not None else self.order(cert.upper)
        excl = set(cert.points)
        rng = Lcg(seed)
        # scan a bounded window of the enumeration for usable sample points;
        # scanning further would force very deep placements upstream
        candidates = []
        seen = set()
        for idx in range(2 * pool + len(excl)):
            x = enum_below(cert.lower, idx)
            if x in excl or x in seen:
                continue
            seen.add(x)
            candidates.append(x)
            if len(candidates) >= pool:
                break
        if len(candidates) < 2:
            raise IterationCeilingError("sample pool exhausted by exception points")

        for _ in range(samples):
            x = candidates[rng.below(len(candidates))]
            y = candidates[rng.below(len(candidates))]
            if x == y:
                continue
            if (lo.rank(x) < lo.rank(y)) != (hi.rank(x) < hi.rank(y)):
                return VerifyResult(False, (x, y))
        return VerifyResult(True, None)
