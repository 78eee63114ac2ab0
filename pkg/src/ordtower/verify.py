"""Seeded verification suites over the whole construction.

Each check draws its own deterministic sample stream from the
configured seed, runs a property at desk scale, and reports one
PASS/FAIL line.  Output is deterministic for a fixed configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .errors import DomainError
from .family import cofinal_extend, enumerate_family, is_closed, ladder
from .omega import AAOrders, ExceptionCert, ListOrder, adjust_one
from .ordinals import Ordinal, W, add, enum_below, ordinal, parse_ordinal
from .rng import Lcg
from .tower import Tower
from .vc import (
    SetSystemWindow,
    cond4_check,
    example_R,
    hunt_shattered,
    is_shattered,
    sauer_check,
    trace,
    vc_dim,
)


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 1
    bound: Ordinal = field(default_factory=lambda: parse_ordinal("w^2"))
    cap: Ordinal = field(default_factory=lambda: parse_ordinal("w^3"))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def _draw_distinct(rng: Lcg, bound: Ordinal, pool: int, n: int) -> List[Ordinal]:
    got: List[Ordinal] = []
    seen = set()
    guard = 0
    while len(got) < n:
        guard += 1
        if guard > 50 * n + 200:
            raise DomainError("sample space too small for distinct draw")
        x = enum_below(bound, rng.below(pool))
        if x not in seen:
            seen.add(x)
            got.append(x)
    return got


# -- tower ---------------------------------------------------------------


def _check_trichotomy(cfg: VerifyConfig, tower: Tower) -> CheckResult:
    top = add(parse_ordinal("w^2+w*5"), ordinal(1))
    rng = Lcg(cfg.seed)
    done = 0
    while done < 500:
        alpha = enum_below(top, rng.below(160))
        if alpha < ordinal(2):
            continue
        span = 80
        if alpha.is_natural():
            span = min(span, alpha.natural())
        x = tower.nth(alpha, rng.below(span))
        y = tower.nth(alpha, rng.below(span))
        if x == y:
            continue
        rx, ry = tower.rank(alpha, x), tower.rank(alpha, y)
        if (rx < ry) == (ry < rx):
            return CheckResult("tower-trichotomy-roundtrip", False,
                               f"rank tie at alpha={alpha}, x={x}, y={y}")
        if tower.nth(alpha, rx) != x or tower.nth(alpha, ry) != y:
            return CheckResult("tower-trichotomy-roundtrip", False,
                               f"roundtrip failed at alpha={alpha}, x={x}, y={y}")
        done += 1
    return CheckResult("tower-trichotomy-roundtrip", True,
                       "500 pairs below w^2+w*5 ordered and inverted exactly")


def _check_literal_roundtrip(cfg: VerifyConfig, tower: Tower) -> CheckResult:
    rng = Lcg(cfg.seed + 1)
    for _ in range(100):
        x = enum_below(cfg.cap, rng.below(500))
        if parse_ordinal(str(x)) != x:
            return CheckResult("ordinal-literal-roundtrip", False,
                               f"parse(str) changed {x!r}")
    return CheckResult("ordinal-literal-roundtrip", True,
                       "100 canonical literals round-tripped")


def suite_tower(cfg: VerifyConfig, tower: Tower, ctx: AAOrders) -> List[CheckResult]:
    return [
        _check_trichotomy(cfg, tower),
        _check_literal_roundtrip(cfg, tower),
    ]


# -- family ---------------------------------------------------------------


def _closed_by_counting(a, tower: Tower) -> bool:
    # second route: count in-set predecessors instead of enumerating them
    pts = list(a)
    for alpha in pts:
        for beta in pts:
            if not beta < alpha:
                continue
            need = tower.rank(alpha, beta)
            got = sum(1 for g in pts
                      if g < alpha and tower.rank(alpha, g) < need)
            if got != need:
                return False
    return True


def _check_extend_sound(cfg: VerifyConfig, tower: Tower) -> CheckResult:
    rng = Lcg(cfg.seed + 2)
    for _ in range(300):
        size = 1 + rng.below(6)
        a = set()
        for _ in range(size):
            a.add(enum_below(cfg.bound, rng.below(16)))
        ext = cofinal_extend(tuple(sorted(a)), tower)
        if not a.issubset(ext):
            return CheckResult("closure-extend-sound", False,
                               f"extension dropped points of {sorted(a)}")
        if not is_closed(ext, tower):
            return CheckResult("closure-extend-sound", False,
                               f"extension of {sorted(a)} is not closed")
    return CheckResult("closure-extend-sound", True,
                       "300 seeded sets extend to checked closed supersets")


def _check_close_sound(cfg: VerifyConfig, tower: Tower) -> CheckResult:
    rng = Lcg(cfg.seed + 3)
    done = 0
    while done < 300:
        alpha = enum_below(cfg.bound, rng.below(24))
        if alpha.is_zero():
            continue
        size = 1 + rng.below(5)
        a = set()
        for _ in range(size):
            a.add(enum_below(alpha, rng.below(16)))
        closed = tower.close(alpha, tuple(sorted(a)))
        full = tuple(sorted(set(closed) | {alpha}))
        if not is_closed(full, tower):
            return CheckResult("closure-close-sound", False,
                               f"close({alpha}, {sorted(a)}) with apex fails the check")
        done += 1
    return CheckResult("closure-close-sound", True,
                       "300 seeded closures stay closed with their apex")


def _check_ladder(cfg: VerifyConfig, tower: Tower) -> CheckResult:
    pts, sets = ladder(20, cfg.bound, tower)
    for i in range(20):
        for j in range(20):
            if (pts[i] in sets[j]) != (i <= j):
                return CheckResult("ladder-biconditional", False,
                                   f"membership broke at i={i}, j={j}")
    return CheckResult("ladder-biconditional", True,
                       "20-rung ladder matches the index law on 400 pairs")


def _check_closed_oracle(cfg: VerifyConfig, tower: Tower) -> CheckResult:
    rng = Lcg(cfg.seed + 4)
    agree = 0
    for _ in range(500):
        size = 1 + rng.below(6)
        a = tuple(sorted({enum_below(cfg.bound, rng.below(16))
                          for _ in range(size)}))
        if is_closed(a, tower) != _closed_by_counting(a, tower):
            return CheckResult("closed-alltriples-oracle", False,
                               f"routes disagree on {list(map(str, a))}")
        agree += 1
    return CheckResult("closed-alltriples-oracle", True,
                       "500 sets judged identically by both closure routes")


def suite_family(cfg: VerifyConfig, tower: Tower, ctx: AAOrders) -> List[CheckResult]:
    return [
        _check_extend_sound(cfg, tower),
        _check_close_sound(cfg, tower),
        _check_ladder(cfg, tower),
        _check_closed_oracle(cfg, tower),
    ]


# -- vc -------------------------------------------------------------------


def _check_cond4(cfg: VerifyConfig, tower: Tower) -> CheckResult:
    rng = Lcg(cfg.seed + 5)
    for _ in range(300):
        triple = _draw_distinct(rng, cfg.bound, 24, 3)
        if not cond4_check(triple, tower):
            return CheckResult("cond4-triples", False,
                               f"no arrangement works for {list(map(str, triple))}")
    return CheckResult("cond4-triples", True,
                       "300 seeded triples admit an ordered arrangement")


def _mixed_ground(window, k: int = 12):
    pool = set()
    for mem in window.members:
        pool.update(mem)
    pts = sorted(pool)
    nats = [x for x in pts if x.is_natural()]
    lims = [x for x in pts if not x.is_natural()]
    half = k // 2
    ground = nats[:half] + lims[:half]
    for x in pts:  # top up if either side ran short
        if len(ground) >= k:
            break
        if x not in ground:
            ground.append(x)
    return ground


def _check_window_vc(cfg: VerifyConfig, tower: Tower) -> CheckResult:
    window = enumerate_family(cfg.bound, 30, cfg.seed, tower)
    ground = _mixed_ground(window, 12)
    sys_ = SetSystemWindow.from_window(window, ground)
    triple = hunt_shattered(sys_, 3)
    if triple is not None:
        return CheckResult("window-vc-dim", False,
                           f"shattered 3-set {list(map(str, triple))} found")
    pair = hunt_shattered(sys_, 2)
    if pair is None:
        return CheckResult("window-vc-dim", False, "no shattered pair found")
    d = vc_dim(sys_)
    if d != 2:
        return CheckResult("window-vc-dim", False, f"exact dimension {d} != 2")
    return CheckResult("window-vc-dim", True,
                       "12-point window trace: no 3-set, a pair, dimension exactly 2")


def _check_sauer(cfg: VerifyConfig, tower: Tower) -> CheckResult:
    for s in range(50):
        window = enumerate_family(cfg.bound, 12, cfg.seed + s, tower)
        sys_ = SetSystemWindow.from_window(window, _mixed_ground(window, 12))
        if not sauer_check(sys_, 2):
            return CheckResult("sauer-windows", False,
                               f"trace count exceeds the bound at seed {cfg.seed + s}")
    return CheckResult("sauer-windows", True,
                       "50 seeded windows within the dimension-2 trace bound")


def _check_section(cfg: VerifyConfig, tower: Tower) -> CheckResult:
    rng = Lcg(cfg.seed + 6)
    done = 0
    while done < 100:
        alpha = enum_below(cfg.bound, rng.below(200))
        if alpha.is_zero():
            continue
        r = rng.below(40)
        try:
            beta = tower.nth(alpha, r)
        except DomainError:
            continue
        want = tower.rank(alpha, beta)
        section = [tower.nth(alpha, j) for j in range(want)]
        if len(set(section)) != want:
            return CheckResult("section-size-identity", False,
                               f"enumeration repeats below {beta} at {alpha}")
        if not all(example_R(g, beta, alpha, tower) for g in section):
            return CheckResult("section-size-identity", False,
                               f"section member fails the relation at ({beta}, {alpha})")
        probes = [beta]
        try:
            probes.append(tower.nth(alpha, want + 1 + rng.below(8)))
        except DomainError:
            pass
        for probe in probes:
            if example_R(probe, beta, alpha, tower):
                return CheckResult("section-size-identity", False,
                                   f"point {probe} outside the section satisfies the relation")
        done += 1
    return CheckResult("section-size-identity", True,
                       "100 sections enumerate to exactly their rank size")


def _brute_trace(members: List[frozenset], a: frozenset):
    return {m & a for m in members}


def _check_trace_oracle(cfg: VerifyConfig, tower: Tower) -> CheckResult:
    rng = Lcg(cfg.seed + 7)
    for _ in range(100):
        n = 1 + rng.below(10)
        ground = list(range(n))
        members = [rng.below(1 << n) for _ in range(1 + rng.below(12))]
        sys_ = SetSystemWindow(ground, members)
        plain = [frozenset(p for p in ground if m >> p & 1) for m in members]
        for _ in range(4):
            amask = rng.below(1 << n)
            a = [p for p in ground if amask >> p & 1]
            got = {frozenset(int(q.natural()) if hasattr(q, "natural") else q
                             for q in t) for t in trace(sys_, a)}
            want = _brute_trace(plain, frozenset(a))
            if got != want:
                return CheckResult("trace-brute-oracle", False,
                                   f"trace mismatch on ground {n}, subset {a}")
            if is_shattered(sys_, a) != (len(want) == 1 << len(a)):
                return CheckResult("trace-brute-oracle", False,
                                   f"shattering mismatch on ground {n}, subset {a}")
    return CheckResult("trace-brute-oracle", True,
                       "100 random systems match the direct set enumerator")


def suite_vc(cfg: VerifyConfig, tower: Tower, ctx: AAOrders) -> List[CheckResult]:
    return [
        _check_cond4(cfg, tower),
        _check_window_vc(cfg, tower),
        _check_sauer(cfg, tower),
        _check_section(cfg, tower),
        _check_trace_oracle(cfg, tower),
    ]


# -- aa -------------------------------------------------------------------


def _check_order_type(cfg: VerifyConfig, ctx: AAOrders) -> CheckResult:
    for s in ("w", "w+3", "w*2", "w^2"):
        alpha = parse_ordinal(s)
        order = ctx.order(alpha)
        pref = order.prefix(50)
        if len(set(pref)) != 50 or any(not x < alpha for x in pref):
            return CheckResult("aa-order-type", False,
                               f"prefix of {s} is not 50 distinct points below it")
        if [order.rank(x) for x in pref] != list(range(50)):
            return CheckResult("aa-order-type", False,
                               f"prefix ranks of {s} not consecutive")
        rng = Lcg(cfg.seed + 8)
        for _ in range(200):
            x = enum_below(alpha, rng.below(200))
            if ctx.nth(alpha, ctx.rank(alpha, x)) != x:
                return CheckResult("aa-order-type", False,
                                   f"roundtrip failed at {s} on {x}")
    return CheckResult("aa-order-type", True,
                       "4 orders prefix-complete to 50 and inverted on 200 points")


def _check_almost_agree(cfg: VerifyConfig, ctx: AAOrders) -> CheckResult:
    top = parse_ordinal("w^2*2")
    rng = Lcg(cfg.seed + 9)
    pairs = []
    guard = 0
    while len(pairs) < 100:
        guard += 1
        if guard > 10000:
            return CheckResult("aa-almost-agree", False, "sampling stalled")
        a = enum_below(top, rng.below(160))
        b = enum_below(top, rng.below(160))
        if a == b:
            continue
        lo, hi = (a, b) if a < b else (b, a)
        if lo < W:
            lo = W
            if not lo < hi:
                continue
        pairs.append((lo, hi))
    biggest = 0
    for k, (lo, hi) in enumerate(pairs):
        cert = ctx.exception_set(lo, hi)
        biggest = max(biggest, len(cert.points))
        got = ctx.verify_exception(cert, 200, cfg.seed + 10 + k)
        if not got.ok:
            w0, w1 = got.witness
            return CheckResult("aa-almost-agree", False,
                               f"orders at {lo} and {hi} disagree on ({w0}, {w1})")
    return CheckResult("aa-almost-agree", True,
                       f"100 certificates verified; max certificate size {biggest}")


def _check_adjust_unit(cfg: VerifyConfig, ctx: AAOrders) -> CheckResult:
    outer = ctx.order(parse_ordinal("w*2"))
    empty = ExceptionCert(lower=W, upper=parse_ordinal("w*2"), points=())
    same = adjust_one(ctx.order(W), outer, empty)
    for k in range(100):
        if same.nth(k) != outer.nth(k):
            return CheckResult("adjust-unit-law", False,
                               f"empty certificate changed rank {k}")
    inner = ListOrder([1, 0])
    out3 = ListOrder([0, 1, 2])
    adjusted = adjust_one(inner, out3, [ordinal(0)])
    got = [adjusted.nth(i) for i in range(3)]
    if got != [ordinal(1), ordinal(0), ordinal(2)]:
        return CheckResult("adjust-unit-law", False,
                           f"hand example produced {list(map(str, got))}")
    return CheckResult("adjust-unit-law", True,
                       "empty certificate is identity; hand example reproduced")


def suite_aa(cfg: VerifyConfig, tower: Tower, ctx: AAOrders) -> List[CheckResult]:
    return [
        _check_order_type(cfg, ctx),
        _check_almost_agree(cfg, ctx),
        _check_adjust_unit(cfg, ctx),
    ]


SUITES: Dict[str, Callable[[VerifyConfig, Tower, AAOrders], List[CheckResult]]] = {
    "tower": suite_tower,
    "family": suite_family,
    "vc": suite_vc,
    "aa": suite_aa,
}


def run_suites(names, cfg: Optional[VerifyConfig] = None) -> List[CheckResult]:
    cfg = cfg or VerifyConfig()
    tower = Tower(cap=cfg.cap)
    ctx = AAOrders(cap=cfg.cap)
    results: List[CheckResult] = []
    for name in names:
        if name not in SUITES:
            raise DomainError(f"unknown suite {name!r}")
        results.extend(SUITES[name](cfg, tower, ctx))
    return results
