"""Tower well-orders: rank/nth, turnstile, closure and blocks."""

import pytest

from ordtower import (
    CapExceededError,
    DomainError,
    Lcg,
    Tower,
    W,
    add,
    ordinal,
    parse_ordinal,
)

p = parse_ordinal


def test_rank_finite(tower):
    # <^5 lists 4,3,2,1,0
    assert [tower.rank(5, x) for x in range(5)] == [4, 3, 2, 1, 0]
    assert tower.rank(5, 2) == 2
    assert tower.nth(5, 0) == ordinal(4)
    with pytest.raises(DomainError):
        tower.nth(5, 5)


def test_rank_at_omega(tower):
    for n in range(20):
        assert tower.rank(W, ordinal(n)) == n
        assert tower.nth(W, n) == ordinal(n)


def test_successor_prepend(tower):
    assert tower.rank(p("w+1"), W) == 0
    assert tower.nth(p("w+1"), 3) == ordinal(2)
    # rank through a successor adds one
    for x in [0, 3, 7]:
        assert tower.rank(p("w+1"), x) == 1 + tower.rank(W, x)


def test_successor_law_sampled(tower):
    rng = Lcg(7)
    for _ in range(200):
        alpha = tower.nth(p("w^2"), rng.below(40))
        succ = add(alpha, 1)
        assert tower.rank(succ, alpha) == 0
        # positions past 0 land below alpha; finite alpha has only alpha of them
        span = 20
        if alpha.is_natural():
            if alpha.is_zero():
                continue
            span = min(span, alpha.natural())
        x = tower.nth(succ, 1 + rng.below(span))
        assert tower.rank(succ, x) == 1 + tower.rank(alpha, x)


def test_turnstile_examples(tower):
    assert tower.turnstile(3, 0, 2)
    assert tower.turnstile(p("w+1"), 3, W)
    assert not tower.turnstile(2, 5, 0)


def test_close_examples(tower):
    assert tower.close(3, [0]) == (ordinal(0), ordinal(1), ordinal(2))
    assert tower.close(0, []) == ()
    assert tower.close(W, [2, 5]) == tuple(ordinal(i) for i in range(6))


def test_close_validates(tower):
    with pytest.raises(DomainError):
        tower.close(3, [5])
    with pytest.raises(CapExceededError):
        tower.close(p("w^3+1"), [0])


def test_blocks_at_omega(tower):
    assert tower.blocks(W, 0) == ()
    assert tower.blocks(W, 3) == tuple(ordinal(i) for i in range(4))
    for n in range(20):
        assert set(tower.blocks(W, n)) < set(tower.blocks(W, n + 1))


def test_blocks_requires_limit(tower):
    with pytest.raises(DomainError):
        tower.blocks(p("w+1"), 2)


def test_blocks_are_rank_prefixes(tower):
    # every block is an initial segment of the order at its limit
    for s in ["w", "w*2", "w^2"]:
        eta = p(s)
        for n in range(1, 11):
            blk = tower.blocks(eta, n)
            ranks = sorted(tower.rank(eta, x) for x in blk)
            assert ranks == list(range(len(blk)))


def test_order_type_omega_gap_free(tower):
    # {x : rank < k} has exactly k elements, witnessed through nth
    for s in ["w*2", "w^2+w"]:
        eta = p(s)
        seen = [tower.nth(eta, k) for k in range(50)]
        assert len(set(seen)) == 50
        assert [tower.rank(eta, x) for x in seen] == list(range(50))


def test_rank_frozen_values(tower):
    # pinned by executing the construction; stable across refactors
    assert tower.rank(p("w*2"), p("w+3")) == 6
    assert tower.rank(p("w*5"), p("w*4+2")) == 7
    assert tower.rank(p("w^2"), p("w*3+1")) == 14


def test_trichotomy_sampled(tower):
    rng = Lcg(11)
    for _ in range(200):
        alpha = tower.nth(p("w^2+w*5+1"), rng.below(60))
        if alpha < ordinal(2):
            continue
        span = 40 if not alpha.is_natural() else min(40, alpha.natural())
        x, y = tower.nth(alpha, rng.below(span)), tower.nth(alpha, rng.below(span))
        if x == y:
            continue
        rx, ry = tower.rank(alpha, x), tower.rank(alpha, y)
        assert (rx < ry) != (ry < rx)
        assert tower.nth(alpha, rx) == x and tower.nth(alpha, ry) == y


def test_triple_not_shattered(tower):
    # some arrangement of any distinct triple is ordered by the max's order
    rng = Lcg(13)
    for _ in range(100):
        vals = {tower.nth(p("w^2"), rng.below(50)) for _ in range(3)}
        if len(vals) < 3:
            continue
        a, b, c = sorted(vals)
        assert tower.turnstile(c, a, b) or tower.turnstile(c, b, a)


def test_cap_enforced():
    t = Tower(cap=p("w*3"))
    with pytest.raises(CapExceededError):
        t.rank(p("w^2"), W)
    assert t.rank(p("w*3"), p("w*2")) >= 0


def test_rank_domain(tower):
    with pytest.raises(DomainError):
        tower.rank(W, W)
    with pytest.raises(DomainError):
        tower.nth(W, -1)
