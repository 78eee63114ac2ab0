"""Almost-agreeing omega-orders: prefixes, certificates, adjustment."""

import pytest

from ordtower import (
    AAOrders,
    CanonicalOmega,
    CapExceededError,
    CertificateViolation,
    DomainError,
    ExceptionCert,
    Lcg,
    ListOrder,
    W,
    adjust_one,
    enum_below,
    ordinal,
    oset,
)


def strs(xs):
    return [str(x) for x in xs]


def test_canonical_omega():
    o = CanonicalOmega()
    assert strs(o.prefix(4)) == ["0", "1", "2", "3"]
    assert o.rank(7) == 7
    assert o.nth(3) == 3
    assert 5 in o and W not in o
    with pytest.raises(DomainError):
        o.rank(W)
    with pytest.raises(DomainError):
        o.nth(-1)


def test_prepend_order_tail_first(orders, p):
    o = orders.order(p("w+3"))
    assert strs(o.prefix(6)) == ["w+2", "w+1", "w", "0", "1", "2"]
    assert o.rank(p("w+2")) == 0
    assert o.rank(0) == 3
    assert o.nth(2) == W
    with pytest.raises(DomainError):
        o.rank(p("w+3"))


def test_limit_prefixes_frozen(orders, p):
    assert strs(orders.order(p("w*2")).prefix(8)) == [
        "w", "0", "w+1", "1", "w+2", "2", "w+3", "3"]
    assert strs(orders.order(p("w*3")).prefix(8)) == [
        "w", "0", "w+1", "w*2", "1", "w+2", "w*2+1", "2"]
    assert strs(orders.order(p("w^2")).prefix(12)) == [
        "w", "0", "w+1", "w*2", "1", "w+2", "w*2+1", "w*3", "w*3+1", "2",
        "w+3", "w*2+2"]


def test_order_is_bijective_prefix(orders, p):
    for name in ["w", "w+1", "w*2", "w*2+3", "w^2", "w^2+w"]:
        alpha = p(name)
        o = orders.order(alpha)
        seen = o.prefix(40)
        assert len(set(seen)) == 40
        for k, x in enumerate(seen):
            assert x < alpha
            assert o.rank(x) == k
            assert o.nth(k) == x


def test_order_covers_every_point(orders, p):
    # each gamma below alpha eventually appears: rank is a total inverse
    alpha = p("w^2")
    for i in range(40):
        x = enum_below(alpha, i)
        assert orders.nth(alpha, orders.rank(alpha, x)) == x


def test_rank_domain_checks(orders, p):
    with pytest.raises(DomainError):
        orders.rank(p("w*2"), p("w*2"))
    with pytest.raises(DomainError):
        orders.order(5)
    with pytest.raises(CapExceededError):
        AAOrders(cap=p("w*3")).order(p("w^2"))


def test_chain_starts_at_omega(orders, p):
    eta = p("w^2")
    assert orders.chain(eta, 0) == W
    assert strs([orders.chain(eta, i) for i in range(4)]) == [
        "w", "w*2", "w*3", "w*4"]
    assert orders.chain_cert(eta, 0) == ()
    assert isinstance(orders.chain_order(eta, 0), CanonicalOmega)


def test_chain_orders_extend_each_other(orders, p):
    # stage i+1 restricted to stage i's domain is exactly stage i
    eta = p("w^2")
    for i in range(3):
        a = orders.chain_order(eta, i)
        b = orders.chain_order(eta, i + 1)
        xs = a.prefix(25)
        for m in range(len(xs)):
            for n_ in range(m + 1, len(xs)):
                assert a.before(xs[m], xs[n_]) == b.before(xs[m], xs[n_])


def test_limit_blocks_shape(orders, p):
    blocks = orders.limit_blocks(p("w*2"), 4)
    assert blocks[0] == ()
    flat = [x for b in blocks for x in b]
    assert flat == orders.order(p("w*2")).prefix(len(flat))
    with pytest.raises(DomainError):
        orders.limit_blocks(p("w+3"), 2)
    with pytest.raises(DomainError):
        orders.limit_blocks(W, 2)


def test_exception_set_frozen_values(orders, p):
    cases = {
        ("w", "w*2"): [],
        ("w", "w^2"): [],
        ("w*2", "w*3"): ["0", "w", "w+1"],
        ("w*3", "w^2"): ["0", "1", "w", "w+1", "w+2", "w*2", "w*2+1"],
        ("w^2", "w^2*2"): ["0", "w", "w+1", "w*2"],
        ("w+3", "w^2+w*2"): ["0", "1", "2", "w", "w+1", "w+2"],
    }
    for (lo, hi), want in cases.items():
        cert = orders.exception_set(p(lo), p(hi))
        assert strs(cert.points) == want
        assert cert.lower == p(lo) and cert.upper == p(hi)


def test_exception_set_validation(orders, p):
    with pytest.raises(DomainError):
        orders.exception_set(p("w*2"), p("w*2"))
    with pytest.raises(DomainError):
        orders.exception_set(p("w^2"), p("w*2"))
    with pytest.raises(DomainError):
        orders.exception_set(3, p("w*2"))


def test_exception_points_below_lower(orders, p):
    rng = Lcg(12)
    pool = [p(s) for s in ["w*2", "w*3", "w*3+2", "w^2", "w^2+w", "w^2*2"]]
    for _ in range(20):
        lo = pool[rng.below(len(pool))]
        hi = pool[rng.below(len(pool))]
        if not lo < hi:
            continue
        cert = orders.exception_set(lo, hi)
        assert all(x < lo for x in cert.points)
        assert list(cert.points) == sorted(set(cert.points))


def test_verify_exception_positive(orders, p):
    pairs = [("w", "w^2"), ("w*2", "w^2"), ("w*3", "w^2*2"), ("w^2", "w^2+w*4")]
    for lo, hi in pairs:
        cert = orders.exception_set(p(lo), p(hi))
        res = orders.verify_exception(cert, 150, seed=5)
        assert bool(res) and res.witness is None


def test_verify_exception_negative_control(orders, p):
    # a reversed order disagrees with the canonical one on every pair
    cert = ExceptionCert(lower=W, upper=p("w*2"), points=())
    wrong = ListOrder(list(reversed(range(400))))
    res = orders.verify_exception(cert, 50, seed=9, lower_order=wrong,
                                  upper_order=CanonicalOmega())
    assert not res
    x, y = res.witness
    assert x != y


def test_verify_exception_pool_exhaustion(orders, p):
    # a one-point pool can never host a sample pair
    cert = ExceptionCert(lower=W, upper=p("w*2"), points=())
    from ordtower import IterationCeilingError

    with pytest.raises(IterationCeilingError):
        orders.verify_exception(cert, 10, seed=1, pool=1)


def test_cert_json_roundtrip(orders, p):
    cert = orders.exception_set(p("w*2"), p("w^2"))
    again = ExceptionCert.from_json(cert.to_json())
    assert again == cert
    assert cert.to_json() == again.to_json()


def test_cert_json_malformed():
    with pytest.raises(DomainError):
        ExceptionCert.from_json("{nope")
    with pytest.raises(DomainError):
        ExceptionCert.from_dict({"lower": "w"})


def test_adjust_one_empty_cert_is_identity():
    inner = ListOrder([1, 0])
    outer = ListOrder([0, 1, 2])
    assert adjust_one(inner, outer, ()) is outer


def test_adjust_one_hand_example():
    inner = ListOrder([1, 0])
    outer = ListOrder([0, 1, 2])
    got = adjust_one(inner, outer, [ordinal(0)])
    assert strs([got.nth(k) for k in range(3)]) == ["1", "0", "2"]
    assert got.rank(1) == 0 and got.rank(0) == 1 and got.rank(2) == 2
    assert 2 in got and ordinal(5) not in got


def test_adjust_one_spot_check_flags_bad_cert():
    inner = ListOrder([1, 0])
    outer = ListOrder([0, 1, 2])
    with pytest.raises(CertificateViolation):
        adjust_one(inner, outer, [], spot_check=2)


def test_adjust_one_foreign_point():
    inner = ListOrder([1, 0])
    outer = ListOrder([0, 1, 2])
    with pytest.raises(DomainError):
        adjust_one(inner, outer, [ordinal(2)])


def test_adjusted_order_extends_inner(orders, p):
    # the defining property on a larger instance
    inner = orders.order(p("w*2"))
    outer = orders.order(p("w*3"))
    cert = orders.exception_set(p("w*2"), p("w*3"))
    got = adjust_one(inner, outer, cert)
    xs = inner.prefix(30)
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            assert got.before(xs[i], xs[j]) == inner.before(xs[i], xs[j])
    # and it still enumerates everything below w*3
    ys = got.prefix(40)
    assert len(set(ys)) == 40
    for k, y in enumerate(ys):
        assert got.rank(y) == k


def test_list_order_duplicates():
    with pytest.raises(DomainError):
        ListOrder([1, 1])
