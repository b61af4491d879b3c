from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadtuple import (
    MixedRingError,
    NotSquareFreeError,
    QuadInt,
    RingCtx,
    divisors,
    exact_div,
    factorize,
    format_element,
    is_perfect_square,
    is_square_free,
    parse_element,
    sqrt_in_ring,
)
from quadtuple.quadring import element_from_json, element_to_json

from conftest import RING15, RING735

coords = st.integers(min_value=-(10**6), max_value=10**6)
rings = st.sampled_from([RING15, RING735])


def elements(ring=None):
    if ring is None:
        return st.builds(QuadInt, coords, coords, rings)
    return st.builds(QuadInt, coords, coords, st.just(ring))


# ---------------------------------------------------------------------------
# ring arithmetic


def test_add_sub_neg(ring15):
    assert ring15.element(4, 1) + ring15.element(3, 1) == ring15.element(7, 2)
    assert ring15.element(4, 1) + ring15.element(0, 0) == ring15.element(4, 1)
    assert ring15.element(3, 1) - ring15.element(3, 1) == ring15.element(0, 0)
    assert -ring15.element(3, -1) == ring15.element(-3, 1)


def test_mul(ring15):
    assert ring15.element(3, -1) * ring15.element(3, 1) == ring15.element(-6, 0)
    assert ring15.element(7, -5) * ring15.one() == ring15.element(7, -5)
    assert ring15.element(4, 1) * ring15.element(4, -1) == ring15.one()
    assert 2 * ring15.element(3, -4) == ring15.element(6, -8)


def test_conjugate(ring15):
    assert ring15.element(3, 1).conjugate() == ring15.element(3, -1)
    assert ring15.element(5, 0).conjugate() == ring15.element(5, 0)
    x = ring15.element(-17, 12)
    assert x.conjugate().conjugate() == x


def test_norm(ring15):
    assert ring15.element(4, 1).norm() == 1
    assert ring15.element(3, 1).norm() == -6
    assert ring15.zero().norm() == 0


def test_pow(ring15):
    assert ring15.element(4, 1) ** 2 == ring15.element(31, 8)
    assert ring15.element(9, -2) ** 0 == ring15.one()
    assert ring15.element(9, -2) ** 1 == ring15.element(9, -2)
    with pytest.raises(ValueError):
        ring15.element(4, 1) ** -1


def test_exact_div(ring15):
    assert exact_div(ring15.element(2, 0), ring15.element(4, 1)) == ring15.element(8, -2)
    x = ring15.element(23, -9)
    assert exact_div(x, ring15.one()) == x
    assert exact_div(ring15.one(), ring15.element(2, 0)) is None
    with pytest.raises(ZeroDivisionError):
        exact_div(x, ring15.zero())


def test_units(ring15):
    assert ring15.element(4, 1).is_unit()
    assert ring15.element(4, 1).unit_inverse() == ring15.element(4, -1)
    assert ring15.one().is_unit()
    assert ring15.one().unit_inverse() == ring15.one()
    assert not ring15.element(3, 1).is_unit()
    with pytest.raises(ValueError):
        ring15.element(3, 1).unit_inverse()


def test_mixed_rings_rejected(ring15, ring735):
    with pytest.raises(MixedRingError):
        ring15.element(1, 0) + ring735.element(1, 0)
    with pytest.raises(MixedRingError):
        ring15.element(1, 0) * ring735.element(1, 0)


def test_equal_contexts_interoperate():
    # two separately built contexts for the same d are the same ring
    a = RingCtx(15).element(2, 1)
    b = RingCtx(15).element(1, 1)
    assert a + b == RingCtx(15).element(3, 2)


# ---------------------------------------------------------------------------
# ring context validation


def test_ringctx_rejects_bad_d():
    with pytest.raises(ValueError):
        RingCtx(4)
    with pytest.raises(ValueError):
        RingCtx(1)
    with pytest.raises(ValueError):
        RingCtx(0)
    with pytest.raises(NotSquareFreeError):
        RingCtx(45)


def test_ringctx_override_and_caches():
    ctx = RingCtx(45, allow_nonsquarefree=True)
    assert not ctx.square_free
    ctx2 = RingCtx(735, allow_nonsquarefree=True)
    assert (ctx2.d_mod4, ctx2.d_mod60, ctx2.d_mod360) == (3, 15, 15)
    assert RingCtx(15).square_free


# ---------------------------------------------------------------------------
# square roots in the ring


def test_sqrt_examples(ring15):
    assert sqrt_in_ring(ring15.element(19, 4)) == ring15.element(2, 1)
    assert sqrt_in_ring(ring15.element(64, 16)) is None
    assert sqrt_in_ring(ring15.element(4, 0)) == ring15.element(2, 0)
    assert sqrt_in_ring(ring15.element(60, 0)) == ring15.element(0, 2)
    assert sqrt_in_ring(ring15.zero()) == ring15.zero()
    assert sqrt_in_ring(ring15.element(-4, 0)) is None
    assert sqrt_in_ring(ring15.element(31, 7)) is None  # odd sqrt(d) coordinate


def test_sqrt_canonical_sign(ring15):
    # roots come in +- pairs; positive rational part wins
    assert sqrt_in_ring(ring15.element(31, 8)) == ring15.element(4, 1)
    assert sqrt_in_ring(ring15.element(31, -8)) == ring15.element(4, -1)


def _canonical(x, y):
    if x < 0 or (x == 0 and y < 0):
        return (-x, -y)
    return (x, y)


@pytest.mark.parametrize("ctx", [RING15, RING735])
def test_sqrt_complete_at_small_scale(ctx):
    # exhaustive oracle: square every w with |coords| <= 200, then demand
    # agreement (including the canonical sign) on every z in the same box
    d = ctx.d
    table = {}
    for x in range(-200, 201):
        for y in range(-200, 201):
            table[(x * x + d * y * y, 2 * x * y)] = _canonical(x, y)
    for a in range(-200, 201):
        for b in range(-200, 201):
            got = sqrt_in_ring(QuadInt(a, b, ctx))
            want = table.get((a, b))
            if want is None:
                assert got is None, (a, b, got)
            else:
                assert got is not None and (got.a, got.b) == want, (a, b, got, want)


def _sqrt_by_divisor_pairs(z):
    # alternative square test: factor-pair enumeration on b/2
    ctx = z.ctx
    d, a, b = ctx.d, z.a, z.b
    if b == 0:
        if a < 0:
            return None
        s = is_perfect_square(a)
        if s is not None:
            return QuadInt(s, 0, ctx)
        if a % d == 0:
            s = is_perfect_square(a // d)
            if s is not None:
                return QuadInt(0, s, ctx)
        return None
    if b % 2:
        return None
    half = b // 2
    for x in divisors(abs(half)):
        y = half // x
        for sx, sy in ((x, y), (-x, -y)):
            if sx * sx + d * sy * sy == a:
                return QuadInt(*_canonical(sx, sy), ctx)
    return None


def test_sqrt_matches_divisor_pair_enumeration(ring15):
    for a in range(-60, 61):
        for b in range(-60, 61):
            z = ring15.element(a, b)
            assert sqrt_in_ring(z) == _sqrt_by_divisor_pairs(z), (a, b)


@given(w=elements())
def test_sqrt_soundness(w):
    z = w * w
    root = sqrt_in_ring(z)
    assert root is not None
    assert root * root == z
    assert root.a > 0 or (root.a == 0 and root.b >= 0)


# ---------------------------------------------------------------------------
# algebraic properties


@given(x=elements(RING15), y=elements(RING15))
def test_norm_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()


@given(x=elements(RING15), y=elements(RING15))
def test_conjugation_is_homomorphism(x, y):
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert (x + y).conjugate() == x.conjugate() + y.conjugate()


@given(q=elements(RING15), y=elements(RING15))
def test_exact_div_round_trip(q, y):
    if y.is_zero():
        return
    x = q * y
    assert exact_div(x, y) == q


@settings(max_examples=40)
@given(
    x=st.builds(QuadInt, st.integers(-50, 50), st.integers(-50, 50), st.just(RING15)),
    t=st.integers(min_value=0, max_value=64),
)
def test_pow_tower(x, t):
    assert x ** (2 * t) == (x**t) ** 2


# ---------------------------------------------------------------------------
# integer utilities


def test_is_perfect_square():
    assert is_perfect_square(3969) == 63
    assert is_perfect_square(0) == 0
    assert is_perfect_square(1) == 1
    assert is_perfect_square(2) is None
    assert is_perfect_square(-4) is None
    big = (10**30 + 7) ** 2
    assert is_perfect_square(big) == 10**30 + 7
    assert is_perfect_square(big + 1) is None


def test_factorize():
    assert factorize(12) == {2: 2, 3: 1}
    assert factorize(1) == {}
    assert factorize(97) == {97: 1}
    # beyond the trial-division bound, so the rho stage must run
    p, q = 1_000_003, 1_000_033
    assert factorize(p * q) == {p: 1, q: 1}
    assert factorize(p * p) == {p: 2}
    with pytest.raises(ValueError):
        factorize(0)


def test_factorize_seed_override(monkeypatch):
    monkeypatch.setenv("QUADTUPLE_RHO_SEED", "12345")
    assert factorize(1_000_003 * 1_000_033) == {1_000_003: 1, 1_000_033: 1}


def test_divisors_and_square_free():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]
    assert is_square_free(15)
    assert not is_square_free(45)
    assert is_square_free(1)
    assert not is_square_free(735)
    assert not is_square_free(3975)


# ---------------------------------------------------------------------------
# textual and JSON formats


def test_parse_format_round_trip(ring15):
    for text in ("4,1", "-3,0", "0,-17", "123456789012345678901,-9"):
        assert format_element(parse_element(text, ring15)) == text


@pytest.mark.parametrize("bad", ["x,y", "4", "4,1,2", "4, 1", " 4,1", "4.0,1", ""])
def test_parse_rejects_malformed(ring15, bad):
    with pytest.raises(ValueError):
        parse_element(bad, ring15)


def test_element_json_round_trip(ring15):
    x = ring15.element(-(10**40), 7)
    doc = element_to_json(x)
    assert doc == {"a": str(-(10**40)), "b": "7"}
    assert element_from_json(doc, ring15) == x
