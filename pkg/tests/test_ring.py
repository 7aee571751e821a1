import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainsyz.ring import (MAX_EXP, Polynomial, RingCtx, RingMismatch, compare, poly_exact_div)

R2 = RingCtx(2, ("t1", "t2"))
R6 = RingCtx(6, tuple(f"t{i + 1}" for i in range(6)))
R6_LEX = RingCtx(6, tuple(f"t{i + 1}" for i in range(6)), "lex")


def test_compare_examples():
    assert compare(R2, (2, 0), (1, 1)) == 1
    assert compare(R2, (1, 1), (1, 1)) == 0
    assert compare(R2, (0, 1), (1, 0)) == -1


def test_degrevlex_tie_break_uses_last_variable():
    R3 = RingCtx(3, ("a", "b", "c"))
    # a*c < b^2 in degrevlex (last differing exponent larger on a*c)
    assert compare(R3, (1, 0, 1), (0, 2, 0)) == -1
    # lex would say the opposite
    L3 = RingCtx(3, ("a", "b", "c"), "lex")
    assert compare(L3, (1, 0, 1), (0, 2, 0)) == 1


def test_monomial_roundtrip_and_degree():
    e = (3, 0, 7, 1, 0, 2)
    for ring in (R6, R6_LEX):
        m = ring.monomial(e)
        assert ring.exponents(m) == e
        assert ring.degree(m) == 13


def test_exponent_overflow_rejected():
    with pytest.raises(OverflowError):
        R2.monomial((MAX_EXP + 1, 0))


def test_char_two_arithmetic():
    t1, t2 = R2.gens()
    assert (t1 + t2) ** 2 == t1 ** 2 + t2 ** 2
    assert (t1 + R2.unit()) ** 2 == t1 ** 2 + R2.unit()
    assert (t1 + t1).is_zero()
    assert t1 - t2 == t1 + t2


def test_canonical_text():
    R3 = RingCtx(3, ("t1", "t2", "t3"))
    p = R3.parse("t3 + t1^2*t2")
    assert str(p) == "t1^2*t2 + t3"
    assert str(R3.zero()) == "0"
    assert str(R3.unit()) == "1"
    assert R3.parse(str(p)) == p


def test_parse_rejects_unknown_names():
    with pytest.raises(ValueError):
        R2.parse("x + t1")
    with pytest.raises(ValueError):
        R2.parse("t1 + ")


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        R2.gen(0) + RingCtx(2, ("a", "b")).gen(0)


def test_exact_division():
    t1, t2 = R2.gens()
    prod = (t1 + t2) * (t1 * t2 + t2 ** 2)
    assert Polynomial(R2, poly_exact_div(R2, prod.terms, (t1 + t2).terms)) == t1 * t2 + t2 ** 2
    with pytest.raises(ArithmeticError):
        poly_exact_div(R2, t1.terms, t2.terms)


exps = st.lists(st.integers(0, 3), min_size=6, max_size=6)
polys = st.lists(exps, max_size=5)


def _poly(ring, vecs):
    return ring.from_exponents(vecs)


@settings(max_examples=150, deadline=None)
@given(polys, polys, polys, st.sampled_from([R6, R6_LEX]))
def test_ring_axioms(a, b, c, ring):
    p, q, r = _poly(ring, a), _poly(ring, b), _poly(ring, c)
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert (p + q) + r == p + (q + r)
    assert p * (q + r) == p * q + p * r


@settings(max_examples=150, deadline=None)
@given(polys, polys)
def test_degree_additivity(a, b):
    p, q = _poly(R6, a), _poly(R6, b)
    if p and q:
        assert (p * q).degree() == p.degree() + q.degree()
        assert (p * q).leading_monomial() == R6.mono_mul(p.leading_monomial(), q.leading_monomial())


@settings(max_examples=200, deadline=None)
@given(exps, exps, st.sampled_from([R6, R6_LEX]))
def test_order_refines_divisibility(a, b, ring):
    ma, mb = ring.monomial(a), ring.monomial(b)
    divides = all(x <= y for x, y in zip(a, b))
    assert ring.divides(ma, mb) == divides
    if divides and a != b:
        assert ma < mb
    lcm = ring.lcm(ma, mb)
    assert ring.divides(ma, lcm) and ring.divides(mb, lcm)
    assert ring.exponents(ring.gcd(ma, mb)) == tuple(min(x, y) for x, y in zip(a, b))


@settings(max_examples=100, deadline=None)
@given(exps, exps, exps)
def test_order_is_multiplicative(a, b, c):
    ma, mb, mc = (R6.monomial(v) for v in (a, b, c))
    assert (ma < mb) == (R6.mono_mul(ma, mc) < R6.mono_mul(mb, mc))
