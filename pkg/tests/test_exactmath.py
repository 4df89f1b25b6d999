from itertools import product

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from conftest import points8, polys, rationals
from g2verify.exactmath import NORM_X, NORM_Y, Jet, PoleError, Poly, RatFn, coordinate

X = [coordinate(i) for i in range(8)]


def naive_product(a: Poly, b: Poly) -> dict:
    """Term-by-term product oracle, independent of Poly.__mul__."""
    out = {}
    for (ea, ca), (eb, cb) in product(a.terms.items(), b.terms.items()):
        e = tuple(i + j for i, j in zip(ea, eb))
        out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def test_monomial_product():
    x0 = Poly.var(0)
    assert x0 * x0 == Poly({(2, 0, 0, 0, 0, 0, 0, 0): 1})


def test_cancellation():
    p = Poly.var(0) + Poly.var(4)
    assert (p - p).is_zero()


def test_norm_product_has_16_terms():
    p = NORM_X * NORM_Y
    assert p.degree() == 4
    assert len(p) == 16
    assert dict(p.terms) == naive_product(NORM_X, NORM_Y)


@given(polys(), polys())
def test_product_matches_naive(a, b):
    assert dict((a * b).terms) == naive_product(a, b)


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a


@given(polys(), polys(), st.integers(0, 7))
def test_leibniz(a, b, i):
    assert (a * b).partial(i) == a.partial(i) * b + a * b.partial(i)


@given(polys(), polys(), points8())
def test_eval_is_a_ring_map(a, b, p):
    assert (a * b).eval(p) == a.eval(p) * b.eval(p)
    assert (a + b).eval(p) == a.eval(p) + b.eval(p)


def test_partials():
    assert (Poly.var(0) * Poly.var(1)).partial(0) == Poly.var(1)
    assert NORM_X.partial(2) == Poly.var(2).scale(2)
    assert Poly.const(7).partial(7).is_zero()


def test_ratfn_equalities():
    ny, nxy = RatFn(NORM_Y), RatFn(NORM_X + NORM_Y)
    assert (1 / ny) * ny == RatFn.const(1)
    assert 1 / nxy + 0 == 1 / nxy
    assert ny / nxy + RatFn(NORM_X) / nxy == RatFn.const(1)


def test_ratfn_eval():
    nxy = RatFn(NORM_X + NORM_Y)
    e0 = (1, 0, 0, 0, 0, 0, 0, 0)
    assert (1 / nxy).eval(e0) == 1
    assert (RatFn(NORM_Y) / nxy).eval((1, 0, 0, 0, 1, 0, 0, 0)) == mpq(1, 2)
    with pytest.raises(PoleError):
        (1 / RatFn(NORM_Y)).eval(e0)


def test_compose_inverse_quaternion():
    ny = RatFn(NORM_Y)
    # w = y^{-1} = ybar / |y|^2, so w^0 = y^0 / |y|^2 and |w|^2 = 1 / |y|^2
    w = [X[4] / ny, -X[5] / ny, -X[6] / ny, -X[7] / ny]
    subs = w + [RatFn.zero()] * 4
    assert X[0].compose(subs) == X[4] / ny
    assert RatFn(NORM_X).compose(subs) == 1 / ny
    assert RatFn.const(3).compose(subs) == RatFn.const(3)


@given(polys(max_terms=3), polys(max_terms=3), st.integers(0, 7), points8())
def test_quotient_rule_against_eval(a, b, i, p):
    den = b * b + 1  # nowhere zero over Q
    f = RatFn(a) / RatFn(den)
    lhs = f.partial(i).eval(p)
    rhs = (a.partial(i) * den - a * den.partial(i)).eval(p) / den.eval(p) ** 2
    assert lhs == rhs


@given(polys(max_terms=3, max_deg=3), points8(), st.integers(0, 7))
def test_jet_value_and_partial(a, p, i):
    j = RatFn(a).jet(p, 2)
    assert j.value == a.eval(p)
    assert j.partial(i).value == a.partial(i).eval(p)


@given(rationals(), rationals())
def test_jet_constants(a, b):
    assert (Jet.const(a, 2) * Jet.const(b, 2)).value == a * b
