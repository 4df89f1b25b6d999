from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals
from g2verify import linalg
from g2verify.exactmath import RatFn, coordinate
from g2verify.quaternion import (
    Quat,
    complex_structure,
    complex_structure_apply,
    coordinate_quat,
    fueter_basis,
    is_fueter,
    right_mult_matrix,
)

quats = st.builds(Quat, rationals(), rationals(), rationals(), rationals())
e = [Quat.basis(a) for a in range(4)]


def test_basis_convention():
    i, j, k = -e[1], -e[2], -e[3]
    for q in (i * i, j * j, k * k, i * j * k):
        assert q == Quat(-1)
    assert e[1] * e[2] == -e[3]


@given(quats, quats, quats)
def test_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(quats)
def test_identity_and_norm(q):
    assert e[0] * q == q
    assert q * q.conj() == Quat(q.norm2())


@given(quats, quats)
def test_conj_reverses_products(a, b):
    assert (a * b).conj() == b.conj() * a.conj()
    assert (a * b).norm2() == a.norm2() * b.norm2()


def test_norm_example():
    q = Quat(1, 1, 0, 0)
    assert q * q.conj() == Quat(2)
    assert e[0].inverse() == e[0]


def test_symbolic_inverse():
    y = coordinate_quat(4)
    ny = sum((coordinate(i) * coordinate(i) for i in range(4, 8)), RatFn.zero())
    assert y.inverse() == y.conj().map(lambda c: c / ny)
    assert y * y.inverse() == Quat(1)


def test_complex_structures_are_right_multiplication():
    v0 = (1, 0, 0, 0)
    assert tuple(complex_structure_apply(1, v0)) == (0, 1, 0, 0)
    assert tuple(complex_structure_apply(1, (0, 0, 1, 0))) == (0, 0, 0, 1)
    for a in (1, 2, 3):
        assert tuple(map(tuple, complex_structure(a))) == tuple(map(tuple, right_mult_matrix(e[a])))


@given(st.tuples(rationals(), rationals(), rationals(), rationals()), st.sampled_from((1, 2, 3)))
def test_complex_structure_squares_to_minus_one(v, a):
    w = complex_structure_apply(a, complex_structure_apply(a, v))
    assert tuple(w) == tuple(-c for c in v)


def test_i1_i2_sign():
    prod = linalg.matmul(complex_structure(1), complex_structure(2))
    assert [list(r) for r in prod] == [list(r) for r in complex_structure(3)]


def test_fueter():
    ident = [[mpq(int(i == j)) for j in range(4)] for i in range(4)]
    assert is_fueter(ident)
    assert is_fueter(complex_structure(1))
    assert not is_fueter(complex_structure(3))
    fb = fueter_basis()
    assert len(fb) == 12 and all(is_fueter(L) for L in fb)
    assert linalg.rank([linalg.flatten(L) for L in fb]) == 12
    assert linalg.rank([linalg.flatten(L) for L in fb] + [linalg.flatten(complex_structure(3))]) == 13


@given(st.lists(rationals(), min_size=12, max_size=12))
def test_fueter_space_is_linear(cs):
    L = [[sum((c * B[r][s] for c, B in zip(cs, fueter_basis())), mpq(0)) for s in range(4)] for r in range(4)]
    assert is_fueter(L)
