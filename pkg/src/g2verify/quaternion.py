"""Quaternions in the basis {e0, e1, e2, e3} = {1, -i, -j, -k}.

With this basis the structure constants are e_a e_b = -delta_ab - eps_abc e_c
for a, b >= 1, so e1 e2 = -e3 (the opposite of the usual i j = k).

The complex structures I_1, I_2, I_3 on R^4 = H are right multiplications by
e1, e2, e3.  Right multiplications compose contravariantly,
R_a R_b = R_{ba}, which is why I_1 I_2 = +I_3 here.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from gmpy2 import mpq

from . import linalg
from .exactmath import Poly, RatFn, is_number

_EPS = {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1, (2, 1, 3): -1, (1, 3, 2): -1, (3, 2, 1): -1}


def _zero_like(c):
    return c * 0 if not is_number(c) else mpq(0)


class Quat:
    """q = c0 e0 + c1 e1 + c2 e2 + c3 e3 over any commutative scalar ring."""

    __slots__ = ("c",)

    def __init__(self, c0, c1=0, c2=0, c3=0):
        self.c = tuple(mpq(x) if is_number(x) else x for x in (c0, c1, c2, c3))

    @classmethod
    def basis(cls, a: int) -> "Quat":
        return cls(*[int(a == b) for b in range(4)])

    @classmethod
    def from_seq(cls, s: Sequence) -> "Quat":
        return cls(*s)

    def __getitem__(self, a):
        return self.c[a]

    def __iter__(self):
        return iter(self.c)

    def is_zero(self) -> bool:
        return all((x == 0) if is_number(x) else x.is_zero() for x in self.c)

    def __add__(self, o):
        if isinstance(o, Quat):
            return Quat(*(a + b for a, b in zip(self.c, o.c)))
        if o == 0:
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Quat(*(-a for a in self.c))

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, Quat):
            return Quat(*(a * o for a in self.c))
        p0, p1, p2, p3 = self.c
        q0, q1, q2, q3 = o.c
        # (p0 + p)(q0 + q) = p0 q0 - p.q + p0 q + q0 p - p x q
        return Quat(
            p0 * q0 - p1 * q1 - p2 * q2 - p3 * q3,
            p0 * q1 + q0 * p1 - (p2 * q3 - p3 * q2),
            p0 * q2 + q0 * p2 - (p3 * q1 - p1 * q3),
            p0 * q3 + q0 * p3 - (p1 * q2 - p2 * q1),
        )

    def __rmul__(self, o):
        return Quat(*(o * a for a in self.c))

    def conj(self) -> "Quat":
        c0, c1, c2, c3 = self.c
        return Quat(c0, -c1, -c2, -c3)

    def norm2(self):
        return sum((a * a for a in self.c[1:]), self.c[0] * self.c[0])

    def re(self):
        return self.c[0]

    def im(self) -> "Quat":
        return Quat(_zero_like(self.c[0]), *self.c[1:])

    def inverse(self) -> "Quat":
        n = self.norm2()
        if (n == 0) if is_number(n) else n.is_zero():
            raise ZeroDivisionError("quaternion of zero norm is not invertible")
        inv = 1 / n if is_number(n) else RatFn.coerce(n).inverse()
        return self.conj() * inv

    def map(self, fn) -> "Quat":
        return Quat(*(fn(a) for a in self.c))

    def partial(self, i: int) -> "Quat":
        return Quat(*((mpq(0) if is_number(a) else a.partial(i)) for a in self.c))

    def __eq__(self, o):
        if isinstance(o, Quat):
            return all(a == b for a, b in zip(self.c, o.c))
        if is_number(o) and o == 0:
            return self.is_zero()
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return "Quat(" + ", ".join(str(a) for a in self.c) + ")"


def commutator(a: Quat, b: Quat) -> Quat:
    return a * b - b * a


def coordinate_quat(offset: int) -> Quat:
    """The quaternion x = sum x^a e_a (offset 0) or y (offset 4) over RatFn."""
    return Quat(*(RatFn(Poly.var(offset + a)) for a in range(4)))


# ---------------------------------------------------------------------------
# Linear maps on R^4 (4x4 rational matrices acting on e-basis coordinates)

# The Kahler forms omega_i written as antisymmetric matrices W with
# omega = sum_{a<b} W[a][b] dx^{ab}.
OMEGA_MATRICES = {
    1: {(0, 1): 1, (2, 3): 1},
    2: {(0, 2): 1, (1, 3): -1},
    3: {(0, 3): 1, (1, 2): 1},
}


def _omega_matrix(i: int):
    w = [[mpq(0)] * 4 for _ in range(4)]
    for (a, b), v in OMEGA_MATRICES[i].items():
        w[a][b] = mpq(v)
        w[b][a] = mpq(-v)
    return w


@lru_cache(maxsize=None)
def complex_structure(i: int):
    """I_i(v) = v contracted into the first slot of omega_i."""
    if i not in (1, 2, 3):
        raise ValueError("complex structures are indexed by 1, 2, 3")
    w = _omega_matrix(i)
    return tuple(tuple(w[a][b] for a in range(4)) for b in range(4))


def apply(m, v: Sequence):
    return linalg.matvec(m, v)


def right_mult_matrix(q: Quat):
    """Matrix of v -> v q."""
    cols = [(Quat.basis(a) * q).c for a in range(4)]
    return tuple(tuple(cols[a][b] for a in range(4)) for b in range(4))


def left_mult_matrix(q: Quat):
    """Matrix of v -> q v."""
    cols = [(q * Quat.basis(a)).c for a in range(4)]
    return tuple(tuple(cols[a][b] for a in range(4)) for b in range(4))


def complex_structure_apply(i: int, v: Sequence):
    return apply(complex_structure(i), v)


def fueter_operator(L):
    """L + I1 L I1 + I2 L I2 - I3 L I3."""
    I1, I2, I3 = (complex_structure(i) for i in (1, 2, 3))
    mm = linalg.matmul
    terms = [L, mm(mm(I1, L), I1), mm(mm(I2, L), I2), mm(mm(I3, L), I3)]
    signs = (1, 1, 1, -1)
    return tuple(
        tuple(sum((s * t[r][c] for s, t in zip(signs, terms)), mpq(0)) for c in range(4)) for r in range(4)
    )


def is_fueter(L) -> bool:
    return all(c == 0 for row in fueter_operator(L) for c in row)


def _unit(n, k):
    return tuple(mpq(int(j == k)) for j in range(n))


def fueter_nullspace():
    """Exact nullspace of the Fueter operator on the 16-dim space of 4x4 maps."""
    cols = []
    for k in range(16):
        E = tuple(tuple(mpq(int(4 * r + c == k)) for c in range(4)) for r in range(4))
        cols.append(linalg.flatten(fueter_operator(E)))
    rows = [[cols[k][i] for k in range(16)] for i in range(16)]
    return [_reshape(v) for v in linalg.nullspace(rows, 16)]


def _reshape(v):
    return tuple(tuple(v[4 * r + c] for c in range(4)) for r in range(4))


@lru_cache(maxsize=None)
def fueter_basis():
    """H_l, H_l I1, H_l I2: twelve maps spanning the Fueter space."""
    out = []
    for right in (None, 1, 2):
        for a in range(4):
            L = left_mult_matrix(Quat.basis(a))
            if right is not None:
                L = linalg.matmul(L, complex_structure(right))
            out.append(L)
    return tuple(out)
