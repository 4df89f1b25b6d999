"""Exact scalar tower: rationals, sparse polynomials, rational functions, jets.

Everything lives in the eight coordinates ``x0..x3, y0..y3`` of R^8 (index
0..7).  Forms on R^4 or R^7 simply use a subset of these variables.

``RatFn`` keeps its denominator as a product of "atoms" (primitive integer
polynomials with exponents).  That lets sums find a common denominator by
taking exponent-wise maxima, so no multivariate gcd is ever needed.
Equality is decided by cross-multiplication.

``Jet`` is a truncated Taylor expansion at a fixed rational point.  Jets are
what the pointwise sphere calculus differentiates.
"""

from __future__ import annotations

import contextvars
import itertools
from contextlib import contextmanager
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

import gmpy2
from gmpy2 import mpq, mpz

Rational = type(mpq())
NVARS = 8
VAR_NAMES = ("x0", "x1", "x2", "x3", "y0", "y1", "y2", "y3")

_ZERO = mpq(0)
_ONE = mpq(1)

_max_terms: contextvars.ContextVar[int] = contextvars.ContextVar("max_terms", default=250_000)


class PoleError(ZeroDivisionError):
    """A denominator vanishes at the requested evaluation point."""


class GuardrailError(RuntimeError):
    """A polynomial grew past the configured term budget."""


@contextmanager
def term_limit(n: int):
    """Temporarily change the maximum number of terms a product may have."""
    token = _max_terms.set(n)
    try:
        yield
    finally:
        _max_terms.reset(token)


def Q(num, den=1) -> Rational:
    """Shorthand constructor; accepts ints, strings like '3/5', or mpq."""
    return mpq(num, den) if den != 1 else mpq(num)


def is_number(c) -> bool:
    return isinstance(c, (int, Rational, type(mpz())))


def _grlex_key(e):
    return (sum(e), e)


def _monomial_str(e) -> str:
    parts = []
    for name, k in zip(VAR_NAMES, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


class Poly:
    """Sparse polynomial in x0..y3 with rational coefficients.

    ``terms`` maps exponent 8-tuples to nonzero ``mpq``.  Instances are
    treated as immutable.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        d = {}
        if terms:
            for e, c in terms.items():
                c = mpq(c)
                if c:
                    e = tuple(e)
                    if len(e) != NVARS:
                        raise ValueError("exponent vectors must have length 8")
                    d[e] = c
        self.terms = d
        self._hash = None

    @classmethod
    def _raw(cls, d: dict) -> "Poly":
        p = cls.__new__(cls)
        p.terms = d
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "Poly":
        c = mpq(c)
        return cls._raw({(0,) * NVARS: c} if c else {})

    @classmethod
    def var(cls, i: int) -> "Poly":
        e = [0] * NVARS
        e[i] = 1
        return cls._raw({tuple(e): _ONE})

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * NVARS in self.terms)

    def const_value(self) -> Rational:
        return self.terms.get((0,) * NVARS, _ZERO)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def variables(self) -> set[int]:
        out = set()
        for e in self.terms:
            out.update(i for i, k in enumerate(e) if k)
        return out

    def __len__(self):
        return len(self.terms)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(o):
        if isinstance(o, Poly):
            return o
        if is_number(o):
            return Poly.const(o)
        return NotImplemented

    def __add__(self, o):
        o = Poly._coerce(o)
        if o is NotImplemented:
            return o
        d = dict(self.terms)
        for e, c in o.terms.items():
            v = d.get(e, _ZERO) + c
            if v:
                d[e] = v
            else:
                d.pop(e, None)
        return Poly._raw(d)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        o = Poly._coerce(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def scale(self, c) -> "Poly":
        c = mpq(c)
        if not c:
            return Poly._raw({})
        return Poly._raw({e: v * c for e, v in self.terms.items()})

    def __mul__(self, o):
        if is_number(o):
            return self.scale(o)
        o = Poly._coerce(o)
        if o is NotImplemented:
            return o
        a, b = self.terms, o.terms
        if len(a) < len(b):
            a, b = b, a
        d: dict = {}
        get = d.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(i + j for i, j in zip(ea, eb))
                d[e] = get(e, _ZERO) + ca * cb
        d = {e: c for e, c in d.items() if c}
        if len(d) > _max_terms.get():
            raise GuardrailError(f"polynomial product has {len(d)} terms")
        return Poly._raw(d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out, base = Poly.const(1), self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def partial(self, i: int) -> "Poly":
        d = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1:]
                d[e2] = c * k
        return Poly._raw(d)

    # -- structure --------------------------------------------------------
    def leading(self):
        """Leading (exponent, coefficient) in graded-lex order."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def primitive(self) -> tuple[Rational, "Poly"]:
        """Split as content * primitive, primitive with integer coprime
        coefficients and positive leading coefficient."""
        if not self.terms:
            return _ZERO, self
        den = mpz(1)
        for c in self.terms.values():
            den = gmpy2.lcm(den, c.denominator)
        num = mpz(0)
        for c in self.terms.values():
            num = gmpy2.gcd(num, c.numerator * (den // c.denominator))
        content = mpq(num, den)
        if self.leading()[1] < 0:
            content = -content
        return content, Poly._raw({e: c / content for e, c in self.terms.items()})

    def divexact(self, d: "Poly") -> "Poly | None":
        """Quotient if ``d`` divides ``self`` exactly, else None."""
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        ld, cd = d.leading()
        rem = dict(self.terms)
        q: dict = {}
        dterms = list(d.terms.items())
        while rem:
            lr = max(rem, key=_grlex_key)
            diff = tuple(i - j for i, j in zip(lr, ld))
            if min(diff) < 0:
                return None
            c = rem[lr] / cd
            q[diff] = c
            for e, v in dterms:
                e2 = tuple(i + j for i, j in zip(e, diff))
                nv = rem.get(e2, _ZERO) - c * v
                if nv:
                    rem[e2] = nv
                else:
                    rem.pop(e2, None)
        return Poly._raw(q)

    # -- evaluation -------------------------------------------------------
    def eval(self, point: Sequence) -> Rational:
        powers = _power_table(point, self.terms)
        total = _ZERO
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v = v * powers[i][k]
            total += v
        return total

    def taylor(self, point: Sequence, order: int) -> "Jet":
        """Truncated Taylor expansion at ``point``."""
        table = _jet_table(order)
        index = table.index
        coeffs = [_ZERO] * len(table.monomials)
        powers = _power_table(point, self.terms)
        for e, c in self.terms.items():
            support = [i for i, k in enumerate(e) if k]
            for deg in range(min(order, sum(e)) + 1):
                for combo in itertools.combinations_with_replacement(support, deg):
                    alpha = [0] * NVARS
                    for i in combo:
                        alpha[i] += 1
                    v = c
                    for i in support:
                        a, k = alpha[i], e[i]
                        if a > k:
                            break
                        if a:
                            v = v * comb(k, a)
                        if k - a:
                            v = v * powers[i][k - a]
                    else:
                        coeffs[index[tuple(alpha)]] += v
        return Jet(order, coeffs)

    def compose(self, subs: Sequence["RatFn"]) -> "RatFn":
        """Substitute variable i by ``subs[i]`` (RatFn, Poly or number)."""
        subs = [RatFn.coerce(s) for s in subs]
        total = RatFn.zero()
        cache: dict = {}

        def pw(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = subs[i] if k == 1 else pw(i, k - 1) * subs[i]
            return cache[key]

        for e, c in sorted(self.terms.items(), key=lambda t: _grlex_key(t[0])):
            term = RatFn.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            total = total + term
        return total.reduced()

    # -- comparison / display ----------------------------------------------
    def __eq__(self, o):
        if isinstance(o, Poly):
            return self.terms == o.terms
        if is_number(o):
            return self.terms == Poly.const(o).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = _monomial_str(e)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            out.append((sign, body))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Poly({self})"


def _power_table(point, terms):
    maxdeg = [0] * NVARS
    for e in terms:
        for i, k in enumerate(e):
            if k > maxdeg[i]:
                maxdeg[i] = k
    table = []
    for i in range(NVARS):
        v = mpq(point[i]) if i < len(point) else _ZERO
        row = [_ONE]
        for _ in range(maxdeg[i]):
            row.append(row[-1] * v)
        table.append(row)
    return table


def coordinate(i: int) -> "RatFn":
    return RatFn(Poly.var(i))


def sum_squares(indices: Iterable[int]) -> Poly:
    p = Poly()
    for i in indices:
        v = Poly.var(i)
        p = p + v * v
    return p


NORM_X = sum_squares(range(4))
NORM_Y = sum_squares(range(4, 8))
NORM_XY = NORM_X + NORM_Y
ONE_PLUS_NORM_X = NORM_X + 1
# Denominator factors that come up repeatedly; new denominators are split
# against these before being stored.
COMMON_ATOMS = (NORM_X, NORM_Y, NORM_XY, ONE_PLUS_NORM_X)


def _split_atoms(p: Poly, known: Iterable[Poly]) -> tuple[Rational, dict]:
    """Write p = c * prod(atom^k) using known atoms where they divide."""
    c, prim = p.primitive()
    if not c:
        raise ZeroDivisionError("zero denominator")
    factors: dict = {}
    if prim.is_const():
        return c, factors
    for atom in known:
        if prim.is_const():
            break
        if atom.degree() > prim.degree():
            continue
        while True:
            qt = prim.divexact(atom)
            if qt is None:
                break
            factors[atom] = factors.get(atom, 0) + 1
            prim = qt
            if prim.is_const():
                break
    if not prim.is_const():
        c2, prim = prim.primitive()
        c = c * c2
        factors[prim] = factors.get(prim, 0) + 1
    else:
        c = c * prim.const_value()
    return c, factors


class RatFn:
    """Rational function num / prod(atom^k).

    ``atoms`` is a tuple of (primitive Poly, exponent) pairs in a canonical
    order.  ``den`` returns the expanded denominator when a single Poly is
    wanted.
    """

    __slots__ = ("num", "atoms")

    def __init__(self, num, den=None):
        num = Poly._coerce(num) if not isinstance(num, Poly) else num
        if den is None:
            self.num, self.atoms = num, ()
            return
        den = Poly._coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("division-by-zero function")
        c, factors = _split_atoms(den, COMMON_ATOMS)
        self.num = num.scale(1 / c)
        self.atoms = _canon(factors)

    @classmethod
    def _raw(cls, num: Poly, atoms: tuple) -> "RatFn":
        r = cls.__new__(cls)
        r.num, r.atoms = num, atoms
        return r

    @classmethod
    def const(cls, c) -> "RatFn":
        return cls._raw(Poly.const(c), ())

    @classmethod
    def zero(cls) -> "RatFn":
        return cls._raw(Poly(), ())

    @classmethod
    def coerce(cls, o) -> "RatFn":
        if isinstance(o, RatFn):
            return o
        if isinstance(o, Poly):
            return cls._raw(o, ())
        if is_number(o):
            return cls.const(o)
        raise TypeError(f"cannot coerce {type(o).__name__} to RatFn")

    @property
    def den(self) -> Poly:
        out = Poly.const(1)
        for a, k in self.atoms:
            out = out * a**k
        return out

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return not self.atoms

    # -- arithmetic -------------------------------------------------------
    def __add__(self, o):
        try:
            o = RatFn.coerce(o)
        except TypeError:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.atoms == o.atoms:
            return RatFn._raw(self.num + o.num, self.atoms)
        da, db = dict(self.atoms), dict(o.atoms)
        lcm = {a: max(da.get(a, 0), db.get(a, 0)) for a in set(da) | set(db)}
        na = self.num * _atom_product({a: k - da.get(a, 0) for a, k in lcm.items()})
        nb = o.num * _atom_product({a: k - db.get(a, 0) for a, k in lcm.items()})
        return RatFn._raw(na + nb, _canon(lcm))

    __radd__ = __add__

    def __neg__(self):
        return RatFn._raw(-self.num, self.atoms)

    def __sub__(self, o):
        try:
            o = RatFn.coerce(o)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if is_number(o):
            return RatFn._raw(self.num.scale(o), self.atoms) if o else RatFn.zero()
        try:
            o = RatFn.coerce(o)
        except TypeError:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return RatFn.zero()
        d = dict(self.atoms)
        for a, k in o.atoms:
            d[a] = d.get(a, 0) + k
        return RatFn._raw(self.num * o.num, _canon(d))

    __rmul__ = __mul__

    def inverse(self) -> "RatFn":
        if self.num.is_zero():
            raise ZeroDivisionError("division-by-zero function")
        known = tuple(a for a, _ in self.atoms) + COMMON_ATOMS
        c, factors = _split_atoms(self.num, known)
        num = _atom_product(dict(self.atoms)).scale(1 / c)
        return RatFn._raw(num, _canon(factors)).reduced()

    def __truediv__(self, o):
        if is_number(o):
            if not o:
                raise ZeroDivisionError("division-by-zero function")
            return RatFn._raw(self.num.scale(1 / mpq(o)), self.atoms)
        return self * RatFn.coerce(o).inverse()

    def __rtruediv__(self, o):
        return RatFn.coerce(o) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFn._raw(self.num**n, _canon({a: k * n for a, k in self.atoms}))

    def partial(self, i: int) -> "RatFn":
        dn = self.num.partial(i)
        moving = [(a, k, a.partial(i)) for a, k in self.atoms]
        moving = [(a, k, da) for a, k, da in moving if not da.is_zero()]
        if not moving:
            return RatFn._raw(dn, self.atoms)
        prod_all = _atom_product({a: 1 for a, _, _ in moving})
        num = dn * prod_all
        for a, k, da in moving:
            others = _atom_product({b: 1 for b, _, _ in moving if b is not a})
            num = num - self.num * da * others * k
        d = dict(self.atoms)
        for a, _, _ in moving:
            d[a] += 1
        return RatFn._raw(num, _canon(d))

    def reduced(self) -> "RatFn":
        """Cancel denominator atoms that divide the numerator."""
        if not self.atoms:
            return self
        if self.num.is_zero():
            return RatFn.zero()
        num = self.num
        d = dict(self.atoms)
        for a in list(d):
            while d[a]:
                qt = num.divexact(a)
                if qt is None:
                    break
                num = qt
                d[a] -= 1
        return RatFn._raw(num, _canon(d))

    def compose(self, subs: Sequence) -> "RatFn":
        out = self.num.compose(subs)
        for a, k in self.atoms:
            ca = a.compose(subs)
            if ca.is_zero():
                raise ZeroDivisionError("substitution makes a denominator vanish")
            out = out / ca**k
        return out.reduced()

    # -- evaluation -------------------------------------------------------
    def eval(self, point: Sequence) -> Rational:
        den = _ONE
        for a, k in self.atoms:
            v = a.eval(point)
            if not v:
                r = self.reduced()
                if r.atoms != self.atoms:
                    return r.eval(point)
                raise PoleError(f"denominator {a} vanishes at {tuple(str(c) for c in point)}")
            den *= v**k
        return self.num.eval(point) / den

    def jet(self, point: Sequence, order: int) -> "Jet":
        out = self.num.taylor(point, order)
        for a, k in self.atoms:
            ja = a.taylor(point, order)
            if not ja.value:
                raise PoleError(f"denominator {a} vanishes at the expansion point")
            inv = ja.reciprocal()
            for _ in range(k):
                out = out * inv
        return out

    # -- comparison / display ----------------------------------------------
    def __eq__(self, o):
        try:
            o = RatFn.coerce(o)
        except TypeError:
            return NotImplemented
        if self.atoms == o.atoms:
            return self.num == o.num
        da, db = dict(self.atoms), dict(o.atoms)
        lcm = {a: max(da.get(a, 0), db.get(a, 0)) for a in set(da) | set(db)}
        na = self.num * _atom_product({a: k - da.get(a, 0) for a, k in lcm.items()})
        nb = o.num * _atom_product({a: k - db.get(a, 0) for a, k in lcm.items()})
        return na == nb

    __hash__ = None

    def __str__(self):
        if not self.atoms:
            return str(self.num)
        den = "*".join(f"({a})" + (f"^{k}" if k > 1 else "") for a, k in self.atoms)
        return f"({self.num})/{den}"

    def __repr__(self):
        return f"RatFn({self})"


def _canon(factors: Mapping) -> tuple:
    items = [(a, k) for a, k in factors.items() if k]
    items.sort(key=lambda t: str(t[0]))
    return tuple(items)


def _atom_product(factors: Mapping) -> Poly:
    out = Poly.const(1)
    for a, k in sorted(factors.items(), key=lambda t: str(t[0])):
        if k:
            out = out * a**k
    return out


# ---------------------------------------------------------------------------
# Jets


class _JetTable:
    __slots__ = ("order", "monomials", "index", "degrees", "mul_rows", "partial_maps")

    def __init__(self, order: int):
        monos = []
        for deg in range(order + 1):
            for combo in itertools.combinations_with_replacement(range(NVARS), deg):
                e = [0] * NVARS
                for i in combo:
                    e[i] += 1
                monos.append(tuple(e))
        self.order = order
        self.monomials = monos
        self.index = {m: n for n, m in enumerate(monos)}
        self.degrees = [sum(m) for m in monos]
        rows = []
        for a, ma in enumerate(monos):
            row = []
            for b, mb in enumerate(monos):
                if self.degrees[a] + self.degrees[b] <= order:
                    row.append((b, self.index[tuple(i + j for i, j in zip(ma, mb))]))
            rows.append(row)
        self.mul_rows = rows
        self.partial_maps = None


@lru_cache(maxsize=None)
def _jet_table(order: int) -> _JetTable:
    return _JetTable(order)


@lru_cache(maxsize=None)
def _partial_map(order: int, var: int):
    """(source index, target index in order-1 table, factor) triples."""
    src, dst = _jet_table(order), _jet_table(order - 1)
    out = []
    for n, m in enumerate(src.monomials):
        k = m[var]
        if k:
            t = m[:var] + (k - 1,) + m[var + 1:]
            out.append((n, dst.index[t], k))
    return tuple(out)


class Jet:
    """Truncated Taylor series sum c_alpha h^alpha with |alpha| <= order.

    The expansion point is implicit; only jets built at the same point may
    be combined.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence):
        self.order = order
        self.coeffs = list(coeffs)

    @classmethod
    def const(cls, c, order: int) -> "Jet":
        coeffs = [_ZERO] * len(_jet_table(order).monomials)
        coeffs[0] = mpq(c)
        return cls(order, coeffs)

    @classmethod
    def coordinate(cls, i: int, value, order: int) -> "Jet":
        j = cls.const(value, order)
        if order >= 1:
            e = [0] * NVARS
            e[i] = 1
            j.coeffs[_jet_table(order).index[tuple(e)]] = _ONE
        return j

    @property
    def value(self) -> Rational:
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, order: int) -> "Jet":
        if order >= self.order:
            return self
        return Jet(order, self.coeffs[: len(_jet_table(order).monomials)])

    def _align(self, o):
        if isinstance(o, Jet):
            n = min(self.order, o.order)
            return self.truncate(n), o.truncate(n)
        if is_number(o):
            return self, Jet.const(o, self.order)
        return None, None

    def __add__(self, o):
        a, b = self._align(o)
        if a is None:
            return NotImplemented
        return Jet(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.order, [-x for x in self.coeffs])

    def __sub__(self, o):
        a, b = self._align(o)
        if a is None:
            return NotImplemented
        return Jet(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if is_number(o):
            c = mpq(o)
            return Jet(self.order, [x * c for x in self.coeffs])
        a, b = self._align(o)
        if a is None:
            return NotImplemented
        table = _jet_table(a.order)
        out = [_ZERO] * len(a.coeffs)
        bc = b.coeffs
        for i, ai in enumerate(a.coeffs):
            if ai:
                for j, k in table.mul_rows[i]:
                    bj = bc[j]
                    if bj:
                        out[k] += ai * bj
        return Jet(a.order, out)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        c0 = self.value
        if not c0:
            raise PoleError("reciprocal of a jet vanishing at its base point")
        inv0 = 1 / c0
        t = self * (-inv0)
        t.coeffs[0] = _ZERO
        out = Jet.const(1, self.order)
        power = Jet.const(1, self.order)
        for _ in range(self.order):
            power = power * t
            out = out + power
        return out * inv0

    def __truediv__(self, o):
        if is_number(o):
            return self * (1 / mpq(o))
        return self * o.reciprocal()

    def __rtruediv__(self, o):
        return self.reciprocal() * o

    def partial(self, var: int) -> "Jet":
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        out = [_ZERO] * len(_jet_table(self.order - 1).monomials)
        c = self.coeffs
        for n, m, k in _partial_map(self.order, var):
            if c[n]:
                out[m] += k * c[n]
        return Jet(self.order - 1, out)

    def __eq__(self, o):
        a, b = self._align(o)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    __hash__ = None

    def __repr__(self):
        return f"Jet(order={self.order}, value={self.value})"


def value_of(c):
    """Collapse a Jet to its base value; leave other scalars alone."""
    return c.value if isinstance(c, Jet) else c
