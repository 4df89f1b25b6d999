"""Differential forms on R^n with coefficients in any ring.

A ``Form`` stores its components on increasing multi-indices.  Internally a
multi-index is a bitmask over the n slots.  Coefficients may be numbers,
``Poly``/``RatFn``, ``Jet`` or ``Quat`` over any of these; the engine only
uses ``+``, ``*``, negation, ``partial`` and ``is_zero``.  The coefficient of
the left factor is always written first in products, so algebra-valued
wedges keep their order (for an Im H-valued 1-form, A^A is not zero).

Slot i of a form differentiates with respect to coordinate ``chart[i]``;
the default chart of R^8 is x0..x3, y0..y3.

Contraction conventions:

* ``v ⌟ a`` (``interior_first``) inserts v into the first slot and
  ``a ⌞ v`` (``interior_last``) into the last, so dx^{01} ⌞ e1 = dx^0 and
  dx^{01} ⌞ e0 = -dx^1.
* ``contract(a, b)`` (form ⌞ form) sums over increasing multi-indices of b,
  i.e. index contraction weighted by 1/q!.  Thus dx^{01} ⌞ dx^{01} = 1 and
  (phi ⌞ b)_k = 1/2 phi_kij b_ij.  See ``CONTRACTION_WEIGHTS``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

import gmpy2
from gmpy2 import mpq

from . import linalg
from .exactmath import RatFn, is_number

CHART_R8 = tuple(range(8))
CHART_R4 = (0, 1, 2, 3)
CHART_R7 = (1, 2, 3, 4, 5, 6, 7)

# Weight applied when contracting a degree-q form into another: one term per
# increasing multi-index, equivalently 1/q! times the full index sum.
CONTRACTION_WEIGHTS = {1: 1, 2: Fraction(1, 2), 3: Fraction(1, 6), 4: Fraction(1, 24)}


class UnsupportedMetric(ValueError):
    """The metric's volume factor sqrt(det g) is not rational."""


def nonzero(c) -> bool:
    if is_number(c):
        return c != 0
    return not c.is_zero()


def _mask(idx: Iterable[int]) -> int:
    m = 0
    for i in idx:
        m |= 1 << i
    return m


@lru_cache(maxsize=None)
def _bits(mask: int) -> tuple:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@lru_cache(maxsize=None)
def _merge_sign(a: int, b: int) -> int:
    """Sign of the shuffle putting (bits of a, bits of b) in increasing order."""
    inv = 0
    for j in _bits(b):
        inv += (a >> (j + 1)).bit_count()
    return -1 if inv & 1 else 1


def _sort_sign(idx: Sequence[int]) -> tuple[int, int] | None:
    """(sign, mask) of an index tuple, or None if an index repeats."""
    if len(set(idx)) != len(idx):
        return None
    inv = sum(1 for s in range(len(idx)) for t in range(s + 1, len(idx)) if idx[s] > idx[t])
    return (-1 if inv & 1 else 1), _mask(idx)


def _mul(a, b):
    return a * b


class Form:
    __slots__ = ("n", "k", "terms", "chart")

    def __init__(self, n: int, k: int, terms: Mapping | None = None, chart: Sequence[int] | None = None):
        """``terms`` maps index tuples (any order) to coefficients."""
        self.n, self.k = n, k
        self.chart = tuple(chart) if chart is not None else _default_chart(n)
        d: dict = {}
        for idx, c in (terms or {}).items():
            if len(idx) != k or any(not 0 <= i < n for i in idx):
                raise ValueError(f"bad multi-index {idx} for a {k}-form on R^{n}")
            ss = _sort_sign(idx)
            if ss is None:
                continue
            s, m = ss
            c = c if s > 0 else -c
            d[m] = d[m] + c if m in d else c
        self.terms = {m: c for m, c in d.items() if nonzero(c)}

    @classmethod
    def _raw(cls, n, k, terms, chart):
        f = cls.__new__(cls)
        f.n, f.k, f.terms, f.chart = n, k, terms, chart
        return f

    @classmethod
    def zero(cls, n: int, k: int, chart=None) -> "Form":
        return cls(n, k, {}, chart)

    @classmethod
    def basis(cls, n: int, idx: Sequence[int], coeff=1, chart=None) -> "Form":
        return cls(n, len(idx), {tuple(idx): mpq(coeff) if is_number(coeff) else coeff}, chart)

    @classmethod
    def scalar(cls, n: int, f, chart=None) -> "Form":
        return cls(n, 0, {(): f}, chart)

    @classmethod
    def one_form(cls, comps: Sequence, chart=None) -> "Form":
        return cls(len(comps), 1, {(i,): c for i, c in enumerate(comps)}, chart)

    @classmethod
    def from_matrix(cls, m, chart=None) -> "Form":
        """2-form sum_{i<j} m[i][j] dq^{ij} (so the form evaluates to m on (e_i, e_j))."""
        n = len(m)
        return cls(n, 2, {(i, j): m[i][j] for i in range(n) for j in range(i + 1, n)}, chart)

    def to_matrix(self, zero=mpq(0)):
        if self.k != 2:
            raise ValueError("only 2-forms have a matrix")
        m = [[zero] * self.n for _ in range(self.n)]
        for mask, c in self.terms.items():
            i, j = _bits(mask)
            m[i][j] = c
            m[j][i] = -c
        return m

    # -- access -------------------------------------------------------------
    def items(self):
        """(index tuple, coefficient) pairs in increasing index order."""
        return sorted(((_bits(m), c) for m, c in self.terms.items()), key=lambda t: (len(t[0]), t[0]))

    def __getitem__(self, idx):
        ss = _sort_sign(tuple(idx))
        if ss is None:
            return mpq(0)
        s, m = ss
        c = self.terms.get(m)
        if c is None:
            return mpq(0)
        return c if s > 0 else -c

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, o: "Form"):
        if not isinstance(o, Form):
            raise TypeError("expected a Form")
        if o.n != self.n:
            raise ValueError(f"dimension mismatch {self.n} vs {o.n}")

    # -- linear structure ---------------------------------------------------
    def __add__(self, o):
        if isinstance(o, int) and o == 0:
            return self
        self._check(o)
        if o.k != self.k:
            raise ValueError(f"cannot add a {self.k}-form and a {o.k}-form")
        d = dict(self.terms)
        for m, c in o.terms.items():
            if m in d:
                v = d[m] + c
                if nonzero(v):
                    d[m] = v
                else:
                    del d[m]
            else:
                d[m] = c
        return Form._raw(self.n, self.k, d, self.chart)

    __radd__ = __add__

    def __neg__(self):
        return Form._raw(self.n, self.k, {m: -c for m, c in self.terms.items()}, self.chart)

    def __sub__(self, o):
        return self + (-o)

    def map_coeffs(self, fn: Callable) -> "Form":
        d = {}
        for m, c in self.terms.items():
            v = fn(c)
            if nonzero(v):
                d[m] = v
        return Form._raw(self.n, self.k, d, self.chart)

    def lmul(self, s) -> "Form":
        """Multiply every coefficient by s on the left."""
        return self.map_coeffs(lambda c: s * c)

    def rmul(self, s) -> "Form":
        return self.map_coeffs(lambda c: c * s)

    def __mul__(self, s):
        if isinstance(s, Form):
            return NotImplemented
        return self.rmul(s)

    def __rmul__(self, s):
        return self.lmul(s)

    def with_chart(self, chart) -> "Form":
        return Form._raw(self.n, self.k, self.terms, tuple(chart))

    # -- exterior algebra -----------------------------------------------------
    def wedge(self, o: "Form", product: Callable = _mul) -> "Form":
        self._check(o)
        k = self.k + o.k
        d: dict = {}
        if k <= self.n:
            for ma, ca in self.terms.items():
                for mb, cb in o.terms.items():
                    if ma & mb:
                        continue
                    v = product(ca, cb)
                    if _merge_sign(ma, mb) < 0:
                        v = -v
                    m = ma | mb
                    d[m] = d[m] + v if m in d else v
        return Form._raw(self.n, k, {m: c for m, c in d.items() if nonzero(c)}, self.chart)

    def __xor__(self, o):
        return self.wedge(o)

    def d(self) -> "Form":
        out: dict = {}
        for m, c in self.terms.items():
            if is_number(c):
                continue
            for i in range(self.n):
                bit = 1 << i
                if m & bit:
                    continue
                dc = c.partial(self.chart[i])
                if not nonzero(dc):
                    continue
                if (m & (bit - 1)).bit_count() & 1:
                    dc = -dc
                t = m | bit
                out[t] = out[t] + dc if t in out else dc
        return Form._raw(self.n, self.k + 1, {t: c for t, c in out.items() if nonzero(c)}, self.chart)

    def partial(self, var: int) -> "Form":
        """Coefficient-wise partial derivative in coordinate ``var``."""
        return self.map_coeffs(lambda c: mpq(0) if is_number(c) else c.partial(var))

    def interior_first(self, v: Sequence) -> "Form":
        """v ⌟ self: insert v into the first slot."""
        return self._interior(v, last=False)

    def interior_last(self, v: Sequence) -> "Form":
        """self ⌞ v: insert v into the last slot."""
        return self._interior(v, last=True)

    def _interior(self, v, last):
        if self.k == 0:
            raise ValueError("cannot contract a vector into a 0-form")
        if len(v) != self.n:
            raise ValueError("vector length does not match the form's dimension")
        out: dict = {}
        for m, c in self.terms.items():
            idx = _bits(m)
            for t, i in enumerate(idx):
                vi = v[i]
                if not nonzero(vi):
                    continue
                pos = (self.k - 1 - t) if last else t
                val = vi * c
                if pos & 1:
                    val = -val
                r = m & ~(1 << i)
                out[r] = out[r] + val if r in out else val
        return Form._raw(self.n, self.k - 1, {r: c for r, c in out.items() if nonzero(c)}, self.chart)

    def evaluate(self, vectors: Sequence[Sequence]):
        """self(v_1, ..., v_k)."""
        if len(vectors) != self.k:
            raise ValueError("need exactly k vectors")
        f = self
        for v in vectors:
            f = f.interior_first(v)
        return f.terms.get(0, mpq(0))

    # -- evaluation of coefficients --------------------------------------------
    def at(self, point: Sequence) -> "Form":
        """Evaluate coefficients at a point of R^8."""
        return self.map_coeffs(lambda c: _eval_coeff(c, point))

    def jet(self, point: Sequence, order: int) -> "Form":
        return self.map_coeffs(lambda c: _jet_coeff(c, point, order))

    # -- comparison / display ----------------------------------------------------
    def __eq__(self, o):
        if isinstance(o, int) and o == 0:
            return self.is_zero()
        if not isinstance(o, Form):
            return NotImplemented
        return self.n == o.n and self.k == o.k and (self - o).is_zero()

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for idx, c in self.items():
            name = "d" + "".join(str(i) for i in idx) if idx else "1"
            parts.append(f"({c})*{name}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Form(n={self.n}, k={self.k}, {self})"


def _default_chart(n):
    return {8: CHART_R8, 4: CHART_R4, 7: CHART_R7}.get(n, tuple(range(n)))


def _eval_coeff(c, point):
    if is_number(c):
        return c
    if hasattr(c, "eval"):
        return c.eval(point)
    return c.map(lambda s: _eval_coeff(s, point))


def _jet_coeff(c, point, order):
    from .exactmath import Jet

    if is_number(c):
        return Jet.const(c, order)
    if hasattr(c, "jet"):
        return c.jet(point, order)
    return c.map(lambda s: _jet_coeff(s, point, order))


def wedge(*forms: Form) -> Form:
    out = forms[0]
    for f in forms[1:]:
        out = out.wedge(f)
    return out


def bracket_wedge(a: Form, b: Form) -> Form:
    """[a ∧ b]: wedge with the commutator product."""
    return a.wedge(b, product=lambda x, y: x * y - y * x)


def vector_field(comps: Sequence) -> tuple:
    return tuple(comps)


# ---------------------------------------------------------------------------
# Metrics, star, contraction


@dataclass(frozen=True)
class MetricSpec:
    """Constant rational metric on R^n given by its Gram matrix."""

    gram: tuple
    name: str = "euclidean"

    @classmethod
    def euclidean(cls, n: int) -> "MetricSpec":
        return cls(linalg.identity(n))

    @classmethod
    def diagonal(cls, diag: Sequence, name: str = "diagonal") -> "MetricSpec":
        n = len(diag)
        return cls(tuple(tuple(mpq(diag[i]) if i == j else mpq(0) for j in range(n)) for i in range(n)), name)

    @property
    def n(self) -> int:
        return len(self.gram)

    def is_diagonal(self) -> bool:
        return all(self.gram[i][j] == 0 for i in range(self.n) for j in range(self.n) if i != j)

    @property
    def inverse(self):
        return _inverse(self.gram)

    @property
    def det(self):
        return linalg.det(self.gram)

    def volume_factor(self) -> mpq:
        """sqrt(det g), which must be rational."""
        return rational_sqrt(self.det)

    def inner(self, u: Sequence, v: Sequence):
        return sum((u[i] * self.gram[i][j] * v[j] for i in range(self.n) for j in range(self.n) if self.gram[i][j]), mpq(0))


@lru_cache(maxsize=64)
def _inverse(gram):
    n = len(gram)
    cols = []
    for j in range(n):
        e = [mpq(int(i == j)) for i in range(n)]
        cols.append(linalg.solve([list(col) for col in zip(*gram)], e))
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def rational_sqrt(q) -> mpq:
    q = mpq(q)
    if q < 0:
        raise UnsupportedMetric("negative determinant")
    rn, en = gmpy2.iroot(q.numerator, 2)
    rd, ed = gmpy2.iroot(q.denominator, 2)
    if not (en and ed):
        raise UnsupportedMetric(f"sqrt({q}) is irrational")
    return mpq(rn, rd)


def raise_indices(b: Form, metric: MetricSpec | None) -> dict:
    """Components b^J (mask -> coefficient) with indices raised by g^{-1}."""
    if metric is None or metric.gram == linalg.identity(b.n):
        return dict(b.terms)
    ginv = metric.inverse
    if metric.is_diagonal():
        out = {}
        for m, c in b.terms.items():
            s = mpq(1)
            for i in _bits(m):
                s *= ginv[i][i]
            out[m] = s * c
        return out
    out: dict = {}
    for J in combinations(range(b.n), b.k):
        acc = None
        for m, c in b.terms.items():
            K = _bits(m)
            minor = linalg.det([[ginv[j][kk] for kk in K] for j in J]) if J else mpq(1)
            if minor:
                v = minor * c
                acc = v if acc is None else acc + v
        if acc is not None and nonzero(acc):
            out[_mask(J)] = acc
    return out


def contract(a: Form, b: Form, metric: MetricSpec | None = None, product: Callable = _mul) -> Form:
    """a ⌞ b: feed b (raised by the metric) into the last slots of a."""
    a._check(b)
    if b.k > a.k:
        raise ValueError("cannot contract a higher-degree form into a lower one")
    braised = raise_indices(b, metric)
    out: dict = {}
    for ma, ca in a.terms.items():
        for mb, cb in braised.items():
            if ma & mb != mb:
                continue
            rest = ma & ~mb
            v = product(ca, cb)
            if _merge_sign(rest, mb) < 0:
                v = -v
            out[rest] = out[rest] + v if rest in out else v
    return Form._raw(a.n, a.k - b.k, {m: c for m, c in out.items() if nonzero(c)}, a.chart)


def contract_first(b: Form, a: Form, metric: MetricSpec | None = None, product: Callable = _mul) -> Form:
    """b ⌟ a: feed b (raised) into the first slots of a."""
    a._check(b)
    braised = raise_indices(b, metric)
    out: dict = {}
    for ma, ca in a.terms.items():
        for mb, cb in braised.items():
            if ma & mb != mb:
                continue
            rest = ma & ~mb
            v = product(cb, ca)
            if _merge_sign(mb, rest) < 0:
                v = -v
            out[rest] = out[rest] + v if rest in out else v
    return Form._raw(a.n, a.k - b.k, {m: c for m, c in out.items() if nonzero(c)}, a.chart)


def hodge_star(a: Form, metric: MetricSpec | None = None, orientation: int = 1, volume_factor=None) -> Form:
    """*a, defined by b ∧ *a = g(b, a) vol_g with vol_g = orientation * sqrt(det g) dq^{0..n-1}.

    ``volume_factor`` overrides sqrt(det g) when the caller already knows it.
    """
    n = a.n
    full = (1 << n) - 1
    vf = mpq(1) if metric is None else (volume_factor if volume_factor is not None else metric.volume_factor())
    vf = vf * orientation
    out = {}
    for m, c in raise_indices(a, metric).items():
        comp = full & ~m
        v = c * vf
        if _merge_sign(m, comp) < 0:
            v = -v
        out[comp] = v
    return Form._raw(n, n - a.k, {m: c for m, c in out.items() if nonzero(c)}, a.chart)


# ---------------------------------------------------------------------------
# Pullbacks


def _pull(form: Form, images: Sequence[Form], n_src: int, chart_src, coeff_map: Callable) -> Form:
    """Replace dq^i by images[i] and coefficients by coeff_map(c)."""
    memo: dict = {0: Form.scalar(n_src, mpq(1), chart_src)}

    def basis_image(mask):
        if mask not in memo:
            low = mask & -mask
            i = low.bit_length() - 1
            memo[mask] = images[i].wedge(basis_image(mask & ~low))
        return memo[mask]

    acc: dict = {}
    for m, c in form.terms.items():
        img = basis_image(m)
        if img.is_zero():
            continue
        cc = coeff_map(c)
        if not nonzero(cc):
            continue
        for t, v in img.terms.items():
            w = v * cc
            acc[t] = acc[t] + w if t in acc else w
    return Form._raw(n_src, form.k, {t: c for t, c in acc.items() if nonzero(c)}, chart_src)


def pullback_linear(form: Form, matrix: Sequence[Sequence], chart_src=None) -> Form:
    """Pull back along the linear map with the given (n_target x n_src) matrix.

    dq^i -> sum_j matrix[i][j] dq^j; coefficients are left untouched, so this
    is the right tool for pointwise restriction to a tangent basis.
    """
    n_src = len(matrix[0])
    chart_src = tuple(chart_src) if chart_src is not None else _default_chart(n_src)
    images = [Form(n_src, 1, {(j,): matrix[i][j] for j in range(n_src)}, chart_src) for i in range(form.n)]
    return _pull(form, images, n_src, chart_src, lambda c: c)


def restrict(form: Form, basis: Sequence[Sequence]) -> Form:
    """Pull back to the span of ``basis`` (vectors in R^n), as a form on R^len(basis)."""
    m = [[basis[a][i] for a in range(len(basis))] for i in range(form.n)]
    return pullback_linear(form, m, tuple(range(len(basis))))


def pullback(form: Form, mapping: Sequence, chart_src=CHART_R8) -> Form:
    """Pull back along a rational map.

    ``mapping[i]`` is the RatFn expression (in the source coordinates) of the
    target coordinate ``form.chart[i]``.
    """
    chart_src = tuple(chart_src)
    n_src = len(chart_src)
    mapping = [RatFn.coerce(f) for f in mapping]
    subs: list = [RatFn.zero()] * 8
    for i, var in enumerate(form.chart):
        subs[var] = mapping[i]
    images = [
        Form(n_src, 1, {(j,): mapping[i].partial(chart_src[j]) for j in range(n_src)}, chart_src)
        for i in range(form.n)
    ]

    def compose(c):
        if is_number(c):
            return c
        if isinstance(c, RatFn):
            return c.compose(subs)
        return c.map(compose)

    return _pull(form, images, n_src, chart_src, compose)
