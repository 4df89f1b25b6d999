"""Exact linear algebra over QQ (thin layer over sympy's DomainMatrix)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from gmpy2 import mpq
from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def _dm(rows: Sequence[Sequence], ncols: int | None = None) -> DomainMatrix:
    rows = [[mpq(c) for c in r] for r in rows]
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    return DomainMatrix(rows, (len(rows), n), QQ)


def rank(rows: Sequence[Sequence]) -> int:
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    return _dm(rows).rank()


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list]:
    """Basis of {v : A v = 0} for A given by its rows."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return [[mpq(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ns = _dm(rows, ncols).nullspace()
    return [[mpq(c) for c in row] for row in ns.to_list()]


def solve(columns: Sequence[Sequence], target: Sequence) -> list | None:
    """Coefficients c with sum c_k columns[k] = target, or None."""
    n = len(target)
    m = len(columns)
    if m == 0:
        return [] if not any(target) else None
    rows = [[columns[k][i] for k in range(m)] + [-target[i]] for i in range(n)]
    ns = nullspace(rows, m + 1)
    for v in ns:
        if v[m]:
            return [c / v[m] for c in v[:m]]
    return None


def matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return tuple(tuple(sum((a[i][t] * b[t][j] for t in range(k)), mpq(0)) for j in range(m)) for i in range(n))


def transpose(a):
    return tuple(zip(*a))


def identity(n: int):
    return tuple(tuple(mpq(int(i == j)) for j in range(n)) for i in range(n))


def matvec(a, v):
    return tuple(sum((a[i][j] * v[j] for j in range(len(v))), mpq(0)) for i in range(len(a)))


def flatten(m) -> list:
    return [c for row in m for c in row]


def det(m) -> mpq:
    return mpq(_dm(m).det())


@dataclass(frozen=True)
class LinearFamily:
    """A finite list of vectors (matrices are flattened) with exact rank."""

    vectors: tuple
    labels: tuple = field(default=())

    @classmethod
    def of(cls, items, labels=()):
        vecs = tuple(tuple(flatten(x)) if isinstance(x[0], (tuple, list)) else tuple(x) for x in items)
        return cls(vecs, tuple(labels))

    def __len__(self):
        return len(self.vectors)

    def rank(self) -> int:
        return rank(self.vectors)

    def contains(self, v) -> bool:
        v = tuple(flatten(v)) if isinstance(v[0], (tuple, list)) else tuple(v)
        return rank(self.vectors + (v,)) == self.rank()

    def same_span(self, other: "LinearFamily") -> bool:
        r = self.rank()
        return r == other.rank() == rank(self.vectors + other.vectors)
