from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals
from g2verify import linalg

matrices = st.lists(st.lists(rationals(), min_size=4, max_size=4), min_size=1, max_size=5)


@given(matrices)
def test_nullspace_is_annihilated(rows):
    for v in linalg.nullspace(rows, 4):
        assert all(sum((r[j] * v[j] for j in range(4)), mpq(0)) == 0 for r in rows)
    assert linalg.rank(rows) + len(linalg.nullspace(rows, 4)) == 4


@given(matrices)
def test_rank_invariant_under_duplication(rows):
    assert linalg.rank(rows + rows) == linalg.rank(rows)
    fam = linalg.LinearFamily.of(rows)
    assert all(fam.contains(r) for r in rows)


def test_solve():
    cols = [[1, 0], [1, 1]]
    assert linalg.solve(cols, [3, 2]) == [1, 2]
    assert linalg.solve([[1, 1]], [1, 0]) is None
