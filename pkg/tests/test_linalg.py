import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from lqres import _kernels_py
from lqres.field import QQ, PrimeField
from lqres.linalg import KERNEL, kernel_basis, rank, rref, solve, solve_many

try:
    from lqres import _kernels as compiled
except ImportError:  # pragma: no cover
    compiled = None


def sympy_rref(rows, ncols):
    M = sympy.Matrix(len(rows), ncols, lambda i, j: sympy.Rational(rows[i][j].numerator, rows[i][j].denominator))
    R, piv = M.rref()
    out = [[Fraction(int(R[i, j].p), int(R[i, j].q)) for j in range(ncols)] for i in range(len(piv))]
    return out, list(piv)


matrices = st.integers(0, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(
            st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3), min_size=c, max_size=c),
            min_size=r, max_size=r,
        ).map(lambda rows: (rows, c))
    )
)


@given(matrices)
def test_rref_matches_sympy(mc):
    rows, ncols = mc
    if not rows:
        assert rref(rows, ncols, QQ) == ([], [])
        return
    assert rref(rows, ncols, QQ) == sympy_rref(rows, ncols)


@given(matrices)
def test_rank_nullity(mc):
    rows, ncols = mc
    ker = kernel_basis(rows, ncols, QQ)
    assert rank(rows, ncols, QQ) + len(ker) == ncols
    for v in ker:
        for row in rows:
            assert sum(a * b for a, b in zip(row, v)) == 0


@given(matrices, st.randoms(use_true_random=False))
def test_solve_consistent_systems(mc, rnd):
    rows, ncols = mc
    if not rows:
        return
    x = [Fraction(rnd.randint(-3, 3)) for _ in range(ncols)]
    b = [sum(a * c for a, c in zip(row, x)) for row in rows]
    sol = solve(rows, ncols, b, QQ)
    assert sol is not None
    assert [sum(a * c for a, c in zip(row, sol)) for row in rows] == b
    # free variables are zero
    _, piv = rref(rows, ncols, QQ)
    assert all(sol[j] == 0 for j in range(ncols) if j not in piv)


def test_small_examples():
    I3 = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    assert solve(I3, 3, [1, 2, 3], QQ) == [1, 2, 3]
    assert kernel_basis([[1, 1]], 2, QQ) == [[-1, 1]]
    assert solve([[1, 1], [1, 1]], 2, [1, 2], QQ) is None
    assert solve_many([[1, 0], [0, 0]], 2, [[1, 0], [1, 1]], QQ) == [[1, 0], None]


def test_prime_field_kernel():
    F = PrimeField(7)
    rows = [[1, 2, 3], [2, 4, 6]]
    assert rank(rows, 3, F) == 1
    for v in kernel_basis(rows, 3, F):
        assert all(sum(a * b for a, b in zip(r, v)) % 7 == 0 for r in rows)


@pytest.mark.skipif(compiled is None, reason="compiled kernels not built")
@settings(max_examples=200)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 2**32), st.sampled_from([3, 7, 32003, 2147483629]))
def test_compiled_and_python_kernels_agree(r, c, seed, p):
    rnd = random.Random(seed)
    rows = [[rnd.choice([0, 0, 0, 1, -1, 2, rnd.randint(-50, 50)]) for _ in range(c)] for _ in range(r)]
    assert compiled.rref_int(rows, c) == _kernels_py.rref_int(rows, c)
    modrows = [[x % p for x in row] for row in rows]
    assert compiled.rref_modp(modrows, c, p) == _kernels_py.rref_modp(modrows, c, p)


@pytest.mark.skipif(compiled is None, reason="compiled kernels not built")
def test_compiled_int_kernel_falls_back_on_overflow():
    big = 2**61
    rows = [[big, 3, 1], [3, big - 1, 5], [7, 11, big + 3]]
    assert compiled.rref_int(rows, 3) == _kernels_py.rref_int(rows, 3)
    huge = [[2**80, 1], [1, 2**70]]
    assert compiled.rref_int(huge, 2) == _kernels_py.rref_int(huge, 2)


def test_kernel_is_reported():
    assert KERNEL in ("cython", "python")


def test_determinism():
    rnd = random.Random(5)
    rows = [[Fraction(rnd.randint(-3, 3), rnd.randint(1, 3)) for _ in range(9)] for _ in range(7)]
    assert rref(rows, 9, QQ) == rref([list(r) for r in rows], 9, QQ)
    assert rref(rows, 9, QQ, impl=_kernels_py) == rref(rows, 9, QQ)
