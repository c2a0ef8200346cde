"""Exact linear algebra over QQ or GF(p).

Matrices are dense lists of rows.  Row reduction is delegated to the compiled
``_kernels`` module when it is importable, otherwise to ``_kernels_py``; set
``LQRES_PURE_PYTHON=1`` to force the fallback.  Reduced echelon forms are
unique, so every result here is independent of the kernel in use.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import _kernels_py
from .field import Field, PrimeField

if os.environ.get("LQRES_PURE_PYTHON"):
    kernels = _kernels_py
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - depends on the build
        kernels = _kernels_py

KERNEL = kernels.IMPLEMENTATION


def _integer_rows(rows):
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = lcm(den, x.denominator)
        if den == 1:
            out.append([int(x) for x in row])
        else:
            out.append([
                x.numerator * (den // x.denominator) if isinstance(x, Fraction) else x * den
                for x in row
            ])
    return out


def rref(rows: Sequence[Sequence], ncols: int, field: Field, impl=None):
    """Reduced row echelon form.

    Returns ``(reduced, pivots)``: the nonzero rows of the RREF (pivots equal
    to one) as field elements, and their pivot columns.
    """
    impl = impl or kernels
    if not rows or ncols == 0:
        return [], []
    if isinstance(field, PrimeField):
        p = field.p
        return impl.rref_modp([[x % p for x in r] for r in rows], ncols, p)
    red, pivots = impl.rref_int(_integer_rows(rows), ncols)
    out = []
    for row, c in zip(red, pivots):
        a = row[c]
        out.append([Fraction(x, a) if x else Fraction(0) for x in row])
    return out, pivots


def rank(rows, ncols: int, field: Field) -> int:
    return len(rref(rows, ncols, field)[1])


def kernel_basis(rows, ncols: int, field: Field) -> list[list]:
    """Basis of the right kernel, one vector per free column (ascending)."""
    red, pivots = rref(rows, ncols, field)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [field.zero] * ncols
        v[f] = field.one
        for row, c in zip(red, pivots):
            if row[f]:
                v[c] = field(-row[f])
        basis.append(v)
    return basis


def solve_many(rows, ncols: int, rhs: Sequence[Sequence], field: Field) -> list:
    """Solve ``M x = b`` for each right-hand side ``b`` in ``rhs``.

    Each result is the solution read off the reduced echelon form with free
    variables set to zero, or ``None`` when the system is inconsistent.
    """
    nrows = len(rows)
    if not rhs:
        return []
    for b in rhs:
        if len(b) != nrows:
            raise ValueError("right-hand side has the wrong length")
    if nrows == 0:
        return [[field.zero] * ncols for _ in rhs]
    k = len(rhs)
    aug = [list(rows[i]) + [b[i] for b in rhs] for i in range(nrows)]
    red, pivots = rref(aug, ncols + k, field)
    consistent = [True] * k
    for row, c in zip(red, pivots):
        if c >= ncols:
            for t in range(k):
                if row[ncols + t]:
                    consistent[t] = False
    out = []
    for t in range(k):
        if not consistent[t]:
            out.append(None)
            continue
        x = [field.zero] * ncols
        for row, c in zip(red, pivots):
            if c < ncols:
                x[c] = row[ncols + t]
        out.append(x)
    return out


def solve(rows, ncols: int, b: Sequence, field: Field):
    """Single right-hand side version of :func:`solve_many`."""
    return solve_many(rows, ncols, [b], field)[0]


def mat_mul(a, b, inner: int, ncols: int, field: Field):
    """Product of an ``len(a) x inner`` and an ``inner x ncols`` matrix."""
    out = []
    for row in a:
        nz = [(j, x) for j, x in enumerate(row) if x]
        acc = [field.zero] * ncols
        for j, x in nz:
            brow = b[j]
            for c in range(ncols):
                if brow[c]:
                    acc[c] += x * brow[c]
        out.append([field(v) for v in acc])
    return out
