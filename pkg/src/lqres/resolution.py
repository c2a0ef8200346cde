"""Free resolutions built by iterated Horseshoe steps.

Indexing: ``differentials[i - 1]`` is ``delta_i : F_i -> F_{i-1}`` and the
augmentation sends the basis of ``F_0`` to the ideal generators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .ideals import ColonCertificate, IdealPresentation, IdealError, _independent
from .linalg import solve_many
from .modules import (
    GradedFreeModule,
    GradedMap,
    block_map,
    coords_to_vector,
    graded_piece,
    map_compose,
    vector_to_coords,
)
from .poly import Polynomial, Ring, mono_divides, mono_quotient

S0 = GradedFreeModule([0])


class ConstructionError(Exception):
    """A lift did not exist: the input was not a resolution or not linear quotients."""

    def __init__(self, message: str, k: int | None = None, i: int | None = None):
        self.k = k
        self.i = i
        super().__init__(message)


@dataclass(frozen=True)
class Resolution:
    """``0 -> F_p -> ... -> F_0 -> M -> 0``.

    For resolutions of ideals ``augmentation`` holds the generator images of
    the basis of ``F_0``.  Resolutions of cyclic quotients ``(S/L)(-s)`` have
    ``augmentation = None``; ``F_0`` is then ``S(-s)`` mapping onto the class
    of 1.
    """

    ring: Ring
    d: int
    modules: tuple[GradedFreeModule, ...]
    differentials: tuple[GradedMap, ...]
    augmentation: tuple[Polynomial, ...] | None

    def __post_init__(self):
        if len(self.differentials) != max(len(self.modules) - 1, 0):
            raise ValueError("need exactly one differential per positive position")
        for i, delta in enumerate(self.differentials, start=1):
            if delta.source != self.modules[i] or delta.target != self.modules[i - 1]:
                raise ValueError(f"differential {i} does not match the modules")
        if self.augmentation is not None and self.modules:
            if len(self.augmentation) != self.modules[0].rank:
                raise ValueError("augmentation length differs from rank F_0")

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    pd = length

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(F.rank for F in self.modules)

    def differential(self, i: int) -> GradedMap:
        return self.differentials[i - 1]

    def augmentation_map(self) -> GradedMap | None:
        if self.augmentation is None or not self.modules:
            return None
        return GradedMap(self.ring, self.modules[0], S0,
                         {(0, j): g for j, g in enumerate(self.augmentation)})

    def is_ideal_resolution(self) -> bool:
        return self.augmentation is not None


def empty_resolution(ring: Ring, d: int = 0) -> Resolution:
    """Resolution of the zero ideal."""
    return Resolution(ring, d, (), (), ())


def principal_resolution(f: Polynomial) -> Resolution:
    """``0 -> S(-d) -> <f> -> 0``."""
    return Resolution(f.ring, f.degree, (GradedFreeModule([f.degree]),), (), (f,))


def _trim(modules, differentials):
    modules = list(modules)
    differentials = list(differentials)
    while len(modules) > 1 and modules[-1].rank == 0:
        modules.pop()
        differentials.pop()
    return tuple(modules), tuple(differentials)


def koszul_resolution(ring: Ring, forms: Sequence[Polynomial], shift: int = 0) -> Resolution:
    """Koszul complex on independent linear forms, resolving ``(S/<forms>)(-shift)``.

    Position i has basis the i-subsets J of the form indices (lex order) with
    shift ``shift + i``;
    ``delta(e_J) = sum_t (-1)^t l_{j_t} e_{J - j_t}`` (t counted from 0).
    """
    forms = list(forms)
    q = len(forms)
    if q and (any(f.degree != 1 for f in forms) or not _independent(ring, forms, 1)):
        raise IdealError("Koszul complex needs independent linear forms")
    subsets = [list(itertools.combinations(range(q), i)) for i in range(q + 1)]
    modules = tuple(GradedFreeModule([shift + i] * len(subsets[i])) for i in range(q + 1))
    diffs = []
    for i in range(1, q + 1):
        index = {J: r for r, J in enumerate(subsets[i - 1])}
        entries = {}
        for c, J in enumerate(subsets[i]):
            for t, j in enumerate(J):
                face = J[:t] + J[t + 1:]
                entries[(index[face], c)] = forms[j] if t % 2 == 0 else -forms[j]
        diffs.append(GradedMap(ring, modules[i], modules[i - 1], entries))
    return Resolution(ring, shift + 1, modules, tuple(diffs), None)


def koszul_ideal_resolution(ring: Ring, forms: Sequence[Polynomial]) -> Resolution:
    """The Koszul complex shifted down one position: a resolution of ``<forms>``."""
    kos = koszul_resolution(ring, forms, 0)
    if kos.length < 1:
        return empty_resolution(ring, 1)
    aug = tuple(kos.differentials[0].column(j)[0] for j in range(kos.modules[1].rank))
    return Resolution(ring, 1, kos.modules[1:], kos.differentials[1:], aug)


def quotient_resolution(res: Resolution, shift: int) -> Resolution:
    """From a resolution of an ideal J, the resolution of ``(S/J)(-shift)``.

    ``S(-shift) <- F_0(-shift) <- F_1(-shift) <- ...`` with the augmentation
    of J as first differential.
    """
    ring = res.ring
    top = GradedFreeModule([shift])
    if not res.modules:
        return Resolution(ring, shift, (top,), (), None)
    modules = (top,) + tuple(F.twist(shift) for F in res.modules)
    first = GradedMap(ring, modules[1], top,
                      {(0, j): g for j, g in enumerate(res.augmentation)})
    diffs = (first,) + tuple(delta.twist(shift) for delta in res.differentials)
    return Resolution(ring, shift + res.d, modules, diffs, None)


def lift_through(sigma: GradedMap, targets: Sequence[Sequence[Polynomial]]) -> list[list[Polynomial] | None]:
    """Preimages under ``sigma`` of homogeneous target vectors.

    Each target is solved in the graded piece of its own degree; the solution
    has free variables set to zero.  Unreachable targets give ``None``.
    """
    ring = sigma.ring
    results: list = [None] * len(targets)
    by_degree: dict[int, list[int]] = {}
    for t, vec in enumerate(targets):
        if len(vec) != sigma.target.rank:
            raise ValueError("target vector length does not match sigma.target")
        degs = {
            p.degree + sigma.target.shifts[i] for i, p in enumerate(vec) if not p.is_zero()
        }
        if not degs:
            results[t] = [ring.zero() for _ in range(sigma.source.rank)]
            continue
        if len(degs) > 1:
            raise ValueError("target vector is not homogeneous")
        by_degree.setdefault(degs.pop(), []).append(t)
    for e, idx in sorted(by_degree.items()):
        piece = graded_piece(sigma, e)
        rhs = [vector_to_coords(ring, sigma.target, targets[t], e) for t in idx]
        sols = solve_many(piece.matrix, len(piece.col_basis), rhs, ring.field)
        for t, x in zip(idx, sols):
            if x is not None:
                results[t] = coords_to_vector(ring, sigma.source, x, e)
    return results


def _monomial_lambda1(resA: Resolution, C1_cols: Sequence[Polynomial], fk: Polynomial):
    """Columns of lambda_1 by monomial division, or ``None`` if not applicable."""
    gens = resA.augmentation
    if not (fk.is_monomial() and all(g.is_monomial() for g in gens)):
        return None
    if not all(u.is_monomial() for u in C1_cols):
        return None
    ring = resA.ring
    (mk, ck), = fk.terms.items()
    cols = []
    for u in C1_cols:
        (mu, cu), = u.terms.items()
        prod = tuple(a + b for a, b in zip(mu, mk))
        col = [ring.zero() for _ in gens]
        for t, g in enumerate(gens):
            (mg, cg), = g.terms.items()
            if mono_divides(mg, prod):
                coeff = ring.field(-cu * ck * ring.field.inv(cg))
                col[t] = ring.monomial(mono_quotient(prod, mg), coeff)
                break
        else:
            return None
        cols.append(col)
    return cols


def horseshoe_step(resA: Resolution, resC: Resolution, fk: Polynomial,
                   k: int | None = None, fast: bool = True) -> Resolution:
    """Resolution of ``I_k = I_{k-1} + <fk>`` from those of ``I_{k-1}`` and ``I_k/I_{k-1}``.

    ``resC`` resolves the cyclic module ``I_k/I_{k-1} = (S/L_k)(-d)``; its
    generator maps to ``fk``.  The new differentials are
    ``[[delta^A_i, lambda_i], [0, delta^C_i]]`` where
    ``aug^A . lambda_1 = -fk . delta^C_1`` and
    ``delta^A_{i-1} . lambda_i = -lambda_{i-1} . delta^C_i``.
    """
    ring = resA.ring
    if resC.augmentation is not None or resC.modules[0].rank != 1:
        raise ValueError("resC must resolve a cyclic quotient")
    if resA.augmentation is None:
        raise ValueError("resA must resolve an ideal")
    if not resA.modules:
        return Resolution(ring, fk.degree, (resC.modules[0],), (), (fk,))
    pA, pC = resA.length, resC.length
    P = max(pA, pC)
    empty = GradedFreeModule([])
    A = [resA.modules[i] if i <= pA else empty for i in range(P + 1)]
    C = [resC.modules[i] if i <= pC else empty for i in range(P + 1)]

    def dA(i):
        if 1 <= i <= pA:
            return resA.differentials[i - 1]
        return GradedMap(ring, A[i], A[i - 1])

    def dC(i):
        if 1 <= i <= pC:
            return resC.differentials[i - 1]
        return GradedMap(ring, C[i], C[i - 1])

    lambdas: list[GradedMap] = []
    for i in range(1, P + 1):
        if C[i].rank == 0:
            lambdas.append(GradedMap(ring, C[i], A[i - 1]))
            continue
        if i == 1:
            c1 = [dC(1).entry(0, j) for j in range(C[1].rank)]
            cols = _monomial_lambda1(resA, c1, fk) if fast else None
            if cols is None:
                sigma = resA.augmentation_map()
                targets = [[-(fk * u)] for u in c1]
                cols = lift_through(sigma, targets)
        else:
            prev = map_compose(lambdas[-1], dC(i))
            targets = [[-p for p in prev.column(j)] for j in range(C[i].rank)]
            cols = lift_through(dA(i - 1), targets)
        for j, col in enumerate(cols):
            if col is None:
                raise ConstructionError(
                    f"no lift for lambda_{i}, column {j}"
                    + (f" at step k={k}" if k is not None else "")
                    + ": the colon forms do not give a resolution",
                    k=k, i=i,
                )
        entries = {(r, j): p for j, col in enumerate(cols) for r, p in enumerate(col) if p}
        lambdas.append(GradedMap(ring, C[i], A[i - 1], entries))
    modules = [A[i] + C[i] for i in range(P + 1)]
    diffs = []
    for i in range(1, P + 1):
        diffs.append(block_map(ring, [[dA(i), lambdas[i - 1]], [None, dC(i)]],
                               [A[i], C[i]], [A[i - 1], C[i - 1]]))
    modules, diffs = _trim(modules, diffs)
    return Resolution(ring, resA.d, modules, diffs, tuple(resA.augmentation) + (fk,))


def build_resolution(ideal: IdealPresentation, cert: ColonCertificate,
                     fast: bool = True, trace: list | None = None) -> Resolution:
    """Minimal free resolution of an ideal with linear quotients.

    Starts from ``0 -> S(-d) -> <f_1>`` and adds one generator per step with
    :func:`horseshoe_step`, resolving ``I_k/I_{k-1}`` by the Koszul complex on
    the certified colon forms.  ``trace`` receives the ranks after each step.
    """
    if cert.m != ideal.m:
        raise ValueError("certificate does not match the ideal")
    gens = ideal.generators
    res = principal_resolution(gens[0])
    if trace is not None:
        trace.append(res.ranks)
    for k in range(2, ideal.m + 1):
        resC = koszul_resolution(ideal.ring, cert.forms[k - 1], ideal.d)
        res = horseshoe_step(res, resC, gens[k - 1], k=k, fast=fast)
        if trace is not None:
            trace.append(res.ranks)
    return res


def linear_ideal_resolution(ideal: IdealPresentation, trace: list | None = None) -> Resolution:
    """1-linear resolution of an ideal of independent linear forms.

    At step r the quotient ``I_r/I_{r-1} ~ (S/I_{r-1})(-1)`` is resolved by
    the current resolution twisted by one and topped by ``S(-1)``.
    """
    if ideal.d != 1 or not _independent(ideal.ring, ideal.generators, 1):
        raise IdealError("linear_ideal_resolution needs independent linear forms")
    gens = ideal.generators
    res = principal_resolution(gens[0])
    if trace is not None:
        trace.append(res.ranks)
    for r in range(2, ideal.m + 1):
        resC = quotient_resolution(res, 1)
        res = horseshoe_step(res, resC, gens[r - 1], k=r)
        if trace is not None:
            trace.append(res.ranks)
    return res
