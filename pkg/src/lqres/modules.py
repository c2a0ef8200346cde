"""Graded free modules, homogeneous maps and their degreewise linearization."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping, Sequence

from .field import PrimeField
from .poly import Polynomial, Ring, monomial_index, monomials_of_degree


@dataclass(frozen=True)
class GradedFreeModule:
    """The free module ``S(-a_1) + ... + S(-a_b)`` with an ordered basis."""

    shifts: tuple[int, ...]

    def __init__(self, shifts: Iterable[int]):
        object.__setattr__(self, "shifts", tuple(int(a) for a in shifts))

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def twist(self, s: int) -> "GradedFreeModule":
        """The module ``M(-s)``: every shift grows by ``s``."""
        return GradedFreeModule(a + s for a in self.shifts)

    def __add__(self, other: "GradedFreeModule") -> "GradedFreeModule":
        return GradedFreeModule(self.shifts + other.shifts)

    def dim(self, n: int, e: int) -> int:
        return sum(comb(e - a + n - 1, n - 1) for a in self.shifts if e >= a)

    def basis(self, n: int, e: int) -> list[tuple[int, tuple]]:
        """Degree-``e`` K-basis: pairs (basis index, monomial), index first."""
        return [(j, m) for j, a in enumerate(self.shifts) for m in monomials_of_degree(n, e - a)]


class GradedMapError(ValueError):
    pass


class GradedMap:
    """Homogeneous map between graded free modules.

    ``entries[(i, j)]`` is the polynomial sending source basis element ``j``
    to target row ``i``.  Nonzero entries must have degree
    ``source.shifts[j] - target.shifts[i]``.
    """

    __slots__ = ("ring", "source", "target", "entries")

    def __init__(self, ring: Ring, source: GradedFreeModule, target: GradedFreeModule,
                 entries: Mapping[tuple[int, int], Polynomial] | None = None):
        self.ring = ring
        self.source = source
        self.target = target
        clean = {}
        for (i, j), p in (entries or {}).items():
            if not (0 <= i < target.rank and 0 <= j < source.rank):
                raise GradedMapError(f"entry ({i}, {j}) out of range")
            if p.is_zero():
                continue
            want = source.shifts[j] - target.shifts[i]
            if p.degree != want:
                raise GradedMapError(
                    f"entry ({i}, {j}) has degree {p.degree}, expected {want}"
                )
            clean[(i, j)] = p
        self.entries = clean

    @property
    def shape(self) -> tuple[int, int]:
        return self.target.rank, self.source.rank

    def entry(self, i: int, j: int) -> Polynomial:
        return self.entries.get((i, j)) or self.ring.zero()

    def column(self, j: int) -> list[Polynomial]:
        return [self.entry(i, j) for i in range(self.target.rank)]

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, GradedMap)
            and self.source == other.source
            and self.target == other.target
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"GradedMap({self.source.shifts} -> {self.target.shifts}, {len(self.entries)} entries)"

    def apply(self, vec: Sequence[Polynomial]) -> list[Polynomial]:
        """Image of a source element given as a vector of polynomials."""
        if len(vec) != self.source.rank:
            raise GradedMapError("vector length does not match the source rank")
        out = [self.ring.zero() for _ in range(self.target.rank)]
        for (i, j), p in self.entries.items():
            if vec[j]:
                out[i] = out[i] + p * vec[j]
        return out

    def negate(self) -> "GradedMap":
        return GradedMap(self.ring, self.source, self.target,
                         {k: -p for k, p in self.entries.items()})

    def twist(self, s: int) -> "GradedMap":
        return GradedMap(self.ring, self.source.twist(s), self.target.twist(s), self.entries)


def zero_map(ring: Ring, source: GradedFreeModule, target: GradedFreeModule) -> GradedMap:
    return GradedMap(ring, source, target, {})


def identity_map(ring: Ring, module: GradedFreeModule) -> GradedMap:
    one = ring.one()
    return GradedMap(ring, module, module, {(i, i): one for i in range(module.rank)})


def map_from_columns(ring: Ring, source: GradedFreeModule, target: GradedFreeModule,
                     columns: Sequence[Sequence[Polynomial]]) -> GradedMap:
    entries = {}
    for j, col in enumerate(columns):
        for i, p in enumerate(col):
            if p:
                entries[(i, j)] = p
    return GradedMap(ring, source, target, entries)


def map_compose(g: GradedMap, f: GradedMap) -> GradedMap:
    """The composite ``g . f`` (apply ``f`` first)."""
    if f.target != g.source:
        raise GradedMapError(
            f"cannot compose: target {f.target.shifts} != source {g.source.shifts}"
        )
    by_row: dict[int, list] = {}
    for (k, j), p in f.entries.items():
        by_row.setdefault(k, []).append((j, p))
    acc: dict = {}
    for (i, k), q in g.entries.items():
        for j, p in by_row.get(k, ()):
            prod = q * p
            prev = acc.get((i, j))
            acc[(i, j)] = prod if prev is None else prev + prod
    return GradedMap(f.ring, f.source, g.target, acc)


def block_map(ring: Ring, blocks: Sequence[Sequence[GradedMap | None]],
              sources: Sequence[GradedFreeModule], targets: Sequence[GradedFreeModule]) -> GradedMap:
    """Assemble a block matrix; ``blocks[r][c]`` maps ``sources[c]`` to ``targets[r]``."""
    entries = {}
    row_off = 0
    for r, tgt in enumerate(targets):
        col_off = 0
        for c, src in enumerate(sources):
            blk = blocks[r][c]
            if blk is not None:
                if blk.source != src or blk.target != tgt:
                    raise GradedMapError(f"block ({r}, {c}) has the wrong shape")
                for (i, j), p in blk.entries.items():
                    entries[(row_off + i, col_off + j)] = p
            col_off += src.rank
        row_off += tgt.rank
    src_all = GradedFreeModule(a for s in sources for a in s.shifts)
    tgt_all = GradedFreeModule(a for t in targets for a in t.shifts)
    return GradedMap(ring, src_all, tgt_all, entries)


@dataclass
class GradedPiece:
    """A homogeneous map restricted to one degree, as an exact K-matrix."""

    degree: int
    matrix: list[list]
    row_basis: list[tuple[int, tuple]]
    col_basis: list[tuple[int, tuple]]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_basis), len(self.col_basis)


def graded_piece(f: GradedMap, e: int) -> GradedPiece:
    """Matrix of ``f`` on degree-``e`` pieces.

    Columns are indexed by (source basis index, monomial of degree e - shift),
    rows likewise for the target; basis index ascending, then monomials in
    lex-descending order.
    """
    n = f.ring.n
    field = f.ring.field
    rows_b = f.target.basis(n, e)
    cols_b = f.source.basis(n, e)
    row_pos = {}
    off = 0
    for i, a in enumerate(f.target.shifts):
        if e >= a:
            row_pos[i] = off
            off += len(monomials_of_degree(n, e - a))
    mat = [[field.zero] * len(cols_b) for _ in rows_b]
    by_col: dict[int, list] = {}
    for (i, j), p in f.entries.items():
        by_col.setdefault(j, []).append((i, p))
    for c, (j, mono) in enumerate(cols_b):
        for i, p in by_col.get(j, ()):
            idx = monomial_index(n, e - f.target.shifts[i])
            base = row_pos[i]
            for m, coef in p.terms.items():
                target_mono = tuple(x + y for x, y in zip(m, mono))
                mat[base + idx[target_mono]][c] += coef
    if isinstance(field, PrimeField):
        mat = [[x % field.p for x in row] for row in mat]
    return GradedPiece(e, mat, rows_b, cols_b)


def vector_to_coords(ring: Ring, module: GradedFreeModule, vec: Sequence[Polynomial], e: int) -> list:
    """Coordinates of a homogeneous degree-``e`` element in ``module.basis(n, e)``."""
    n = ring.n
    coords = []
    for j, a in enumerate(module.shifts):
        p = vec[j]
        if p and p.degree != e - a:
            raise GradedMapError(f"component {j} has degree {p.degree}, expected {e - a}")
        for m in monomials_of_degree(n, e - a):
            coords.append(p.coeff(m) if p else ring.field.zero)
    return coords


def coords_to_vector(ring: Ring, module: GradedFreeModule, coords: Sequence, e: int) -> list[Polynomial]:
    n = ring.n
    out = []
    pos = 0
    for a in module.shifts:
        monos = monomials_of_degree(n, e - a)
        terms = {m: coords[pos + t] for t, m in enumerate(monos) if coords[pos + t]}
        out.append(Polynomial(ring, terms))
        pos += len(monos)
    return out
