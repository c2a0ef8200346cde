"""Independent checks on constructed resolutions, plus brute-force oracles."""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field as dc_field
from math import comb
from typing import Sequence

from .ideals import MONOMIAL, ColonCertificate, IdealPresentation, minimalize_monomials
from .linalg import kernel_basis, rank
from .modules import GradedFreeModule, GradedMap, graded_piece, map_compose, vector_to_coords, coords_to_vector
from .poly import Monomial, mono_degree, mono_divides, mono_lcm, monomials_of_degree
from .resolution import Resolution

IE_LIMIT = 20


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: dict = dc_field(default_factory=dict)
    note: str = ""

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return asdict(self)


class BettiTable:
    """Graded Betti numbers ``beta[i, j]``: rank of the degree-j part of F_i."""

    def __init__(self, entries: dict | None = None):
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __repr__(self):
        return f"BettiTable({dict(sorted(self.entries.items()))})"

    @property
    def length(self) -> int:
        return max((i for i, _ in self.entries), default=-1)

    def totals(self) -> tuple[int, ...]:
        return tuple(
            sum(v for (i, _), v in self.entries.items() if i == p) for p in range(self.length + 1)
        )

    def is_linear(self, d: int) -> bool:
        return all(j == d + i for i, j in self.entries)

    def render(self) -> str:
        """Betti diagram: columns i, rows j - i, as printed by Macaulay2."""
        if not self.entries:
            return "(zero)"
        cols = range(self.length + 1)
        rows = sorted({j - i for i, j in self.entries})
        cells = [[str(i) for i in cols], [str(t) for t in self.totals()]]
        for r in rows:
            cells.append([str(self[i, i + r]) if self[i, i + r] else "." for i in cols])
        width = max(len(c) for row in cells for c in row)
        labels = ["", "total:"] + [f"{r}:" for r in rows]
        lw = max(len(lab) for lab in labels)
        lines = []
        for lab, row in zip(labels, cells):
            lines.append(lab.rjust(lw) + " " + " ".join(c.rjust(width) for c in row))
        return "\n".join(lines)

    def to_json(self) -> list:
        return [[i, j, v] for (i, j), v in sorted(self.entries.items())]


def betti_from_resolution(res: Resolution) -> BettiTable:
    out: dict = {}
    for i, F in enumerate(res.modules):
        for a in F.shifts:
            out[(i, a)] = out.get((i, a), 0) + 1
    return BettiTable(out)


def betti_from_q(q_values: Sequence[int], d: int) -> BettiTable:
    """``beta[i, d+i] = sum_k C(q_k, i)`` with q_1 = 0."""
    top = max(q_values, default=0)
    return BettiTable({(i, d + i): sum(comb(q, i) for q in q_values) for i in range(top + 1)})


def _first_nonzero(g: GradedMap):
    if not g.entries:
        return None
    (r, c), p = min(g.entries.items())
    return {"entry": [r, c], "value": str(p)}


def check_complex(res: Resolution) -> CheckResult:
    """``delta_i . delta_{i+1} = 0`` and ``augmentation . delta_1 = 0``."""
    aug = res.augmentation_map()
    if aug is not None and res.length >= 1:
        bad = _first_nonzero(map_compose(aug, res.differential(1)))
        if bad:
            return CheckResult("complex", False, {"composite": [0, 1], **bad})
    for i in range(1, res.length):
        bad = _first_nonzero(map_compose(res.differential(i), res.differential(i + 1)))
        if bad:
            return CheckResult("complex", False, {"composite": [i, i + 1], **bad})
    return CheckResult("complex", True)


def check_linear_and_minimal(res: Resolution, d: int | None = None) -> CheckResult:
    """Every shift in F_i is d+i and every nonzero differential entry is linear."""
    d = res.d if d is None else d
    for i, F in enumerate(res.modules):
        for j, a in enumerate(F.shifts):
            if a != d + i:
                return CheckResult("linear_minimal", False,
                                   {"reason": "linearity", "position": i, "basis": j,
                                    "shift": a, "expected": d + i})
    for i, delta in enumerate(res.differentials, start=1):
        for (r, c), p in sorted(delta.entries.items()):
            if p.is_constant():
                return CheckResult("linear_minimal", False,
                                   {"reason": "minimality", "differential": i,
                                    "entry": [r, c], "value": str(p)})
            if p.degree != 1:
                return CheckResult("linear_minimal", False,
                                   {"reason": "linearity", "differential": i,
                                    "entry": [r, c], "value": str(p)})
    return CheckResult("linear_minimal", True)


def check_pd(res: Resolution, cert: ColonCertificate) -> CheckResult:
    ok = res.length == cert.q_max
    return CheckResult("pd", ok, {} if ok else {"pd": res.length, "q": cert.q_max})


def check_betti_recurrence(res: Resolution, cert: ColonCertificate) -> CheckResult:
    got = betti_from_resolution(res)
    want = betti_from_q(cert.q_values, res.d)
    ok = got == want
    return CheckResult("betti_recurrence", ok,
                       {} if ok else {"resolution": got.to_json(), "formula": want.to_json()})


def check_augmentation(res: Resolution, ideal: IdealPresentation) -> CheckResult:
    """The augmentation lists exactly the ideal's generators (any order)."""
    aug = res.augmentation or ()
    got = sorted(str(p) for p in aug)
    want = sorted(str(g) for g in ideal.generators)
    ok = got == want and res.ring == ideal.ring
    return CheckResult("augmentation", ok, {} if ok else {"augmentation": got, "generators": want})


# Hilbert series of monomial ideals

@dataclass(frozen=True)
class HilbertSeries:
    """``numerator / (1 - t)^n`` for the ideal I; ``quotient_numerator`` is that of S/I."""

    numerator: tuple[int, ...]
    quotient_numerator: tuple[int, ...]
    n: int

    def __str__(self):
        return f"({format_tpoly(self.numerator)}) / (1-t)^{self.n}"


def _trim_poly(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b, sign=1, shift=0):
    out = list(a) + [0] * max(0, len(b) + shift - len(a))
    for i, x in enumerate(b):
        out[i + shift] += sign * x
    return out


def format_tpoly(c: Sequence[int]) -> str:
    terms = []
    for i, x in enumerate(c):
        if not x:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        mag = abs(x)
        body = mono if mag == 1 and mono else (f"{mag}{mono}" if mono else str(mag))
        if not terms:
            terms.append(("-" if x < 0 else "") + body)
        else:
            terms.append((" - " if x < 0 else " + ") + body)
    return "".join(terms) or "0"


def _kpoly_inclusion_exclusion(monos: Sequence[Monomial]) -> list[int]:
    out = [1]
    n = len(monos[0]) if monos else 0

    def rec(start, current, size):
        nonlocal out
        for t in range(start, len(monos)):
            lc = mono_lcm(current, monos[t])
            sign = -1 if size % 2 == 0 else 1
            deg = mono_degree(lc)
            out = _padd(out, [0] * deg + [sign])
            rec(t + 1, lc, size + 1)

    rec(0, (0,) * n, 0)
    return out


def _kpoly_pivot(monos: list[Monomial], limit: int) -> list[int]:
    monos = minimalize_monomials(monos)
    if not monos:
        return [1]
    if len(monos) <= limit:
        return _kpoly_inclusion_exclusion(monos)
    n = len(monos[0])
    counts = [sum(1 for m in monos if m[v]) for v in range(n)]
    v = max(range(n), key=lambda a: counts[a])
    if counts[v] < 2:
        # pairwise coprime generators: K = prod (1 - t^deg)
        out = [1]
        for m in monos:
            out = _pmul(out, m)
        return out
    e = min(m[v] for m in monos if m[v])
    p = tuple(e if a == v else 0 for a in range(n))
    with_p = [m for m in monos if not mono_divides(p, m)] + [p]
    colon = [tuple(max(x - y, 0) for x, y in zip(m, p)) for m in monos]
    left = _kpoly_pivot(with_p, limit)
    right = _kpoly_pivot(colon, limit)
    return _padd(left, right, 1, e)


def _pmul(poly, m):
    # poly * (1 - t^deg m)
    return _padd(poly, poly, -1, mono_degree(m))


def hilbert_series_monomial(ideal: IdealPresentation | Sequence[Monomial], n: int | None = None,
                            limit: int = IE_LIMIT) -> HilbertSeries:
    """Hilbert series of a monomial ideal.

    The K-polynomial of S/I comes from inclusion-exclusion over lcms of
    generator subsets when there are at most ``limit`` generators, otherwise
    from pivoting on a variable power p: K(S/I) = K(S/(I+p)) + t^deg(p) K(S/(I:p)).
    """
    if isinstance(ideal, IdealPresentation):
        if ideal.kind != MONOMIAL:
            raise ValueError("hilbert_series_monomial needs a monomial ideal")
        monos = ideal.exponents()
        n = ideal.ring.n
    else:
        monos = [tuple(m) for m in ideal]
        n = len(monos[0]) if n is None else n
    quot = _trim_poly(_kpoly_pivot(list(monos), limit))
    num = _trim_poly(_padd([1], quot, -1))
    return HilbertSeries(num, quot, n)


def euler_characteristic(res: Resolution) -> tuple[int, ...]:
    out: list[int] = []
    for i, F in enumerate(res.modules):
        for a in F.shifts:
            out = _padd(out, [0] * a + [1], -1 if i % 2 else 1)
    return _trim_poly(out)


def check_euler(res: Resolution, ideal: IdealPresentation) -> CheckResult:
    """Alternating graded ranks must equal the K-polynomial of I."""
    got = euler_characteristic(res)
    want = hilbert_series_monomial(ideal).numerator
    ok = got == want
    return CheckResult("euler", ok, {} if ok else {"resolution": format_tpoly(got),
                                                   "hilbert": format_tpoly(want)})


# Degreewise exactness

def check_exactness_degreewise(res: Resolution, e_max: int | None = None) -> CheckResult:
    """Homology vanishes in every degree up to ``e_max`` (default d + pd + 2).

    Failure ``(i, e)`` means the image of ``delta_i`` misses part of the
    kernel of ``delta_{i-1}`` in degree e (``delta_0`` is the augmentation,
    ``delta_{p+1} = 0``).  This is a bounded-degree certificate.
    """
    if not res.modules:
        return CheckResult("exactness", True, note="empty resolution")
    p = res.length
    if e_max is None:
        e_max = res.d + p + 2
    ring = res.ring
    n = ring.n
    field = ring.field
    maps: dict[int, GradedMap] = {i: res.differential(i) for i in range(1, p + 1)}
    aug = res.augmentation_map()
    if aug is not None:
        maps[0] = aug
    first = 1 if aug is not None else 2
    lo = min(min(F.shifts) for F in res.modules if F.rank)
    rank_cache: dict = {}

    def map_rank(i, e):
        if i not in maps:
            return 0
        key = (i, e)
        if key not in rank_cache:
            piece = graded_piece(maps[i], e)
            rank_cache[key] = rank(piece.matrix, len(piece.col_basis), field)
        return rank_cache[key]

    for i in range(first, p + 2):
        F = res.modules[i - 1]
        for e in range(lo, e_max + 1):
            kernel_dim = F.dim(n, e) - map_rank(i - 1, e)
            image_dim = map_rank(i, e)
            if kernel_dim != image_dim:
                return CheckResult("exactness", False,
                                   {"i": i, "e": e, "kernel": kernel_dim, "image": image_dim},
                                   note=f"bounded-degree certificate up to {e_max}")
    return CheckResult("exactness", True, note=f"bounded-degree certificate up to {e_max}")


# Brute-force minimal resolution

class _Span:
    """Incrementally echelonized span of vectors; plain field arithmetic."""

    def __init__(self, field):
        self.field = field
        self.rows: dict[int, list] = {}

    def add(self, v) -> bool:
        f = self.field
        v = list(v)
        for c, row in self.rows.items():
            a = v[c]
            if a:
                v = [f(x - a * y) for x, y in zip(v, row)]
        for c, a in enumerate(v):
            if a:
                inv = f.inv(a)
                row = [f(x * inv) for x in v]
                for c2, other in self.rows.items():
                    b = other[c]
                    if b:
                        self.rows[c2] = [f(x - b * y) for x, y in zip(other, row)]
                self.rows[c] = row
                return True
        return False

    def __len__(self):
        return len(self.rows)


def bruteforce_minimal_resolution(ideal: IdealPresentation, position_bound: int | None = None,
                                  degree_bound: int | None = None) -> BettiTable:
    """Graded Betti numbers by degree-by-degree syzygy computation.

    At each position the kernel of the current map is computed in every
    degree up to ``degree_bound``; new minimal generators are kernel vectors
    outside the span of monomial multiples of those already chosen.  The
    default degree bound for monomial ideals is the degree of the lcm of all
    generators, which bounds every Taylor-resolution shift.
    """
    ring = ideal.ring
    n = ring.n
    field = ring.field
    if position_bound is None:
        position_bound = n
    if degree_bound is None:
        if ideal.kind == MONOMIAL:
            top = (0,) * n
            for m in ideal.exponents():
                top = mono_lcm(top, m)
            degree_bound = mono_degree(top)
        else:
            degree_bound = ideal.d + n + 1
    betti = {(0, ideal.d): ideal.m}
    phi = GradedMap(ring, GradedFreeModule([ideal.d] * ideal.m), GradedFreeModule([0]),
                    {(0, j): g for j, g in enumerate(ideal.generators)})
    for i in range(1, position_bound + 1):
        src = phi.source
        gens: list[tuple[int, list]] = []
        for e in range(min(src.shifts), degree_bound + 1):
            piece = graded_piece(phi, e)
            ker = kernel_basis(piece.matrix, len(piece.col_basis), field)
            if not ker:
                continue
            span = _Span(field)
            for s, vec in gens:
                for mono in monomials_of_degree(n, e - s):
                    span.add(vector_to_coords(ring, src, [p.mul_monomial(mono) for p in vec], e))
            for v in ker:
                if span.add(v):
                    gens.append((e, coords_to_vector(ring, src, v, e)))
                    betti[(i, e)] = betti.get((i, e), 0) + 1
        if not gens:
            break
        new = GradedFreeModule(s for s, _ in gens)
        entries = {(r, c): p for c, (_, vec) in enumerate(gens) for r, p in enumerate(vec) if p}
        phi = GradedMap(ring, new, src, entries)
    return BettiTable(betti)


# Reports

@dataclass
class VerificationReport:
    checks: list[CheckResult]
    betti: BettiTable
    pd: int
    q: int | None = None
    provisional: bool = False

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "pd": self.pd,
            "q": self.q,
            "provisional": self.provisional,
            "betti": self.betti.to_json(),
            "checks": [c.to_json() for c in self.checks],
        }


def verify_resolution(res: Resolution, ideal: IdealPresentation, cert: ColonCertificate | None = None,
                      e_max: int | None = None, degreewise: bool | None = None) -> VerificationReport:
    """Run every applicable check.

    Monomial ideals get the Euler/Hilbert identity; other kinds get degreewise
    exactness (also run for monomial ideals when ``degreewise`` is true).
    """
    checks = [
        check_augmentation(res, ideal),
        check_complex(res),
        check_linear_and_minimal(res, ideal.d),
    ]
    if ideal.kind == MONOMIAL:
        checks.append(check_euler(res, ideal))
    if degreewise or (degreewise is None and ideal.kind != MONOMIAL):
        checks.append(check_exactness_degreewise(res, e_max))
    if cert is not None:
        checks.append(check_pd(res, cert))
        checks.append(check_betti_recurrence(res, cert))
    return VerificationReport(
        checks=checks,
        betti=betti_from_resolution(res),
        pd=res.length,
        q=cert.q_max if cert else None,
        provisional=bool(cert and cert.provisional),
    )
