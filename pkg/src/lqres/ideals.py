"""Ideal presentations, colon ideals and linear-quotients certificates."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .linalg import kernel_basis, rank, rref, solve_many
from .modules import GradedFreeModule, GradedMap, graded_piece, vector_to_coords
from .poly import (
    Monomial,
    Polynomial,
    Ring,
    mono_degree,
    mono_divides,
    mono_gcd,
    mono_quotient,
)

MONOMIAL = "monomial"
LINEAR = "linear-forms"
GENERAL = "general"

EXHAUSTIVE_LIMIT = 8


class IdealError(ValueError):
    """Invalid ideal presentation."""


class LinearQuotientsError(Exception):
    """The colon ideal at step ``k`` (1-based) is not generated by linear forms.

    ``witnesses`` lists colon elements of degree >= 2 that the linear part
    does not account for.
    """

    def __init__(self, k: int, witnesses: Sequence = (), message: str = ""):
        self.k = k
        self.witnesses = list(witnesses)
        super().__init__(message or f"linear quotients fails at k={k}")


@dataclass(frozen=True)
class IdealPresentation:
    ring: Ring
    generators: tuple[Polynomial, ...]
    d: int
    kind: str

    @property
    def m(self) -> int:
        return len(self.generators)

    def exponents(self) -> list[Monomial]:
        """Exponent vectors of a monomial presentation."""
        if self.kind != MONOMIAL:
            raise IdealError("not a monomial ideal")
        return [g.leading_monomial() for g in self.generators]

    def reordered(self, order: Sequence[int]) -> "IdealPresentation":
        if sorted(order) != list(range(self.m)):
            raise IdealError(f"{list(order)} is not a permutation of 0..{self.m - 1}")
        return IdealPresentation(self.ring, tuple(self.generators[i] for i in order), self.d, self.kind)

    def __str__(self):
        return "<" + ", ".join(str(g) for g in self.generators) + ">"


def make_ideal(ring: Ring, generators: Sequence[Polynomial | str], kind: str | None = None) -> IdealPresentation:
    """Validate generators and build a presentation.

    ``kind`` is detected when omitted: monomial if every generator is a single
    term, linear-forms if the degree is 1, general otherwise.
    """
    gens = [ring.parse(g) if isinstance(g, str) else g for g in generators]
    if not gens:
        raise IdealError("an ideal needs at least one generator")
    for g in gens:
        if g.ring != ring:
            raise IdealError("generator from a different ring")
        if g.is_zero():
            raise IdealError("zero generator")
    degrees = {g.degree for g in gens}
    if len(degrees) != 1:
        raise IdealError(f"generators have mixed degrees {sorted(degrees)}")
    d = degrees.pop()
    if d == 0:
        raise IdealError("constant generator: the ideal is the whole ring")
    if kind is None:
        kind = MONOMIAL if all(g.is_monomial() for g in gens) else (LINEAR if d == 1 else GENERAL)
    if kind == MONOMIAL:
        if not all(g.is_monomial() for g in gens):
            raise IdealError("monomial kind needs single-term generators")
        gens = [ring.monomial(g.leading_monomial()) for g in gens]
        monos = [g.leading_monomial() for g in gens]
        if len(set(monos)) != len(monos):
            raise IdealError("duplicate monomial generators; use minimalize_monomial")
    elif kind in (LINEAR, GENERAL):
        if kind == LINEAR and d != 1:
            raise IdealError("linear-forms kind needs degree 1")
        if not _independent(ring, gens, d):
            raise IdealError("generators are linearly dependent in degree d")
    else:
        raise IdealError(f"unknown kind {kind!r}")
    return IdealPresentation(ring, tuple(gens), d, kind)


def _independent(ring: Ring, gens: Sequence[Polynomial], d: int) -> bool:
    rows = [vector_to_coords(ring, GradedFreeModule([0]), [g], d) for g in gens]
    return rank(rows, len(rows[0]), ring.field) == len(gens)


def minimalize_monomial(ring: Ring, generators: Sequence[Polynomial | str]) -> IdealPresentation:
    """Drop repeated monomial generators, keeping first occurrences in order."""
    gens = [ring.parse(g) if isinstance(g, str) else g for g in generators]
    if any(g.is_zero() for g in gens):
        raise IdealError("zero generator")
    if not all(g.is_monomial() for g in gens):
        raise IdealError("monomial generators expected")
    seen = []
    for g in gens:
        m = g.leading_monomial()
        if m not in seen:
            seen.append(m)
    # same-degree monomials divide each other only when equal
    for a, b in itertools.permutations(seen, 2):
        if mono_divides(a, b):
            raise IdealError(f"generator {a} divides {b}")
    return make_ideal(ring, [ring.monomial(m) for m in seen], MONOMIAL)


def minimalize_monomials(monos) -> list[Monomial]:
    """Minimal generators of the monomial ideal spanned by ``monos``.

    Output is sorted by degree, then lex-descending.
    """
    uniq = sorted(set(monos), key=lambda m: (mono_degree(m), tuple(-e for e in m)))
    out: list[Monomial] = []
    for m in uniq:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


def colon_monomial(prefix: Sequence[Monomial], fk: Monomial) -> list[Monomial]:
    """Minimal monomial generators of ``<prefix> : fk``; ``[]`` is the zero ideal."""
    return minimalize_monomials(mono_quotient(f, mono_gcd(f, fk)) for f in prefix)


def _colon_piece(ring: Ring, prefix: Sequence[Polynomial], fk: Polynomial, e: int):
    """Kernel vectors, projected to S_e, of ``g*fk - sum h_t f_t`` in degree d+e."""
    n = ring.n
    d = fk.degree
    top = d + e
    S_top = GradedFreeModule([0])
    monos_e = ring.monomials(e)
    cols = []
    for mono in monos_e:
        cols.append(vector_to_coords(ring, S_top, [fk.mul_monomial(mono)], top))
    for f in prefix:
        for mono in monos_e:
            cols.append(vector_to_coords(ring, S_top, [f.mul_monomial(mono)], top))
    nrows = len(cols[0])
    mat = [[col[r] for col in cols] for r in range(nrows)]
    ker = kernel_basis(mat, len(cols), ring.field)
    proj = [v[: len(monos_e)] for v in ker]
    red, _ = rref(proj, len(monos_e), ring.field)
    return red, monos_e


def linear_part_of_colon(ring: Ring, prefix: Sequence[Polynomial], fk: Polynomial) -> list[Polynomial]:
    """Echelonized basis of ``{u in S_1 : u*fk in <prefix>}``."""
    if not prefix:
        return []
    red, monos = _colon_piece(ring, prefix, fk, 1)
    return [
        Polynomial(ring, {m: c for m, c in zip(monos, row) if c}) for row in red
    ]


def colon_dimension(ring: Ring, prefix: Sequence[Polynomial], fk: Polynomial, e: int) -> int:
    """``dim_K (<prefix> : fk)_e``."""
    if not prefix:
        return 0
    red, _ = _colon_piece(ring, prefix, fk, e)
    return len(red)


def _linear_span_dim(n: int, q: int, e: int) -> int:
    """Dimension in degree ``e`` of an ideal generated by ``q`` independent linear forms."""
    return comb(n + e - 1, e) - comb(n - q + e - 1, e)


@dataclass(frozen=True)
class ColonCertificate:
    """Linear generators of every colon ideal along a fixed order.

    ``forms[k-1]`` generates ``<f_1..f_{k-1}> : f_k``; ``q_values[0]`` is 0 by
    convention.  ``provisional`` marks certificates whose colon equality was
    only checked up to degree 2 (general kind).
    """

    forms: tuple[tuple[Polynomial, ...], ...]
    q_values: tuple[int, ...]
    q_max: int
    provisional: bool = False
    checked_degree: int | None = None

    @property
    def m(self) -> int:
        return len(self.forms)


def _monomial_colon_step(ideal: IdealPresentation, monos: Sequence[Monomial], k: int):
    colon = colon_monomial(monos[: k - 1], monos[k - 1])
    high = [g for g in colon if mono_degree(g) >= 2]
    if high:
        ring = ideal.ring
        raise LinearQuotientsError(k, [ring.monomial(g) for g in high])
    ring = ideal.ring
    return tuple(ring.monomial(g) for g in colon)


def _general_colon_step(ideal: IdealPresentation, k: int):
    ring = ideal.ring
    gens = ideal.generators
    prefix, fk = gens[: k - 1], gens[k - 1]
    forms = linear_part_of_colon(ring, prefix, fk)
    if k > 1:
        # a degree-2 colon element outside <V_k> refutes linear quotients
        have = colon_dimension(ring, prefix, fk, 2)
        want = _linear_span_dim(ring.n, len(forms), 2)
        if have != want:
            raise LinearQuotientsError(
                k, [], f"linear quotients fails at k={k}: colon has {have - want} "
                "quadratic generators beyond its linear part"
            )
    return tuple(forms)


def certify_linear_quotients(ideal: IdealPresentation, certificate=None) -> ColonCertificate:
    """Certify that the given generator order has linear quotients.

    Monomial ideals are decided exactly.  For other kinds the linear part of
    each colon is computed and the colon is compared with the ideal it
    generates in degree 2; for general kind the result is provisional and the
    resolution checks confirm it.  A user ``certificate`` (list, per k, of
    linear forms) is verified, never trusted.

    Raises :class:`LinearQuotientsError` naming the first failing k.
    """
    ring = ideal.ring
    m = ideal.m
    forms: list[tuple[Polynomial, ...]] = [()]
    if ideal.kind == MONOMIAL:
        monos = ideal.exponents()
        for k in range(2, m + 1):
            forms.append(_monomial_colon_step(ideal, monos, k))
    else:
        for k in range(2, m + 1):
            forms.append(_general_colon_step(ideal, k))
    if certificate is not None:
        forms = verify_user_certificate(ideal, certificate, forms)
    q_values = tuple(len(f) for f in forms)
    return ColonCertificate(
        forms=tuple(forms),
        q_values=q_values,
        q_max=max(q_values),
        provisional=ideal.kind == GENERAL,
        checked_degree=2 if ideal.kind == GENERAL else None,
    )


class CertificateError(ValueError):
    pass


def verify_user_certificate(ideal: IdealPresentation, certificate, computed):
    """Check a supplied certificate against the computed colon linear parts."""
    ring = ideal.ring
    m = ideal.m
    cert = [list(c) for c in certificate]
    if len(cert) == m - 1:
        cert = [[]] + cert
    if len(cert) != m:
        raise CertificateError(f"certificate has {len(cert)} entries, expected {m - 1} or {m}")
    out = [()]
    if cert[0]:
        raise CertificateError("the first colon ideal is zero; its certificate must be empty")
    for k in range(2, m + 1):
        us = [ring.parse(u) if isinstance(u, str) else u for u in cert[k - 1]]
        for u in us:
            if u.is_zero() or u.degree != 1:
                raise CertificateError(f"k={k}: {u} is not a nonzero linear form")
        if us:
            rows = [u.linear_coefficients() for u in us]
            if rank(rows, ring.n, ring.field) != len(us):
                raise CertificateError(f"k={k}: certificate forms are dependent")
        prefix = ideal.generators[: k - 1]
        fk = ideal.generators[k - 1]
        if not colon_contains(ring, prefix, fk, us):
            raise CertificateError(f"k={k}: a certificate form is not in the colon ideal")
        if len(us) != len(computed[k - 1]):
            raise CertificateError(
                f"k={k}: certificate spans {len(us)} forms, the colon's linear part has "
                f"dimension {len(computed[k - 1])}"
            )
        out.append(tuple(us))
    return out


def colon_contains(ring: Ring, prefix: Sequence[Polynomial], fk: Polynomial, forms) -> bool:
    """True when ``u*fk`` lies in ``<prefix>`` for every ``u`` in ``forms``."""
    if not forms:
        return True
    if not prefix:
        return False
    d = fk.degree
    top = d + forms[0].degree
    aug = GradedMap(ring, GradedFreeModule([d] * len(prefix)), GradedFreeModule([0]),
                    {(0, t): f for t, f in enumerate(prefix)})
    piece = graded_piece(aug, top)
    rhs = [vector_to_coords(ring, GradedFreeModule([0]), [u * fk], top) for u in forms]
    sols = solve_many(piece.matrix, len(piece.col_basis), rhs, ring.field)
    return all(s is not None for s in sols)


def height_of_linear_ideal(ideal: IdealPresentation) -> int:
    """Height of an ideal minimally generated by linear forms (= their number)."""
    if ideal.d != 1:
        raise IdealError("height_of_linear_ideal needs an ideal of linear forms")
    if not _independent(ideal.ring, ideal.generators, 1):
        raise IdealError("linear forms are dependent")
    return ideal.m


@dataclass
class OrderSearchResult:
    found: bool
    definitive: bool
    mode: str
    ideal: IdealPresentation | None = None
    order: tuple[int, ...] | None = None
    certificate: ColonCertificate | None = None
    failing_k: int | None = None


def _canonical_order(ideal: IdealPresentation) -> list[int]:
    if ideal.kind == MONOMIAL:
        monos = ideal.exponents()
        return sorted(range(ideal.m), key=lambda i: tuple(-e for e in monos[i]))
    return list(range(ideal.m))


def _step_is_linear(ideal: IdealPresentation, prefix: Sequence[int], nxt: int, cache: dict) -> bool:
    key = (frozenset(prefix), nxt)
    if key in cache:
        return cache[key]
    if not prefix:
        ok = True
    elif ideal.kind == MONOMIAL:
        monos = ideal.exponents()
        colon = colon_monomial([monos[i] for i in prefix], monos[nxt])
        ok = all(mono_degree(g) == 1 for g in colon)
    else:
        sub = IdealPresentation(ideal.ring, tuple(ideal.generators[i] for i in list(prefix) + [nxt]),
                                ideal.d, ideal.kind)
        try:
            _general_colon_step(sub, len(prefix) + 1)
            ok = True
        except LinearQuotientsError:
            ok = False
    cache[key] = ok
    return ok


def find_lq_order(ideal: IdealPresentation, mode: str = "auto") -> OrderSearchResult:
    """Search for a generator order with linear quotients.

    ``exhaustive`` (the ``auto`` choice for m <= 8) returns the first order in
    lexicographic order of permutations of the canonical generator list
    (lex-descending for monomial ideals, input order otherwise); its
    not-found is definitive.  ``greedy`` keeps appending the first unused
    generator, in input order, whose colon is linear; its not-found is
    inconclusive.
    """
    if mode == "auto":
        mode = "exhaustive" if ideal.m <= EXHAUSTIVE_LIMIT else "greedy"
    cache: dict = {}
    depth = [0]
    if mode == "exhaustive":
        base = _canonical_order(ideal)
        order = _dfs(ideal, base, [], cache, depth)
        definitive = True
    elif mode == "greedy":
        order = []
        remaining = list(range(ideal.m))
        while remaining:
            for i in remaining:
                if _step_is_linear(ideal, order, i, cache):
                    order.append(i)
                    remaining.remove(i)
                    break
            else:
                depth[0] = len(order)
                order = None
                break
        definitive = False
    else:
        raise ValueError(f"unknown order search mode {mode!r}")
    if order is None:
        return OrderSearchResult(False, definitive, mode, failing_k=depth[0] + 1)
    reordered = ideal.reordered(order)
    cert = certify_linear_quotients(reordered)
    return OrderSearchResult(True, True, mode, reordered, tuple(order), cert)


def _dfs(ideal, base, prefix, cache, depth):
    # depth[0] records the longest prefix that could not be extended
    if len(prefix) == len(base):
        return list(prefix)
    used = set(prefix)
    for i in base:
        if i in used:
            continue
        if _step_is_linear(ideal, prefix, i, cache):
            prefix.append(i)
            found = _dfs(ideal, base, prefix, cache, depth)
            if found is not None:
                return found
            prefix.pop()
    depth[0] = max(depth[0], len(prefix))
    return None
