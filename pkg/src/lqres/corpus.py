"""Test families with known linear-quotients structure."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .field import QQ, Field
from .ideals import (
    GENERAL,
    MONOMIAL,
    IdealError,
    IdealPresentation,
    find_lq_order,
    make_ideal,
)
from .linalg import rank
from .poly import Polynomial, Ring, monomials_of_degree


def power_ideal(n: int, d: int, field: Field = QQ) -> IdealPresentation:
    """All degree-d monomials in n variables, lex order."""
    ring = Ring(n, field)
    return make_ideal(ring, [ring.monomial(m) for m in monomials_of_degree(n, d)], MONOMIAL)


def squarefree_veronese(n: int, d: int, field: Field = QQ) -> IdealPresentation:
    """All squarefree degree-d monomials in n variables, lex order."""
    if not 1 <= d <= n:
        raise ValueError("need 1 <= d <= n")
    ring = Ring(n, field)
    monos = [m for m in monomials_of_degree(n, d) if max(m) == 1]
    return make_ideal(ring, [ring.monomial(m) for m in monos], MONOMIAL)


@dataclass(frozen=True)
class SimplicialComplexFacets:
    """Facets on vertices 1..n; ``shelling`` is an optional facet order (0-based)."""

    n: int
    facets: tuple[frozenset, ...]
    shelling: tuple[int, ...] | None = None

    def __init__(self, n: int, facets, shelling=None):
        fs = tuple(frozenset(f) for f in facets)
        for f in fs:
            if not f <= set(range(1, n + 1)):
                raise ValueError(f"facet {sorted(f)} uses vertices outside 1..{n}")
        for a, b in itertools.permutations(fs, 2):
            if a <= b:
                raise ValueError(f"facet {sorted(a)} is contained in {sorted(b)}")
        if shelling is not None and sorted(shelling) != list(range(len(fs))):
            raise ValueError("shelling must be a permutation of the facets")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "facets", fs)
        object.__setattr__(self, "shelling", tuple(shelling) if shelling is not None else None)


def is_shelling(facets: Sequence[frozenset]) -> bool:
    """Whether the facet sequence is a shelling order (pure complexes)."""
    for k in range(1, len(facets)):
        Fk = facets[k]
        ridges = [facets[s] & Fk for s in range(k) if len(facets[s] & Fk) == len(Fk) - 1]
        for t in range(k):
            inter = facets[t] & Fk
            if not any(inter <= r for r in ridges):
                return False
    return True


def find_shelling(cx: SimplicialComplexFacets, limit: int = 6) -> tuple[int, ...] | None:
    """Exhaustive shelling search, only for tiny complexes."""
    if len(cx.facets) > limit:
        raise ValueError(f"exhaustive shelling search is limited to {limit} facets")
    for perm in itertools.permutations(range(len(cx.facets))):
        if is_shelling([cx.facets[i] for i in perm]):
            return perm
    return None


def alexander_dual_ideal(cx: SimplicialComplexFacets, field: Field = QQ) -> IdealPresentation:
    """Generators ``x^(complement of F)`` for the facets F, in shelling order.

    This is the Stanley-Reisner ideal of the Alexander dual; a shelling of
    the complex gives a linear-quotients order, which is certified downstream.
    """
    sizes = {len(f) for f in cx.facets}
    if len(sizes) != 1:
        raise IdealError("facets of mixed sizes give an ideal in several degrees")
    if sizes == {cx.n}:
        raise IdealError("the full simplex gives the unit ideal")
    ring = Ring(cx.n, field)
    order = cx.shelling if cx.shelling is not None else range(len(cx.facets))
    gens = []
    for i in order:
        F = cx.facets[i]
        gens.append(ring.monomial(tuple(0 if v + 1 in F else 1 for v in range(cx.n))))
    return make_ideal(ring, gens, MONOMIAL)


def random_monomial_ideal(n: int, d: int, m: int, seed: int, field: Field = QQ) -> IdealPresentation:
    """One seeded draw of m distinct degree-d monomials, in draw order."""
    pool = monomials_of_degree(n, d)
    if m > len(pool):
        raise ValueError(f"only {len(pool)} monomials of degree {d} in {n} variables")
    rng = random.Random(seed)
    ring = Ring(n, field)
    return make_ideal(ring, [ring.monomial(x) for x in rng.sample(pool, m)], MONOMIAL)


def random_lq_ideal(n: int, d: int, m: int, seed: int, field: Field = QQ,
                    max_attempts: int = 500) -> IdealPresentation | None:
    """Rejection sampling of monomial ideals with linear quotients.

    Draw ``t`` uses seed ``(seed, t)``; the first draw with a linear-quotients
    order is returned in that order.  ``None`` when every attempt is rejected.
    """
    for t in range(max_attempts):
        ideal = random_monomial_ideal(n, d, m, _subseed(seed, t), field)
        found = find_lq_order(ideal)
        if found.found:
            return found.ideal
    return None


def random_non_lq_ideal(n: int, d: int, m: int, seed: int, field: Field = QQ,
                        max_attempts: int = 500) -> IdealPresentation | None:
    """First seeded draw that has no linear-quotients order (exhaustive check)."""
    if m > 8:
        raise ValueError("non-LQ draws need the exhaustive search (m <= 8)")
    for t in range(max_attempts):
        ideal = random_monomial_ideal(n, d, m, _subseed(seed, t), field)
        if not find_lq_order(ideal, "exhaustive").found:
            return ideal
    return None


def _subseed(seed: int, t: int) -> int:
    return seed * 1_000_003 + t


def random_linear_forms(n: int, r: int, seed: int, field: Field = QQ,
                        bound: int = 3) -> list[Polynomial]:
    """r independent linear forms with coefficients a/b, |a| <= bound, 1 <= b <= bound."""
    if r > n:
        raise ValueError("at most n independent linear forms exist")
    rng = random.Random(seed)
    ring = Ring(n, field)
    while True:
        rows = [[Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(n)]
                for _ in range(r)]
        coerced = [[field(c) for c in row] for row in rows]
        if rank(coerced, n, field) == r:
            return [ring.linear_form(row) for row in rows]


def random_invertible_matrix(n: int, rng: random.Random, field: Field = QQ, bound: int = 2):
    while True:
        A = [[field(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
        if rank(A, n, field) == n:
            return A


def substitute(p: Polynomial, forms: Sequence[Polynomial]) -> Polynomial:
    """``p(x_1 -> forms[0], ..., x_n -> forms[n-1])``."""
    ring = p.ring
    out = ring.zero()
    for mono, c in p.terms.items():
        term = ring.one().scale(c)
        for v, e in enumerate(mono):
            for _ in range(e):
                term = term * forms[v]
        out = out + term
    return out


def substituted_power_ideal(n: int, d: int, seed: int, field: Field = QQ) -> IdealPresentation:
    """``power_ideal(n, d)`` under a random invertible linear change of variables.

    The substitution is a ring automorphism, so the lex order keeps linear
    quotients; the result is of general kind.
    """
    rng = random.Random(seed)
    base = power_ideal(n, d, field)
    ring = base.ring
    A = random_invertible_matrix(n, rng, field)
    forms = [ring.linear_form(row) for row in A]
    gens = [substitute(g, forms) for g in base.generators]
    return make_ideal(ring, gens, GENERAL if d > 1 else None)


FAMILIES = ("power", "veronese", "random_lq", "random_non_lq", "alexander", "linear", "substituted")


def expand_record(record: dict, field: Field = QQ) -> IdealPresentation:
    """Build the ideal named by a manifest record ``{family, params, seed}``."""
    family = record["family"]
    params = dict(record.get("params", {}))
    seed = int(record.get("seed", 0))
    if family == "power":
        return power_ideal(params["n"], params["d"], field)
    if family == "veronese":
        return squarefree_veronese(params["n"], params["d"], field)
    if family == "random_lq":
        out = random_lq_ideal(params["n"], params["d"], params["m"], seed, field)
        if out is None:
            raise ValueError(f"no linear-quotients draw for {record}")
        return out
    if family == "random_non_lq":
        out = random_non_lq_ideal(params["n"], params["d"], params["m"], seed, field)
        if out is None:
            raise ValueError(f"no non-linear-quotients draw for {record}")
        return out
    if family == "alexander":
        cx = SimplicialComplexFacets(params["n"], params["facets"], params.get("shelling"))
        return alexander_dual_ideal(cx, field)
    if family == "linear":
        forms = random_linear_forms(params["n"], params["r"], seed, field)
        return make_ideal(forms[0].ring, forms)
    if family == "substituted":
        return substituted_power_ideal(params["n"], params["d"], seed, field)
    raise ValueError(f"unknown corpus family {family!r}")


def record_name(record: dict) -> str:
    params = record.get("params", {})
    parts = [record["family"]] + [f"{k}{v}" for k, v in sorted(params.items())
                                  if isinstance(v, (int, str))]
    if "seed" in record:
        parts.append(f"s{record['seed']}")
    return "_".join(parts)
