"""Independent oracles and the mutation catalogue shared by the tests."""

import itertools
from math import comb

import sympy

from lqres.modules import GradedFreeModule, GradedMap
from lqres.poly import mono_divides, monomials_of_degree
from lqres.resolution import Resolution


def in_monomial_ideal(m, gens):
    return any(mono_divides(g, m) for g in gens)


def brute_colon(prefix, fk, max_degree):
    """Minimal generators of <prefix> : fk by enumerating monomials g with g*fk in <prefix>."""
    n = len(fk)
    members = []
    for e in range(max_degree + 1):
        for g in monomials_of_degree(n, e):
            prod = tuple(a + b for a, b in zip(g, fk))
            if in_monomial_ideal(prod, prefix):
                members.append(g)
    minimal = [g for g in members if not any(h != g and mono_divides(h, g) for h in members)]
    return sorted(minimal, key=lambda m: (sum(m), tuple(-x for x in m)))


def brute_is_lq_order(monos):
    for k in range(1, len(monos)):
        d = sum(monos[k])
        if any(sum(g) != 1 for g in brute_colon(monos[:k], monos[k], d)):
            return False
    return True


def brute_has_lq_order(monos):
    return any(brute_is_lq_order(list(p)) for p in itertools.permutations(monos))


def hilbert_function_quotient(gens, n, e):
    """# degree-e monomials outside the monomial ideal."""
    return sum(1 for m in monomials_of_degree(n, e) if not in_monomial_ideal(m, gens))


def series_coefficients(numerator, n, upto):
    """Coefficients of numerator(t) / (1-t)^n up to t^upto."""
    out = []
    for e in range(upto + 1):
        out.append(sum(c * comb(e - i + n - 1, n - 1) for i, c in enumerate(numerator) if i <= e))
    return out


def to_sympy(poly, symbols):
    expr = sympy.Integer(0)
    for m, c in poly.terms.items():
        term = sympy.Rational(c.numerator, c.denominator) if hasattr(c, "numerator") else sympy.Integer(c)
        for s, e in zip(symbols, m):
            term *= s ** e
        expr += term
    return expr


def map_to_sympy(f: GradedMap, symbols):
    rows, cols = f.shape
    return sympy.Matrix(rows, cols, lambda i, j: to_sympy(f.entry(i, j), symbols))


# mutation catalogue: each returns a new Resolution

def sign_flip(res: Resolution) -> Resolution:
    delta = res.differentials[0]
    key = min(delta.entries)
    entries = dict(delta.entries)
    entries[key] = -entries[key]
    new = GradedMap(res.ring, delta.source, delta.target, entries)
    return Resolution(res.ring, res.d, res.modules, (new,) + res.differentials[1:], res.augmentation)


def entry_deletion(res: Resolution) -> Resolution:
    """Delete the last basis element of F_1: a column of delta_1 and a row of delta_2."""
    F1 = res.modules[1]
    j = F1.rank - 1
    newF1 = GradedFreeModule(F1.shifts[:j])
    d1 = res.differentials[0]
    d1n = GradedMap(res.ring, newF1, d1.target,
                    {(r, c): p for (r, c), p in d1.entries.items() if c != j})
    diffs = [d1n]
    if res.length >= 2:
        d2 = res.differentials[1]
        diffs.append(GradedMap(res.ring, d2.source, newF1,
                               {(r, c): p for (r, c), p in d2.entries.items() if r != j}))
        diffs.extend(res.differentials[2:])
    modules = (res.modules[0], newF1) + res.modules[2:]
    return Resolution(res.ring, res.d, modules, tuple(diffs), res.augmentation)


def shift_bump(res: Resolution) -> Resolution:
    """Append a generator of shift d+p+1 to the last module, mapping to zero."""
    p = res.length
    last = res.modules[p]
    bumped = GradedFreeModule(last.shifts + (res.d + p + 1,))
    delta = res.differentials[p - 1]
    new = GradedMap(res.ring, bumped, delta.target, delta.entries)
    modules = res.modules[:p] + (bumped,)
    return Resolution(res.ring, res.d, modules, res.differentials[:p - 1] + (new,), res.augmentation)


def rank_pad(res: Resolution) -> Resolution:
    """Append a new module F_{p+1} = S(-(d+p+1)) with the zero map."""
    p = res.length
    extra = GradedFreeModule([res.d + p + 1])
    zero = GradedMap(res.ring, extra, res.modules[p])
    return Resolution(res.ring, res.d, res.modules + (extra,), res.differentials + (zero,),
                      res.augmentation)


MUTATIONS = {
    "sign_flip": (sign_flip, "complex"),
    "entry_deletion": (entry_deletion, "exactness"),
    "shift_bump": (shift_bump, "linear_minimal"),
    "rank_pad": (rank_pad, "euler"),
}


def all_monomial_sets(n, d, m):
    pool = monomials_of_degree(n, d)
    return itertools.combinations(pool, m)
