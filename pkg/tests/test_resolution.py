from math import comb

import pytest
import sympy

from lqres.corpus import power_ideal, random_linear_forms, random_lq_ideal, squarefree_veronese
from lqres.ideals import IdealError, certify_linear_quotients, make_ideal
from lqres.modules import GradedFreeModule, GradedMap, map_compose
from lqres.resolution import (
    ConstructionError,
    build_resolution,
    horseshoe_step,
    koszul_ideal_resolution,
    koszul_resolution,
    lift_through,
    linear_ideal_resolution,
    principal_resolution,
)
from lqres.verify import (
    betti_from_resolution,
    bruteforce_minimal_resolution,
    check_complex,
    check_exactness_degreewise,
    check_linear_and_minimal,
)

from helpers import map_to_sympy


def test_koszul_small_cases(R3):
    x, y, z = R3.gens()
    k1 = koszul_resolution(R3, [x], 0)
    assert k1.ranks == (1, 1)
    assert k1.differentials[0].entry(0, 0) == x
    k3 = koszul_resolution(R3, [x, y, z], 0)
    assert k3.ranks == (1, 3, 3, 1)
    assert [F.shifts[0] for F in k3.modules] == [0, 1, 2, 3]
    assert check_complex(k3)
    k0 = koszul_resolution(R3, [], 5)
    assert k0.ranks == (1,) and k0.modules[0].shifts == (5,)


def test_koszul_signs_follow_wedge_convention(R3):
    x, y, z = R3.gens()
    d2 = koszul_resolution(R3, [x, y, z]).differentials[1]
    # e_{01} -> l_0 e_1 - l_1 e_0 = x e_1 - y e_0
    assert d2.column(0) == [-y, x, R3.zero()]
    syms = sympy.symbols("x y z")
    d1 = koszul_resolution(R3, [x, y, z]).differentials[0]
    assert (map_to_sympy(d1, syms) * map_to_sympy(d2, syms)).expand() == sympy.zeros(1, 3)


def test_koszul_rejects_dependent_forms(R3):
    with pytest.raises(IdealError):
        koszul_resolution(R3, [R3.parse("x+y"), R3.parse("2*x+2*y")])


def test_linear_ideal_resolution_examples(R3):
    r1 = linear_ideal_resolution(make_ideal(R3, ["x"]))
    assert r1.ranks == (1,) and r1.length == 0
    r3 = linear_ideal_resolution(make_ideal(R3, ["x", "y", "z"]))
    assert r3.ranks == (3, 3, 1)
    kos = koszul_ideal_resolution(R3, R3.gens())
    assert kos.ranks == r3.ranks
    R2 = R3.__class__(["x", "y"])
    I = make_ideal(R2, ["x+y", "y"])
    r2 = linear_ideal_resolution(I)
    assert r2.ranks == (2, 1)
    assert all(p.degree == 1 for delta in r2.differentials for p in delta.entries.values())
    assert betti_from_resolution(r2) == bruteforce_minimal_resolution(I)


def test_lift_through_examples(R2):
    x, y = R2.gens()
    sigma = GradedMap(R2, GradedFreeModule([2]), GradedFreeModule([0]), {(0, 0): R2.parse("x^2")})
    assert lift_through(sigma, [[R2.parse("x^2*y")]]) == [[y]]
    sigma2 = GradedMap(R2, GradedFreeModule([2, 2]), GradedFreeModule([0]),
                       {(0, 0): R2.parse("x^2"), (0, 1): R2.parse("x*y")})
    assert lift_through(sigma2, [[R2.parse("x*y^2")]]) == [[R2.zero(), y]]
    assert lift_through(sigma2, [[R2.zero()]]) == [[R2.zero(), R2.zero()]]
    assert lift_through(sigma2, [[R2.parse("y^3")]]) == [None]


def test_horseshoe_two_generators(R2):
    x, y = R2.gens()
    resA = principal_resolution(R2.parse("x^2"))
    resC = koszul_resolution(R2, [x], 2)
    res = horseshoe_step(resA, resC, R2.parse("x*y"), fast=False)
    assert res.ranks == (2, 1)
    lam = res.differentials[0].column(0)
    assert lam == [-y, x]
    assert check_complex(res)
    fast = horseshoe_step(resA, resC, R2.parse("x*y"), fast=True)
    assert fast.differentials[0] == res.differentials[0]


def test_horseshoe_split_case(R2):
    resA = principal_resolution(R2.parse("x^2"))
    resC = koszul_resolution(R2, [], 2)
    res = horseshoe_step(resA, resC, R2.parse("y^2"))
    assert res.ranks == (2,) and res.length == 0


def test_three_steps_reproduce_koszul(R3):
    I = make_ideal(R3, ["x", "y", "z"])
    res = build_resolution(I, certify_linear_quotients(I))
    assert res.ranks == (3, 3, 1)
    assert res.ranks == koszul_ideal_resolution(R3, R3.gens()).ranks


def test_build_examples(R3):
    I = power_ideal(2, 2)
    res = build_resolution(I, certify_linear_quotients(I))
    assert res.ranks == (3, 2)
    assert res.modules[0].shifts == (2, 2, 2) and res.modules[1].shifts == (3, 3)
    assert res.length == 1
    assert betti_from_resolution(res) == bruteforce_minimal_resolution(I)
    J = make_ideal(R3, ["x*y", "x*z", "y*z"])
    cert = certify_linear_quotients(J)
    assert cert.q_values == (0, 1, 1)
    resJ = build_resolution(J, cert)
    assert resJ.ranks == (3, 2) and resJ.length == 1
    assert betti_from_resolution(resJ) == bruteforce_minimal_resolution(J)
    P = make_ideal(R3, ["x*y*z"])
    assert build_resolution(P, certify_linear_quotients(P)).ranks == (1,)


@pytest.mark.parametrize("ideal", [power_ideal(3, 2), power_ideal(2, 3), squarefree_veronese(4, 2),
                                   squarefree_veronese(5, 3), random_lq_ideal(4, 2, 6, 3)],
                         ids=["pow32", "pow23", "sqv42", "sqv53", "rand"])
def test_rank_recurrence(ideal):
    cert = certify_linear_quotients(ideal)
    trace = []
    res = build_resolution(ideal, cert, trace=trace)
    for k in range(1, ideal.m):
        prev, cur = trace[k - 1], trace[k]
        for i in range(len(cur)):
            before = prev[i] if i < len(prev) else 0
            assert cur[i] == before + comb(cert.q_values[k], i)
    assert res.ranks == trace[-1]


def test_fast_and_generic_paths_both_valid():
    I = power_ideal(3, 3)
    cert = certify_linear_quotients(I)
    for fast in (True, False):
        res = build_resolution(I, cert, fast=fast)
        assert check_complex(res) and check_linear_and_minimal(res, 3)
        assert check_exactness_degreewise(res)
        assert res.length == cert.q_max


def test_determinism():
    I = squarefree_veronese(5, 2)
    cert = certify_linear_quotients(I)
    a = build_resolution(I, cert)
    b = build_resolution(I, certify_linear_quotients(I))
    assert a.modules == b.modules
    assert all(x == y for x, y in zip(a.differentials, b.differentials))


def test_false_certificate_is_detected(R4):
    # a bogus colon (u = x for <xy> : zw) makes the lift impossible
    I = make_ideal(R4, ["x*y", "z*w"])
    from lqres.ideals import ColonCertificate
    bogus = ColonCertificate(forms=((), (R4.parse("x"),)), q_values=(0, 1), q_max=1)
    with pytest.raises(ConstructionError) as info:
        build_resolution(I, bogus, fast=False)
    assert info.value.k == 2 and info.value.i == 1
    with pytest.raises(ConstructionError):
        build_resolution(I, bogus, fast=True)


def test_incomplete_certificate_fails_exactness(R4):
    # linear part only (empty) for <xy> : zw: construction succeeds but is not exact
    I = make_ideal(R4, ["x*y", "z*w"])
    from lqres.ideals import ColonCertificate
    partial = ColonCertificate(forms=((), ()), q_values=(0, 0), q_max=0)
    res = build_resolution(I, partial)
    assert not check_exactness_degreewise(res)


def test_prime_field_build():
    from lqres.field import PrimeField
    I = power_ideal(3, 2, PrimeField(32003))
    res = build_resolution(I, certify_linear_quotients(I))
    assert res.ranks == (6, 8, 3)
    assert check_exactness_degreewise(res)


def test_general_forms_over_random_substitution():
    forms = random_linear_forms(4, 3, seed=2)
    I = make_ideal(forms[0].ring, forms)
    res = linear_ideal_resolution(I)
    assert res.ranks == (3, 3, 1)
    assert check_complex(res) and check_exactness_degreewise(res)
