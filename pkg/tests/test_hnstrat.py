import itertools
from fractions import Fraction

import pytest

from adlv.errors import NotInBGmu
from adlv.hnstrat import (hn_classify, in_B_G_mu, kernel_ambiguity, mu_bar, reduce_to_indecomposable,
                          split_central_factors)
from adlv.isocrystal import is_basic, make_b, normalize, superbasic_standard_form
from adlv.presets import gl, gu, product, res_gl
from adlv.survey import configurations, minuscule_dominant

half = Fraction(1, 2)


def test_mu_bar_examples():
    assert mu_bar(gl(3), (1, 0, 0)) == (1, 0, 0)
    assert mu_bar(res_gl(1, 2), (1, 0)) == (half, half)
    g = gu(5)
    mb = mu_bar(g, (1, 1, 0, 1, 0, 1))
    assert g.sigma_act(mb) == mb


def test_in_B_G_mu_examples():
    g = gl(2)
    b = make_b(g, (1, 0), (0,))
    cert = in_B_G_mu(b, (1, 0))
    assert cert.ok and cert.coefficients == {0: half}
    cert = in_B_G_mu(b, (2, 0))
    assert not cert.ok and not cert.kappa_ok
    cert = in_B_G_mu(make_b(gl(3), (2, -1, 0)), (1, 0, 0))
    assert cert.kappa_ok and not cert.ok
    assert cert.nu_dom == (2, 0, -1)


def test_hn_classify_examples():
    g = gl(4)
    b = superbasic_standard_form(g, {0, 2}, [1, 1])
    r = hn_classify(b, (1, 1, 0, 0))
    assert r.hn_class == "irreducible"
    assert r.coefficients == {0: half, 1: 1, 2: half}
    r = hn_classify(make_b(gl(2), (1, 1)), (1, 1))
    assert r.hn_class == "indecomposable-central" and r.central_check
    r = hn_classify(make_b(gl(2), (1, 0)), (1, 0))
    assert r.hn_class == "decomposable" and r.reduction_levi == frozenset()
    with pytest.raises(NotInBGmu):
        hn_classify(make_b(gl(2), (1, 1)), (1, 0))


def test_reduce_to_indecomposable_examples():
    M, b = reduce_to_indecomposable(make_b(gl(2), (1, 0)), (1, 0))
    assert M == frozenset() and b.lam == (1, 0)
    g = gl(2)
    M, _ = reduce_to_indecomposable(make_b(g, (1, 0), (0,)), (1, 0))
    assert M == g.full
    M, _ = reduce_to_indecomposable(make_b(gl(4), (1, 1, 0, 0)), (1, 1, 0, 0))
    assert M == frozenset({0, 2})


def test_split_central_factors_examples():
    g = gl(2)
    assert split_central_factors(make_b(g, (1, 0), (0,)), (1, 0)).central == ()
    split = split_central_factors(make_b(g, (1, 1)), (1, 1))
    assert split.irreducible == () and split.central == ((0,),)
    p = product(gl(2), gl(3))
    split = split_central_factors(make_b(p, (1, 0, 1, 1, 1), (0,)), (1, 0, 1, 1, 1))
    assert split.irreducible == ((0,),) and split.central == ((1, 2),)


def _all_b(datum, bound=1):
    for lam in itertools.product(range(-bound, bound + 1), repeat=datum.rank):
        for w in datum.weyl_group():
            yield make_b(datum, lam, w.word)


@pytest.mark.parametrize("datum", [gl(2), gl(3), res_gl(2, 2), gu(3)], ids=repr)
def test_condition_equivalence_on_basic_elements(datum):
    for mu in minuscule_dominant(datum):
        for b in _all_b(datum):
            if not is_basic(b) or not in_B_G_mu(b, mu).ok:
                continue
            r = hn_classify(b, mu)
            assert r.condition2 == r.condition3
            if r.condition3:
                assert r.condition1
            if r.hn_class.startswith("indecomposable"):
                assert r.hn_class == "indecomposable-central" and r.central_check


@pytest.mark.parametrize("datum", [gl(3), res_gl(2, 2)], ids=repr)
def test_mazur_monotone_in_mu(datum):
    mus = [m for m in itertools.product(range(-1, 3), repeat=datum.rank) if datum.is_dominant(m)]
    pairs = [(s, t) for s in mus for t in mus
             if s != t and sum(s) == sum(t) and datum.dominance(s, t, "integral")]
    assert pairs
    for b in _all_b(datum):
        ok = {}
        for s, t in pairs:
            if s not in ok:
                ok[s] = in_B_G_mu(b, s).ok
            if ok[s]:
                if t not in ok:
                    ok[t] = in_B_G_mu(b, t).ok
                assert ok[t]


@pytest.mark.parametrize("datum", [gl(3), gl(4), res_gl(2, 2), gu(4)], ids=repr)
def test_kappa_constant_on_levi_newton_fibre(datum):
    for cfg in configurations(datum):
        nb = normalize(cfg.b)
        for M in datum.sigma_stable_levis():
            if nb.levi <= M:
                assert kernel_ambiguity(nb, M)
