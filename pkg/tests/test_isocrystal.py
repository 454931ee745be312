from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from adlv.errors import PreconditionError
from adlv.isocrystal import (centralizer_levi, conjugate, is_basic, is_superbasic, kottwitz_point,
                             make_b, newton_point, normalize, superbasic_standard_form)
from adlv.presets import d4, gl, gsp, gu, res_gl, torus
from adlv.survey import survey_presets

half = Fraction(1, 2)
third = Fraction(1, 3)


def test_newton_point_examples():
    g = gl(2)
    assert newton_point(make_b(g, (1, 0), (0,))).nu == (half, half)
    assert newton_point(make_b(g, (2, -1))).nu == (2, -1)
    assert newton_point(make_b(gl(3), (1, 0, 0), (0, 1))).nu == (third, third, third)


def test_kottwitz_point_examples():
    assert kottwitz_point(make_b(gl(2), (1, 0))) == (1,)
    assert kottwitz_point(make_b(gl(3), (1, -1, 0), (0, 1))) == (0,)
    swap = torus(2, ((0, 1), (1, 0)))
    assert kottwitz_point(make_b(swap, (1, 0))) == (1,)


def test_basic_and_centralizer_examples():
    g = gl(2)
    b = make_b(g, (1, 0), (0,))
    assert is_basic(b) and centralizer_levi(b) == g.full
    split = make_b(g, (1, 0))
    assert not is_basic(split) and centralizer_levi(split) == frozenset()
    assert is_basic(make_b(gl(3), (1, 1, 1)))


def test_superbasic_examples():
    g = gl(2)
    assert is_superbasic(make_b(g, (1, 0), (0,)), g.full)
    assert not is_superbasic(make_b(g, (1, 1), (0,)), g.full)
    assert is_superbasic(make_b(g, (3, -1)), ())


def test_standard_form_examples():
    g = gl(2)
    b = superbasic_standard_form(g, g.full, [1])
    assert b.lam == (1, 0) and b.w == g.simple_reflection(0)
    h = gl(3)
    b3 = superbasic_standard_form(h, h.full, [1])
    assert b3.lam == (1, 0, 0)
    assert b3.w.act((1, 0, 0)) == (0, 1, 0) and b3.w.act((0, 0, 1)) == (1, 0, 0)
    # a factor of size one with m = 0 contributes nothing
    b4 = superbasic_standard_form(h, {0}, [1, 0])
    assert b4.lam == (1, 0, 0) and b4.w == h.simple_reflection(0)
    with pytest.raises(PreconditionError):
        superbasic_standard_form(g, g.full, [2])


def generated_b(datum, data, bound=1):
    lam = data.draw(st.tuples(*[st.integers(-bound, bound)] * datum.rank))
    w = data.draw(st.sampled_from(datum.weyl_group()))
    return make_b(datum, lam, w.word)


SAMPLE = [gl(3), gl(4), res_gl(2, 2), gu(3), gu(4), gsp(2), d4(3)]


@pytest.mark.parametrize("datum", SAMPLE, ids=repr)
@given(data=st.data())
def test_newton_point_is_invariant_and_dominant(datum, data):
    nu = newton_point(generated_b(datum, data)).nu
    assert datum.is_dominant(nu)
    assert datum.sigma_act(nu) == nu


@pytest.mark.parametrize("datum", SAMPLE, ids=repr)
@given(data=st.data())
def test_conjugation_keeps_newton_point(datum, data):
    b = generated_b(datum, data)
    u = data.draw(st.sampled_from(datum.weyl_group()))
    c = conjugate(b, u)
    assert newton_point(c).nu == newton_point(b).nu
    assert kottwitz_point(c) == kottwitz_point(b)


@pytest.mark.parametrize("datum", SAMPLE, ids=repr)
@given(data=st.data())
def test_normalize_keeps_invariants(datum, data):
    b = generated_b(datum, data)
    nb = normalize(b)
    assert newton_point(nb).nu == newton_point(b).nu
    assert kottwitz_point(nb) == kottwitz_point(b)


@pytest.mark.parametrize("datum", survey_presets(), ids=repr)
def test_superbasic_implies_basic(datum):
    for L in datum.sigma_stable_levis():
        for w in datum.weyl_group(L)[:12]:
            for lam in [(0,) * datum.rank, tuple(1 if i == 0 else 0 for i in range(datum.rank))]:
                b = make_b(datum, lam, w.word, L)
                try:
                    sb = is_superbasic(b, L)
                except Exception:
                    continue
                if sb:
                    assert is_basic(b, L)


@pytest.mark.parametrize("datum", [gl(2), gl(3), res_gl(2, 2), gu(3)], ids=repr)
def test_kottwitz_point_determines_basic_class(datum):
    import itertools
    seen = {}
    for lam in itertools.product(range(-1, 2), repeat=datum.rank):
        for w in datum.weyl_group():
            b = make_b(datum, lam, w.word)
            if not is_basic(b):
                continue
            k = kottwitz_point(b)
            nu = newton_point(b).nu
            assert seen.setdefault(k, nu) == nu
