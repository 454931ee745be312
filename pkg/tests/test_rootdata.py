from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from adlv import intlin as la
from adlv.errors import DatumError
from adlv.presets import adjoint_of, build_root_datum, d4, gl, gsp, gu, res_gl, so_even, sp
from adlv.survey import survey_presets

PRESETS = survey_presets("full")


def test_gl2_basic_shape():
    g = gl(2)
    assert g.rank == 2 and g.simple_roots == ((1, -1),) and g.sigma_order == 1


def test_gu5_sigma_reverses_simple_roots():
    g = gu(5)
    assert g.sigma_perm == (3, 2, 1, 0)
    assert la.matmul(g.sigma, g.sigma) == la.identity(g.rank)
    for i, a in enumerate(g.simple_roots):
        assert g.sigma_root(a) == g.simple_roots[3 - i]


def test_restriction_of_scalars_swaps_factors():
    g = res_gl(2, 2)
    assert g.rank == 4 and g.sigma_order == 2
    assert g.sigma_root(g.simple_roots[0]) == g.simple_roots[1]
    assert g.sigma_act((1, 0, 0, 0)) == (0, 0, 1, 0)


def test_build_from_name_and_explicit_matrices():
    assert build_root_datum("GL3").rank == 3
    def same(a, b):
        return (a.name, a.simple_roots, a.simple_coroots, a.sigma) == (b.name, b.simple_roots, b.simple_coroots,
                                                                       b.sigma)

    assert same(build_root_datum("ResGL(2,2)"), res_gl(2, 2))
    assert same(build_root_datum("D4-adjoint-order3"), d4(3))
    assert same(build_root_datum('{"preset": "GU", "params": {"n": 3}}'), gu(3))
    explicit = build_root_datum({"cochar_rank": 2, "simple_roots": [[1, -1]],
                                 "simple_coroots": [[1, -1]]})
    assert len(explicit.roots) == 2
    with pytest.raises(DatumError):
        build_root_datum({"cochar_rank": 2, "simple_roots": [[1, -1]], "simple_coroots": [[1, 0]]})


@pytest.mark.parametrize("datum", PRESETS, ids=repr)
def test_root_pairs_with_own_coroot_to_two(datum):
    for a in datum.roots:
        assert datum.pairing(a, datum.coroot(a)) == 2
    assert datum.pairing(datum.roots[0], (0,) * datum.rank) == 0


def test_pairing_is_dot_product():
    assert gl(4).pairing((0, 1, -1, 0), (1, 0, 1, 0)) == -1


def test_dominant_rep_examples():
    g = gl(2)
    rep, w = g.dominant_rep((0, 1))
    assert rep == (1, 0) and w == g.simple_reflection(0)
    rep, w = g.dominant_rep((2, 1))
    assert rep == (2, 1) and w.is_identity()
    rep, w = gl(3).dominant_rep((0, 1, -1))
    assert rep == (1, 0, -1) and gl(3).length(w) == 1


def test_dominance_examples():
    g = gl(2)
    assert g.dominance((1, 0), (2, -1), "integral")
    assert g.dominance((Fraction(1, 2), Fraction(1, 2)), (1, 0), "rational")
    with pytest.raises(ValueError):
        g.dominance((Fraction(1, 2), Fraction(1, 2)), (1, 0), "integral")
    h = gl(3)
    # (0,1,0) <= (1,0,0) holds: the difference is the simple coroot e1 - e2.
    assert h.dominance((0, 1, 0), (1, 0, 0), "integral")
    assert not h.dominance((1, 0, 0), (0, 1, 0), "integral")
    assert not h.dominance((1, 0, 0), (0, 0, 1), "integral")


def test_norms_examples():
    assert res_gl(2, 2).norms((1, -1, -1, 1)) == (2, 0)
    assert gl(3).norms((1, 0, -1)) == (2, 2)
    assert gl(3).norms((0, 0, 0)) == (0, 0)


def test_longest_element_examples():
    g = gl(2)
    assert g.longest_element(()).is_identity()
    assert g.longest_element(g.full) == g.simple_reflection(0)
    h = gl(4)
    assert h.longest_element({0, 2}) == h.simple_reflection(0) * h.simple_reflection(2)


def test_closure_examples():
    g = gsp(2)
    short, long_ = g.simple_roots
    full = g.closed_symmetric_closure([short, la.vadd(short, long_)])
    assert full == frozenset(g.roots)
    assert la.vadd(la.vscale(2, short), long_) in full
    longs = {g.weyl_act_root(w, long_) for w in g.weyl_group()}
    long_sub = g.closed_symmetric_closure(longs)
    assert len(long_sub) == 4
    assert len(g.subsystem_components(long_sub)) == 2
    assert g.subsystem_basis(long_sub) == frozenset(a for a in long_sub if g.is_positive(a))
    assert g.closed_symmetric_closure(g.simple_roots) == frozenset(g.roots)


def test_subsystem_basis_examples():
    g = gu(5)
    s = g.closed_symmetric_closure(g.simple_roots)
    assert g.subsystem_basis(s) == frozenset(g.simple_roots)
    M = {0, 3}
    assert g.subsystem_basis(g.levi_roots(M)) == frozenset(g.simple_roots[i] for i in M)


def test_orthogonal_decomposition_examples():
    assert gl(3).orthogonal_decomposition((1, 1, 0), (0, 1, 1)) == [(1, 0, -1)]
    assert gl(3).orthogonal_decomposition((1, 0, 0), (1, 0, 0)) == []
    out = gl(4).orthogonal_decomposition((1, 0, 1, 0), (0, 1, 0, 1))
    assert sorted(out) == [(0, 0, 1, -1), (1, -1, 0, 0)]


@pytest.mark.parametrize("datum", PRESETS, ids=repr)
def test_orbit_pairing_values(datum):
    """For a root and another member of its Frobenius orbit the pairing is 0 or -1."""
    for a in datum.roots:
        for b in {datum.sigma_root(a, k) for k in range(1, datum.sigma_order)} - {a}:
            v = datum.pairing(a, datum.coroot(b))
            assert v in (0, -1)


def test_minus_one_only_for_even_type_a():
    hits = {}
    for datum in PRESETS:
        for a in datum.roots:
            for b in {datum.sigma_root(a, k) for k in range(1, datum.sigma_order)} - {a}:
                if datum.pairing(a, datum.coroot(b)) == -1:
                    hits[repr(datum)] = True
    assert set(hits) <= {repr(gu(3)), repr(gu(5))}
    assert repr(gu(5)) in hits and repr(gu(3)) in hits


def test_odd_unitary_middle_index_rule():
    """In GU(2n+1) the pairing <a, sigma a coroot> is -1 iff e_i - e_j touches the middle index."""
    for n, g in ((1, gu(3)), (2, gu(5))):
        size = 2 * n + 1
        for a in g.roots:
            i = next(k for k in range(size) if a[k] == 1) if 1 in a[:size] else None
            j = next(k for k in range(size) if a[k] == -1) if -1 in a[:size] else None
            tau = g.sigma_root(a)
            if tau == a:
                continue
            v = g.pairing(a, g.coroot(tau))
            assert (v == -1) == (n in (i, j))


@pytest.mark.parametrize("datum", PRESETS, ids=repr)
def test_negative_pairing_sums_are_roots(datum):
    roots = set(datum.roots)
    for a in datum.roots:
        for b in datum.roots:
            if a != la.vscale(-1, b) and datum.pairing(a, datum.coroot(b)) < 0:
                assert la.vadd(a, b) in roots


@pytest.mark.parametrize("datum", [gl(4), gsp(2), d4(3), gu(5), sp(3)], ids=repr)
@given(data=st.data())
def test_regroup_postcondition(datum, data):
    terms = data.draw(st.lists(st.sampled_from(datum.roots), min_size=0, max_size=8))
    out = datum.regroup(terms)
    total = tuple(sum(col) for col in zip(*terms)) if terms else (0,) * len(datum.roots[0])
    got = tuple(sum(col) for col in zip(*out)) if out else (0,) * len(datum.roots[0])
    assert got == total
    for i, x in enumerate(out):
        for y in out[i + 1:]:
            assert datum.pairing(x, datum.coroot(y)) >= 0


@pytest.mark.parametrize("datum", [gl(3), gsp(2), d4(1)], ids=repr)
@given(data=st.data())
def test_dominance_is_partial_order(datum, data):
    vec = st.tuples(*[st.integers(-2, 2)] * datum.rank)
    x, y, z = data.draw(vec), data.draw(vec), data.draw(vec)
    assert datum.dominance(x, x)
    if datum.dominance(x, y) and datum.dominance(y, x):
        assert x == y
    if datum.dominance(x, y) and datum.dominance(y, z):
        assert datum.dominance(x, z)


@pytest.mark.parametrize("datum", [gl(4), gsp(2), d4(3), adjoint_of(gl(3)), so_even(4, True)], ids=repr)
@given(data=st.data())
def test_dominant_rep_idempotent(datum, data):
    lam = data.draw(st.tuples(*[st.integers(-3, 3)] * datum.rank))
    rep, w = datum.dominant_rep(lam)
    assert datum.is_dominant(rep) and w.act(lam) == rep
    again, w2 = datum.dominant_rep(rep)
    assert again == rep and w2.is_identity()


@pytest.mark.parametrize("datum", PRESETS, ids=repr)
def test_weyl_group_order_and_words(datum):
    w = datum.weyl_group()
    assert len(set(w)) == len(w)
    for x in w[:50]:
        assert datum.weyl_from_word(x.word) == x
