import pytest

import invariants as inv
from adlv.connect import (ChainWitness, Step, adapted_modify, b_x, check_conjugators, check_refined,
                          convexity_chain, generation_check, is_adapted, is_connected, is_immediate,
                          iset_enumerate, minuscule_lift, minuscule_lift_search, omega_classify,
                          refine_immediate, validate_chain, w_x_compute, weyl_orbit_conjugators)
from adlv.errors import PreconditionError
from adlv.isocrystal import is_superbasic, make_b
from adlv.presets import d4, gl, gsp, gu, res_gl
from adlv.survey import configurations, minuscule_dominant, survey_presets

GU5_MU_X0 = (1, 1, 0, 1, 0, 1)
GU5_M = frozenset({0, 3})


def gu5_iset():
    g = gu(5)
    b0 = b_x(g, GU5_MU_X0, GU5_M)
    return iset_enumerate(g, g.dominant_rep(GU5_MU_X0)[0], b0, GU5_M)


def resgl22_iset():
    g = res_gl(2, 2)
    return iset_enumerate(g, (1, 0, 1, 0), make_b(g, (1, 0, 0, 1)), ())


def test_minuscule_lift_examples():
    g = gl(2)
    assert minuscule_lift(g, (1, 0), g.full) == (1, 0)
    assert minuscule_lift(g, (3, -2), g.full) == (1, 0)
    assert minuscule_lift(gl(3), (2, -1, 5), ()) == (2, -1, 5)
    assert minuscule_lift(gl(4), (2, 0, 1, 1), {0, 2}) == (1, 1, 1, 1)
    assert minuscule_lift(gl(4), (1, 0, 1, 0), {0, 2}) == (1, 0, 1, 0)


@pytest.mark.parametrize("datum", [gl(3), gl(4), gu(5), res_gl(2, 2)], ids=repr)
def test_lift_agrees_with_brute_force(datum):
    for M in datum.sigma_stable_levis():
        for v in inv.minuscule_cochars(datum, -1, 1)[:25]:
            found = minuscule_lift_search(datum, v, M)
            assert found == [minuscule_lift(datum, v, M)]


def test_w_x_examples():
    g = gl(2)
    assert w_x_compute(g, (1, 0), g.full) == g.simple_reflection(0)
    assert w_x_compute(g, (1, 1), g.full).is_identity()
    h = gl(4)
    assert w_x_compute(h, (1, 0, 1, 0), {0, 2}) == h.simple_reflection(0) * h.simple_reflection(2)


def test_iset_examples():
    g = gl(3)
    b = make_b(g, (1, 0, 0))
    assert len(iset_enumerate(g, (1, 0, 0), b, ())) == 1
    assert len(gu5_iset()) == 1
    iset = resgl22_iset()
    assert set(iset.lifts.values()) == {(1, 0, 0, 1), (0, 1, 1, 0)}


def test_adapted_examples():
    g = gu(5)
    assert is_adapted(g, g.simple_roots[2], GU5_M)
    h = gl(4)
    assert all(is_adapted(h, a, ()) for a in h.positive_roots)
    s = gsp(2)
    a = (1, -1, 0)
    assert s.pairing(s.simple_roots[1], s.coroot_of[a]) == -2
    assert not is_adapted(s, a, {1})
    mod = adapted_modify(s, a, {1})
    assert mod == (2, 0, -1) and is_adapted(s, mod, {1})


def test_omega_examples():
    g = gu(5)
    om = omega_classify(g, g.simple_roots[2], GU5_M)
    assert om.type == "II" and set(om.omega) == {g.simple_roots[1], g.simple_roots[2]}
    assert omega_classify(gl(3), gl(3).simple_roots[0], ()).type == "I"
    d = d4(3)
    assert omega_classify(d, d.simple_roots[0], {1}).type == "III"
    assert omega_classify(d, d.simple_roots[0], {1}).alpha_tilde == (1, 1, 1, 1)


def test_chain_examples():
    iset = resgl22_iset()
    x, y = iset.elements
    assert convexity_chain(iset, x, x).steps == ()
    ch = convexity_chain(iset, x, y)
    assert len(ch.steps) == 1 and validate_chain(iset, ch)
    s = ch.steps[0]
    assert iset.datum.sigma_root(s.alpha) == s.alpha_prime
    gu_set = gu5_iset()
    only = gu_set.elements[0]
    assert convexity_chain(gu_set, only, only).vertices == (only,)


def test_bad_chain_is_rejected():
    iset = resgl22_iset()
    x, y = iset.elements
    bogus = ChainWitness((x, y), (Step(x, y, (1, -1, 0, 0), (1, -1, 0, 0)),))
    assert not validate_chain(iset, bogus)


def test_unit_moves_are_immediate():
    iset = resgl22_iset()
    ch = convexity_chain(iset, *iset.elements)
    refined = refine_immediate(iset, ch)
    assert refined.vertices == ch.vertices and check_refined(iset, refined)
    s = refined.steps[0]
    assert is_immediate(iset, s.frm, s.to, s.alpha, 1)


def test_refinement_splits_long_moves():
    g = res_gl(2, 4)
    splits = 0
    for cfg in configurations(g, [(1, 0, 0, 0, 1, 0, 1, 0)]):
        for ch in inv.single_move_chains(cfg.iset):
            refined = refine_immediate(cfg.iset, ch)
            assert check_refined(cfg.iset, refined)
            splits += len(refined.steps) > 1
    assert splits > 0


def test_generation_examples():
    g = gl(4)
    res = generation_check(g, (1, 0, 1, 0), {0, 2})
    assert res.ok and (0, 1, -1, 0) in res.generators
    u = gu(5)
    assert generation_check(u, GU5_MU_X0, GU5_M).ok
    with pytest.raises(PreconditionError):
        generation_check(gl(2), (1, 0), ())


def test_conjugator_examples():
    g = gl(3)
    a = (0, 1, -1)
    assert weyl_orbit_conjugators(g, a, a, {0}) == []
    assert weyl_orbit_conjugators(g, a, (1, 0, -1), {0}) == [(1, -1, 0)]
    with pytest.raises(PreconditionError):
        weyl_orbit_conjugators(g, (0, -1, 1), (0, -1, 1), {0})


def test_long_root_conjugators():
    s = gsp(2)
    long_ = s.simple_roots[1]
    out = weyl_orbit_conjugators(s, long_, (2, 0, -1), {0})
    assert out and all(s.is_positive(b) for b in out)


@pytest.mark.parametrize("datum", [gl(4), gsp(2), d4(1), gu(5)], ids=repr)
def test_conjugators_on_all_levis(datum):
    count = 0
    for H in datum.sigma_stable_levis() + [frozenset({i}) for i in datum.full]:
        W = datum.weyl_group(H)
        for a in datum.positive_roots:
            if any(datum.pairing(a, datum.simple_coroots[i]) > 0 for i in H):
                continue
            for gamma in {datum.weyl_act_root(w, a) for w in W}:
                betas = weyl_orbit_conjugators(datum, a, gamma, H)
                check_conjugators(datum, a, gamma, betas)
                count += 1
    assert count


@pytest.mark.parametrize("datum", survey_presets(), ids=repr)
def test_configurations_connected_and_invariants(datum):
    for cfg in configurations(datum, minuscule_dominant(datum)):
        assert is_superbasic(cfg.b, cfg.M)
        assert is_connected(cfg.iset)
        lifts = list(cfg.iset.lifts.values())
        inv.chains_validate(cfg.iset)
        inv.lift_identities(datum, cfg.M, lifts)
        inv.maximal_translate(datum, cfg.M, lifts)
        inv.adjacent_pairs(cfg.iset)
        inv.coinvariant_conjugacy(cfg.iset)


def test_restricted_subsystem_set_is_contained_and_connected():
    g = gu(5)
    full = gu5_iset()
    om = omega_classify(g, g.simple_roots[2], GU5_M)
    sub = iset_enumerate(g, full.mu, full.b, GU5_M, roots=om.closure)
    assert set(sub.elements) <= set(full.elements)
    assert is_connected(sub)
    for cfg in configurations(gl(4)):
        for a in inv.adapted_roots(gl(4), cfg.M):
            om = omega_classify(gl(4), a, cfg.M)
            mu_x0 = cfg.mu_x0
            sub = iset_enumerate(gl(4), mu_x0, cfg.b, cfg.M, roots=om.closure)
            assert set(sub.elements) <= set(cfg.iset.elements)
            assert is_connected(sub)
