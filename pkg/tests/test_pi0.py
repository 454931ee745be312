import pytest

from adlv import intlin as la
from adlv.connect import b_x
from adlv.errors import PreconditionError
from adlv.isocrystal import make_b, superbasic_standard_form
from adlv.pi0 import ad_transfer, adjoint_image, base_point_independent, pi0_compute, two_path_check
from adlv.pi1lat import make_coset, solve_c
from adlv.presets import gl, gu, res_gl
from adlv.survey import configurations, minuscule_dominant


def test_superbasic_gl2_is_all_of_z():
    g = gl(2)
    d = pi0_compute(g, (1, 0), make_b(g, (1, 0), (0,)))
    assert d.variant == "coset"
    doc = d.to_json()["image_in_G"]
    assert doc["moduli"] == [0] and doc["generators"] == [[1]]


def test_central_case_is_discrete():
    g = gl(2)
    d = pi0_compute(g, (1, 1), make_b(g, (1, 1)))
    assert d.variant == "discrete" and d.group == "GL2"


def test_block_superbasic_gl4():
    g = gl(4)
    d = pi0_compute(g, (1, 1, 0, 0), superbasic_standard_form(g, {0, 2}, [1, 1]))
    assert d.variant == "coset" and d.hn_class == "irreducible"
    assert d.coset.contains(d.coset.base)
    d2 = pi0_compute(g, (1, 1, 0, 0), make_b(g, (1, 1, 0, 0)))
    assert d2.variant == "discrete" and d2.levi == frozenset({0, 2})


def test_kappa_mismatch_is_empty():
    g = gl(2)
    assert pi0_compute(g, (1, 0), make_b(g, (1, 1))).variant == "empty"


def test_non_minuscule_mu_is_rejected():
    g = gl(2)
    with pytest.raises(PreconditionError):
        pi0_compute(g, (2, 0), make_b(g, (2, 0)))


def test_transfer_with_trivial_centre_is_identity():
    from adlv.presets import adjoint_of, adjoint_projection
    ad = adjoint_of(gl(3))
    b = make_b(ad, (1, 0), (0, 1))
    mu = ad.dominant_rep((1, 0))[0]
    desc = pi0_compute(ad, mu, b)
    res = ad_transfer(desc, ad, adjoint_of(ad), adjoint_projection(ad), b, mu)
    assert res.variant == desc.variant and res.torsor_ok


def test_unitary_example_two_paths():
    g = gu(5)
    mu_x0 = (1, 1, 0, 1, 0, 1)
    b = b_x(g, mu_x0, {0, 3})
    res = two_path_check(g, g.dominant_rep(mu_x0)[0], b)
    assert res.agree and res.variant == "coset" and res.via_adjoint.torsor_ok


@pytest.mark.parametrize("datum", [gl(2), gl(3), res_gl(2, 2), gu(3), gu(4)], ids=repr)
def test_two_paths_on_configurations(datum):
    for cfg in configurations(datum, minuscule_dominant(datum)):
        assert two_path_check(datum, cfg.mu, cfg.b).agree


@pytest.mark.parametrize("datum", [gl(3), gl(4), res_gl(2, 2), gu(4), gu(5)], ids=repr)
def test_coset_lies_in_the_w_g_image(datum):
    for cfg in configurations(datum, minuscule_dominant(datum)):
        d = pi0_compute(datum, cfg.mu, cfg.b)
        if d.variant not in ("coset", "product"):
            continue
        expected = make_coset(datum, datum.full, solve_c(datum, cfg.b.lam, cfg.mu))
        img = d.image_in_G
        assert expected.contains(img.base)
        for gen in img.subgroup:
            assert expected.contains(la.vadd(expected.base, gen))


@pytest.mark.parametrize("datum", [gl(4), res_gl(2, 2), res_gl(2, 3), gu(5)], ids=repr)
def test_base_point_independence(datum):
    for cfg in configurations(datum, minuscule_dominant(datum)):
        assert base_point_independent(datum, cfg.mu, cfg.b, cfg.M, list(cfg.iset.lifts.values()))


def test_adjoint_image_shapes():
    ad, proj, b_ad, mu_ad = adjoint_image(gl(3), make_b(gl(3), (1, 0, 0), (0, 1)), (1, 0, 0))
    assert ad.rank == 2 and len(proj) == 2 and len(mu_ad) == 2 and b_ad.datum is ad
