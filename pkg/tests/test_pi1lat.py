import pytest

from adlv import intlin as la
from adlv.errors import KappaMismatch
from adlv.isocrystal import make_b
from adlv.pi1lat import (cartesian_square_check, coinvariants, invariants, levi_transition, pi1_of,
                         solve_c_bmu)
from adlv.presets import adjoint_of, adjoint_projection, gl, gu, simply_connected_of, torus
from adlv.survey import survey_presets


def test_pi1_examples():
    assert pi1_of(gl(3)).plain.moduli == (0,)
    assert pi1_of(gl(3), ()).plain.moduli == (0, 0, 0)
    assert pi1_of(adjoint_of(gl(2))).plain.torsion == (2,)
    assert pi1_of(simply_connected_of(gl(2))).plain.torsion == ()


def test_invariants_and_coinvariants_examples():
    swap = pi1_of(torus(2, ((0, 1), (1, 0))))
    assert la.lattice_equal(invariants(swap), [(1, 1)], 2)
    assert coinvariants(swap).moduli == (0,)
    assert swap.coinvariant_class((1, 0)) == swap.coinvariant_class((0, 1))
    plain = pi1_of(gl(2))
    assert coinvariants(plain).moduli == plain.plain.moduli
    flip = pi1_of(torus(1, ((-1,),)))
    assert invariants(flip) == ()
    assert coinvariants(flip).torsion == (2,)


def test_levi_transition_examples():
    t = levi_transition(gl(3), {0})
    assert t.kernel_matches and t.kernel_generators == ((1, -1),)
    assert levi_transition(gl(3), gl(3).full).kernel_generators == ()


def test_solve_c_examples():
    g = gl(2)
    c = solve_c_bmu(make_b(g, (1, 0), (0,)), (1, 0))
    assert c.base == (0, 0) and la.lattice_equal(c.subgroup, la.identity(2), 2)
    swap = torus(2, ((0, 1), (1, 0)))
    c = solve_c_bmu(make_b(swap, (0, 1)), (1, 0))
    assert c.contains((0, 1)) and c.contains((3, 4)) and not c.contains((0, 0))
    with pytest.raises(KappaMismatch):
        solve_c_bmu(make_b(g, (1, 1)), (1, 0))


@pytest.mark.parametrize("datum", survey_presets("full"), ids=repr)
def test_levi_kernels_for_every_stable_levi(datum):
    for M in datum.sigma_stable_levis():
        t = levi_transition(datum, M)
        assert t.kernel_matches and t.invariants_surjective
        assert t.coinvariant_kernel_torsion_free


@pytest.mark.parametrize("datum", [gl(2), gl(3), gl(4), gu(3), gu(4), gu(5)], ids=repr)
def test_adjoint_square(datum):
    sq = cartesian_square_check(datum, adjoint_of(datum), adjoint_projection(datum))
    assert sq.ok


@pytest.mark.parametrize("datum", survey_presets("full"), ids=repr)
def test_permutation_invariants_are_saturated(datum):
    p = pi1_of(datum, ())
    inv = invariants(p)
    if inv:
        assert la.is_saturated(inv, la.identity(datum.rank), datum.rank)
