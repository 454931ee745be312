"""Enumeration of small test configurations (G, M, mu, b) over the presets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .connect import ISet, b_x, iset_enumerate, reflection_orbit
from .errors import SuperbasicImpossible
from .isocrystal import BRep, _is_type_a, is_superbasic
from .pi1lat import pi1_of
from .presets import adjoint_of, d4, gl, gsp, gu, res_gl, simply_connected_of, so_even, sp
from .rootdata import RootDatum


def survey_presets(level: str = "small") -> list[RootDatum]:
    """Presets covering types A1-A4, C2 and D4 with Frobenius orders 1, 2, 3."""
    out = [gl(2), gl(3), gl(4), adjoint_of(gl(3)), res_gl(2, 2), res_gl(2, 3), res_gl(3, 2),
           gu(3), gu(4), gu(5), gsp(2), adjoint_of(sp(2)), d4(1), d4(2), d4(3)]
    if level == "full":
        out += [gl(5), adjoint_of(gl(4)), simply_connected_of(gl(3)), res_gl(2, 4), so_even(4, True),
                d4(3, "sc")]
    return out


def minuscule_dominant(datum: RootDatum, lo: int = -1, hi: int = 1) -> list[tuple]:
    """Dominant minuscule cocharacters with coordinates in [lo, hi]."""
    out = []
    for v in itertools.product(range(lo, hi + 1), repeat=datum.rank):
        if datum.is_dominant(v) and datum.is_minuscule(v):
            out.append(tuple(v))
    return out


def superbasic_capable(datum: RootDatum, M: frozenset) -> bool:
    return all(_is_type_a(datum, orb[0]) for orb in datum.sigma_component_orbits(M))


@dataclass(frozen=True)
class Configuration:
    datum: RootDatum
    M: frozenset
    mu: tuple
    mu_x0: tuple
    b: BRep
    iset: ISet


def configurations(datum: RootDatum, mus: list[tuple] | None = None) -> Iterator[Configuration]:
    """All (M, mu, b_{x0}) with b_{x0} superbasic in M, one per (M, mu, kappa_M-class)."""
    mus = minuscule_dominant(datum) if mus is None else mus
    for M in datum.sigma_stable_levis():
        if not superbasic_capable(datum, M):
            continue
        p = pi1_of(datum, M)
        for mu in mus:
            seen = set()
            for v in reflection_orbit(datum, mu):
                if not datum.is_dominant(v, M):
                    continue
                key = p.coinvariant_class(v)
                if key in seen:
                    continue
                try:
                    b = b_x(datum, v, M)
                    if not is_superbasic(b, M):
                        continue
                except SuperbasicImpossible:
                    continue
                seen.add(key)
                yield Configuration(datum, M, mu, v, b, iset_enumerate(datum, mu, b, M))
