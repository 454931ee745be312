"""Connected components of affine Deligne-Lusztig varieties for minuscule mu.

The pipeline reduces (mu, b) to a Levi M in which the pair is Hodge-Newton
indecomposable, classifies it there, and returns one of four descriptors:

* ``empty``: b is not in B(G, mu);
* ``coset``: the irreducible case, pi_0 = c_{b,mu} pi_1(M)^Gamma;
* ``discrete``: b is sigma-conjugate to p^mu with mu central, pi_0 = M(F)/M(O_F);
* ``product``: a mix of the two over the F-simple factors of M_ad, glued to
  c_{b,mu} pi_1(M)^Gamma over pi_1(M_ad)^Gamma.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import intlin as la
from .errors import KappaMismatch, PreconditionError
from .hnstrat import hn_classify, in_B_G_mu, reduce_to_indecomposable, split_central_factors
from .isocrystal import BRep, make_b
from .pi1lat import CosetDescriptor, coset_image, make_coset, pi1_of, solve_c, solve_c_bmu
from .presets import _from_cartan, adjoint_of, adjoint_projection
from .rootdata import RootDatum, fmt_levi


@dataclass(frozen=True)
class Pi0Descriptor:
    variant: str                      # empty | coset | discrete | product
    datum: RootDatum
    levi: frozenset | None = None     # Hodge-Newton reduction Levi
    coset: CosetDescriptor | None = None
    image_in_G: CosetDescriptor | None = None
    group: str | None = None
    factors: tuple = ()
    provenance: tuple = ()
    hn_class: str | None = None

    def to_json(self) -> dict:
        out: dict = {"variant": self.variant, "datum": self.datum.name, "provenance": list(self.provenance)}
        if self.levi is not None:
            out["levi"] = fmt_levi(self.levi)
        if self.hn_class is not None:
            out["hn_class"] = self.hn_class
        if self.coset is not None:
            out["coset"] = self.coset.to_json(self.datum)
        if self.image_in_G is not None:
            out["image_in_G"] = self.image_in_G.to_json(self.datum)
        if self.group is not None:
            out["group"] = {"name": self.group, "quotient": f"{self.group}(F)/{self.group}(O_F)"}
        if self.factors:
            out["factors"] = [f.to_json() for f in self.factors]
        return out


def _check_mu(datum: RootDatum, mu: Sequence[int]) -> tuple:
    mu = tuple(mu)
    if len(mu) != datum.rank or not la.is_integral(mu):
        raise PreconditionError("mu must be an integral cocharacter")
    if not datum.is_minuscule(mu):
        raise PreconditionError("mu is not minuscule")
    if not datum.is_dominant(mu):
        raise PreconditionError("mu is not dominant")
    return tuple(int(x) for x in mu)


def _levi_name(datum: RootDatum, M: frozenset) -> str:
    return datum.name if M == datum.full else f"M{fmt_levi(M)}"


def pi0_compute(datum: RootDatum, mu: Sequence[int], b: BRep) -> Pi0Descriptor:
    mu = _check_mu(datum, mu)
    cert = in_B_G_mu(b, mu)
    if not cert.ok:
        return Pi0Descriptor("empty", datum, provenance=(f"b is not in B(G, mu): {cert.reason}",))
    M, bm = reduce_to_indecomposable(b, mu)
    prov = [f"Hodge-Newton reduction to the Levi {fmt_levi(M)}"] if M != datum.full else []
    report = hn_classify(bm, mu, M)
    if report.hn_class == "irreducible":
        coset = solve_c_bmu(bm, mu, M)
        prov.append("irreducible pair: coset c_{b,mu} pi_1(M)^Gamma")
        return Pi0Descriptor("coset", datum, M, coset, coset_image(coset, datum, datum.full),
                             provenance=tuple(prov), hn_class="irreducible")
    if report.hn_class == "indecomposable-central":
        prov.append("b is sigma-conjugate to p^mu with mu central: Lang's lemma")
        return Pi0Descriptor("discrete", datum, M, group=_levi_name(datum, M), provenance=tuple(prov),
                             hn_class=report.hn_class)
    split = split_central_factors(bm, mu, M)
    parts = []
    for idx in split.irreducible + split.central:
        parts.append(_factor_descriptor(datum, idx, mu, bm))
    coset = solve_c_bmu(bm, mu, M)
    prov.append("product over F-simple adjoint factors, glued to c_{b,mu} pi_1(M)^Gamma")
    return Pi0Descriptor("product", datum, M, coset, coset_image(coset, datum, datum.full),
                         factors=tuple(parts), provenance=tuple(prov), hn_class=report.hn_class)


def factor_datum(datum: RootDatum, idx: Sequence[int]) -> RootDatum:
    """Adjoint datum of one F-simple factor, given by its simple root indices."""
    idx = sorted(idx)
    pos = {i: k for k, i in enumerate(idx)}
    cartan = [[datum.cartan[i][j] for j in idx] for i in idx]
    perm = [pos[datum.sigma_perm[i]] for i in idx]
    return _from_cartan(cartan, perm, "adjoint", name=f"adjoint-factor{list(idx)}")


def _factor_descriptor(datum: RootDatum, idx: Sequence[int], mu: Sequence[int], b: BRep) -> Pi0Descriptor:
    idx = sorted(idx)
    fd = factor_datum(datum, idx)
    pos = {i: k for k, i in enumerate(idx)}
    lam = tuple(datum.pairing(datum.simple_roots[i], b.lam) for i in idx)
    mu_f = tuple(datum.pairing(datum.simple_roots[i], mu) for i in idx)
    word = [pos[i] for i in b.w.word if i in pos]
    bf = make_b(fd, lam, word)
    return pi0_compute(fd, mu_f, bf)


# ---------------------------------------------------------------------------
# transfer along G -> G_ad


@dataclass(frozen=True)
class FiberCoset:
    """A coset in pi_1(M_ad) x pi_1(G), stored in X_*(T_ad) + X_*(T)."""

    base: tuple
    lattice: tuple
    relations: tuple

    def equals(self, other: "FiberCoset") -> bool:
        dim = len(self.base)
        return (la.lattice_equal(self.lattice, other.lattice, dim)
                and la.in_lattice(la.vsub(self.base, other.base), self.lattice))


@dataclass(frozen=True)
class TransferResult:
    variant: str
    fiber: FiberCoset | None
    torsor_ok: bool
    group: str | None = None
    factors: tuple = ()

    def to_json(self) -> dict:
        return {"variant": self.variant, "torsor_ok": self.torsor_ok, "group": self.group,
                "fiber_rank": None if self.fiber is None else len(self.fiber.lattice)}


def _embed(v: Sequence[int], first: bool, s: int, r: int) -> tuple:
    return tuple(v) + (0,) * r if first else (0,) * s + tuple(v)


def ad_transfer(ad_desc: Pi0Descriptor, datum: RootDatum, ad: RootDatum, proj: Sequence[Sequence[int]],
                b: BRep, mu: Sequence[int]) -> TransferResult:
    """Fiber product of the adjoint answer with c_{b,mu} pi_1(G)^Gamma over pi_1(G_ad)^Gamma."""
    r, s = datum.rank, ad.rank
    f = [tuple(row) for row in proj]
    pg, pgad = pi1_of(datum), pi1_of(ad)
    ker = la.integer_kernel(f, r) or []
    # torsor check: {z in pi_1(G)^Gamma : proj z = 0 in pi_1(G_ad)} is the image of X_*(Z)^Gamma
    ker_fixed = la.lattice_intersection(ker, _fixed(datum), r) if ker else ()
    over_zero = la.lattice_intersection(pg.invariant_lattice, la.lattice_preimage(f, pgad.relations, r), r)
    torsor_ok = la.lattice_equal(la.lattice_sum(ker_fixed, pg.relations, r), over_zero, r)
    if ad_desc.variant == "empty":
        return TransferResult("empty", None, torsor_ok)
    try:
        c_g = solve_c(datum, b.lam, mu)
    except KappaMismatch:
        # c_{b,mu} pi_1(G)^Gamma is empty, hence so is the fiber product
        return TransferResult("empty", None, torsor_ok)
    if ad_desc.variant == "discrete":
        return TransferResult("discrete", None, torsor_ok, group=_levi_name(datum, ad_desc.levi))
    if ad_desc.variant not in ("coset", "product"):
        raise PreconditionError(f"unknown descriptor variant {ad_desc.variant!r}")
    M = ad_desc.levi
    pm_ad = pi1_of(ad, M)
    y0 = ad_desc.coset.base
    # lattice: (y, z) with y in Inv(M_ad), z in Inv(G), y - proj z in Q(G_ad)
    inv = [_embed(v, True, s, r) for v in pm_ad.invariant_lattice] + \
          [_embed(v, False, s, r) for v in pg.invariant_lattice]
    gap = [list(row) for row in la.identity(s)]
    gap = [gap[i] + [-x for x in f[i]] for i in range(s)]
    lat = la.lattice_intersection(la.hnf_rows(inv, s + r), la.lattice_preimage(gap, pgad.relations, s + r), s + r)
    # base point: y0 + a, c_g + z with a, z invariant and y0 + a - proj(c_g + z) in Q(G_ad)
    target = la.vsub(la.matvec(f, c_g), y0)
    cols = list(pm_ad.invariant_lattice) + [la.vscale(-1, la.matvec(f, z)) for z in pg.invariant_lattice] \
        + list(pgad.relations)
    sol = la.solve_integer(la.transpose(cols), target) if cols else None
    if sol is None:
        from .errors import AdlvError
        raise AdlvError("incompatible base points in the fiber product")
    na = len(pm_ad.invariant_lattice)
    nz = len(pg.invariant_lattice)
    a = (0,) * s
    for k, v in zip(sol[:na], pm_ad.invariant_lattice):
        a = la.vadd(a, la.vscale(k, v))
    z = tuple(c_g)
    for k, v in zip(sol[na:na + nz], pg.invariant_lattice):
        z = la.vadd(z, la.vscale(k, v))
    base = tuple(la.vadd(y0, a)) + tuple(z)
    rels = tuple([_embed(v, True, s, r) for v in pm_ad.relations] + [_embed(v, False, s, r) for v in pg.relations])
    # the factors of a product live on M_ad and are unchanged by the transfer
    return TransferResult(ad_desc.variant, FiberCoset(base, lat, rels), torsor_ok, factors=ad_desc.factors)


def _fixed(datum: RootDatum) -> tuple:
    from .pi1lat import fixed_lattice
    return fixed_lattice(datum)


@dataclass(frozen=True)
class TwoPathResult:
    agree: bool
    variant: str
    direct: Pi0Descriptor
    via_adjoint: TransferResult
    injective: bool

    def to_json(self) -> dict:
        return {"agree": self.agree, "variant": self.variant, "injective": self.injective,
                "direct": self.direct.to_json(), "via_adjoint": self.via_adjoint.to_json()}


def adjoint_image(datum: RootDatum, b: BRep, mu: Sequence[int]) -> tuple[RootDatum, tuple, BRep, tuple]:
    ad = adjoint_of(datum)
    proj = adjoint_projection(datum)
    b_ad = BRep(la.matvec(proj, b.lam), ad.weyl_from_word(b.w.word), ad)
    return ad, proj, b_ad, tuple(la.matvec(proj, mu))


def two_path_check(datum: RootDatum, mu: Sequence[int], b: BRep) -> TwoPathResult:
    """Compare pi0_compute on G with the transfer of pi0_compute on G_ad."""
    direct = pi0_compute(datum, mu, b)
    ad, proj, b_ad, mu_ad = adjoint_image(datum, b, mu)
    ad_desc = pi0_compute(ad, mu_ad, b_ad)
    via = ad_transfer(ad_desc, datum, ad, proj, b, mu)
    if direct.variant != via.variant:
        return TwoPathResult(False, direct.variant, direct, via, False)
    if direct.variant in ("empty", "discrete"):
        ok = direct.variant == "empty" or (direct.levi == ad_desc.levi and direct.group == via.group)
        return TwoPathResult(ok and via.torsor_ok, direct.variant, direct, via, True)
    if direct.levi != ad_desc.levi:
        return TwoPathResult(False, direct.variant, direct, via, False)
    r, s = datum.rank, ad.rank
    f = [tuple(row) for row in proj]
    M = direct.levi
    pm, pm_ad, pg = pi1_of(datum, M), pi1_of(ad, M), pi1_of(datum)
    image = [tuple(la.matvec(f, x)) + tuple(x) for x in pm.invariant_lattice]
    lat = la.hnf_rows(image + list(via.fiber.relations), s + r)
    c = direct.coset.base
    mine = FiberCoset(tuple(la.matvec(f, c)) + tuple(c), lat, via.fiber.relations)
    # x -> (proj x, x) is injective on pi_1(M)^Gamma modulo Q_M
    kernel = la.lattice_intersection(
        la.lattice_intersection(pm.invariant_lattice, la.lattice_preimage(f, pm_ad.relations, r), r),
        pg.relations, r)
    injective = la.lattice_equal(kernel, pm.relations, r)
    agree = mine.equals(via.fiber) and injective and via.torsor_ok
    if direct.variant == "product":
        agree = agree and [f.to_json() for f in direct.factors] == [f.to_json() for f in via.factors]
    return TwoPathResult(agree, direct.variant, direct, via, injective)


# ---------------------------------------------------------------------------
# independence of the base point


def base_point_independent(datum: RootDatum, mu: Sequence[int], b: BRep, M, lifts: Sequence[Sequence[int]]) -> bool:
    """The coset c pi_1(G)^Gamma does not depend on which mu_x is used to solve for c."""
    ref = make_coset(datum, datum.full, solve_c(datum, b.lam, mu))
    for mu_x in lifts:
        c = make_coset(datum, datum.full, solve_c(datum, b.lam, mu_x, M))
        if c != ref:
            return False
    return True
