"""The B(G, mu) test and the Hodge-Newton classification of pairs (mu, b).

Every function takes an optional ``ambient`` Levi so that the same code
classifies a pair inside a Levi subgroup.  Levi subsets of the ambient group
are sigma-stable subsets of its simple roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import intlin as la
from .errors import NotInBGmu
from .isocrystal import BRep, newton_average, normalize
from .pi1lat import pi1_of
from .rootdata import RootDatum, fmt_levi


def mu_bar(datum: RootDatum, mu: Sequence[int]) -> tuple:
    """Average of the sigma-orbit of mu."""
    return datum.sigma_average(mu)


def _ambient(datum: RootDatum, ambient) -> frozenset:
    return datum.full if ambient is None else frozenset(ambient)


def proper_stable_levis(datum: RootDatum, ambient=None) -> list[frozenset]:
    amb = _ambient(datum, ambient)
    return [L for L in datum.sigma_stable_levis() if L < amb]


@dataclass(frozen=True)
class BGmuCertificate:
    ok: bool
    kappa_ok: bool
    kappa_b: tuple
    kappa_mu: tuple
    mu_bar: tuple
    nu_dom: tuple
    coefficients: dict | None
    reason: str

    def to_json(self) -> dict:
        return {"ok": self.ok, "kappa_ok": self.kappa_ok, "kappa_b": list(self.kappa_b),
                "kappa_mu": list(self.kappa_mu), "mu_bar": [str(x) for x in self.mu_bar],
                "nu_dom": [str(x) for x in self.nu_dom],
                "coefficients": None if self.coefficients is None else
                {str(k): str(v) for k, v in sorted(self.coefficients.items())},
                "reason": self.reason}


def in_B_G_mu(b: BRep, mu: Sequence[int], L: Iterable[int] | None = None) -> BGmuCertificate:
    """Kottwitz point equality plus the Mazur inequality, relative to the Levi L."""
    datum = b.datum
    L = _ambient(datum, L)
    mu = tuple(mu)
    p = pi1_of(datum, L)
    kb = p.coinvariant_class(b.lam)
    km = p.coinvariant_class(mu)
    mb = mu_bar(datum, mu)
    nu = datum.dominant_rep(newton_average(b), L)[0]
    coeffs = datum.coroot_expansion(la.vsub(mb, nu), L)
    kappa_ok = kb == km
    if not kappa_ok:
        return BGmuCertificate(False, False, kb, km, mb, nu, coeffs, "kottwitz points differ")
    if coeffs is None:
        return BGmuCertificate(False, True, kb, km, mb, nu, None, "mu_bar - nu not in the coroot span")
    if any(c < 0 for c in coeffs.values()):
        return BGmuCertificate(False, True, kb, km, mb, nu, coeffs, "negative coefficient in mu_bar - nu")
    return BGmuCertificate(True, True, kb, km, mb, nu, coeffs, "")


def kappa_matches(b: BRep, mu: Sequence[int], M: Iterable[int]) -> bool:
    datum = b.datum
    M = frozenset(M)
    if not datum.in_levi_weyl(b.w, M):
        return False
    return pi1_of(datum, M).same_coinvariant_class(b.lam, mu)


def decomposing_levis(nb: BRep, mu: Sequence[int], ambient=None) -> list[frozenset]:
    """Sigma-stable M with M_b <= M <= ambient and kappa_M(b) = [mu]."""
    datum = nb.datum
    amb = _ambient(datum, ambient)
    return [M for M in datum.sigma_stable_levis() if nb.levi <= M <= amb and kappa_matches(nb, mu, M)]


def newton_of_levi_basic(datum: RootDatum, v: Sequence, L: Iterable[int]) -> tuple:
    """Newton point of the basic class of L with Kottwitz point v."""
    return datum.sigma_average(datum.central_projection(v, L))


@dataclass(frozen=True)
class LeviWitness:
    levi: frozenset
    intersection: frozenset
    y: tuple


def irreducibility_witness(nb: BRep, mu: Sequence[int], ambient=None) -> LeviWitness | None:
    """Search for a proper M carrying an element of [b] with Newton point nu_b and kappa_M = [mu].

    ``nb`` must be normalized.  For each proper sigma-stable M, the candidates
    are basic classes y of L = M cap M_b with Newton point nu_b lying over
    kappa_{M_b}(b); they are lam_b + sum c_beta beta^vee with integral c.
    """
    datum = nb.datum
    mu = tuple(mu)
    nu = newton_average(nb)
    r = datum.rank
    for M in proper_stable_levis(datum, ambient):
        L = M & nb.levi
        free = sorted(nb.levi - L)
        base = newton_of_levi_basic(datum, nb.lam, L)
        rhs = la.vsub(nu, base)
        cols = [newton_of_levi_basic(datum, datum.simple_coroots[i], L) for i in free]
        den = la.lcm_denominator(list(rhs) + [x for c in cols for x in c])
        a = [[int(c[k] * den) for c in cols] for k in range(r)]
        bvec = [int(x * den) for x in rhs]
        if free:
            c0 = la.solve_integer(a, bvec)
        else:
            c0 = () if all(x == 0 for x in bvec) else None
        if c0 is None:
            continue
        y = tuple(nb.lam)
        for ci, i in zip(c0, free):
            y = la.vadd(y, la.vscale(ci, datum.simple_coroots[i]))
        pm = pi1_of(datum, M)
        kernel = la.integer_kernel(a, len(free)) if free else ()
        shifts = []
        for k in kernel:
            v = (0,) * r
            for ki, i in zip(k, free):
                v = la.vadd(v, la.vscale(ki, datum.simple_coroots[i]))
            shifts.append(v)
        rel = la.lattice_sum(pm.coinvariant_relations, shifts, r)
        if la.in_lattice(la.vsub(y, mu), rel):
            return LeviWitness(M, L, y)
    return None


def kernel_ambiguity(nb: BRep, M: Iterable[int]) -> bool:
    """True when the y-solutions for M all have the same class in pi_1(M)_Gamma."""
    datum = nb.datum
    M = frozenset(M)
    L = M & nb.levi
    free = sorted(nb.levi - L)
    if not free:
        return True
    cols = [newton_of_levi_basic(datum, datum.simple_coroots[i], L) for i in free]
    den = la.lcm_denominator([x for c in cols for x in c])
    a = [[int(c[k] * den) for c in cols] for k in range(datum.rank)]
    pm = pi1_of(datum, M)
    for k in la.integer_kernel(a, len(free)):
        v = (0,) * datum.rank
        for ki, i in zip(k, free):
            v = la.vadd(v, la.vscale(ki, datum.simple_coroots[i]))
        if not pm.coinv.is_zero(v):
            return False
    return True


@dataclass(frozen=True)
class FactorVerdict:
    simple_roots: tuple
    coefficients: tuple
    irreducible: bool          # all coefficients strictly positive on the factor
    mu_central: bool
    newton_is_mu_bar: bool

    @property
    def central_type(self) -> bool:
        return self.mu_central and self.newton_is_mu_bar

    def to_json(self) -> dict:
        return {"simple_roots": list(self.simple_roots), "coefficients": [str(c) for c in self.coefficients],
                "irreducible": self.irreducible, "mu_central": self.mu_central,
                "newton_equals_mu_bar": self.newton_is_mu_bar}


def factor_verdicts(nb: BRep, mu: Sequence[int], ambient=None) -> list[FactorVerdict]:
    """Coefficient test on each F-simple factor (sigma-orbit of Dynkin components)."""
    datum = nb.datum
    amb = _ambient(datum, ambient)
    nu = newton_average(nb)
    mb = mu_bar(datum, mu)
    coeffs = datum.coroot_expansion(la.vsub(mb, nu), amb) or {}
    out = []
    for orbit in datum.sigma_component_orbits(amb):
        idx = tuple(sorted(i for comp in orbit for i in comp))
        cs = tuple(coeffs.get(i, 0) for i in idx)
        central = all(datum.pairing(datum.simple_roots[i], mu) == 0 for i in idx)
        out.append(FactorVerdict(idx, cs, all(c > 0 for c in cs), central, all(c == 0 for c in cs)))
    return out


@dataclass(frozen=True)
class HNReport:
    in_B_G_mu: BGmuCertificate
    mu_bar: tuple
    nu_dom: tuple
    coefficients: dict
    hn_class: str
    reduction_levi: frozenset
    ambient: frozenset
    normalized_b: BRep
    condition1: bool
    condition2: bool
    condition3: bool
    witness: LeviWitness | None
    factors: tuple
    central_check: bool | None

    def to_json(self) -> dict:
        return {
            "in_B_G_mu": self.in_B_G_mu.to_json(),
            "mu_bar": [str(x) for x in self.mu_bar],
            "nu_dom": [str(x) for x in self.nu_dom],
            "coefficients": {str(k): str(v) for k, v in sorted(self.coefficients.items())},
            "hn_class": self.hn_class,
            "reduction_levi": fmt_levi(self.reduction_levi),
            "ambient_levi": fmt_levi(self.ambient),
            "normalized_b": self.normalized_b.to_json(),
            "conditions": {"irreducible_by_definition": self.condition1,
                           "no_proper_levi_dominance": self.condition2,
                           "all_coefficients_positive": self.condition3},
            "witness_levi": None if self.witness is None else fmt_levi(self.witness.levi),
            "factor_split": [f.to_json() for f in self.factors],
            "central_check": self.central_check,
        }


def hn_classify(b: BRep, mu: Sequence[int], ambient=None) -> HNReport:
    """Hodge-Newton class of (mu, b): irreducible, decomposable, or indecomposable.

    Indecomposable pairs that are not irreducible are labelled
    ``indecomposable-central`` when every F-simple factor is of central type and
    ``indecomposable-mixed`` otherwise (possible only for non-simple adjoint
    groups).
    """
    datum = b.datum
    amb = _ambient(datum, ambient)
    mu = tuple(mu)
    cert = in_B_G_mu(b, mu, amb)
    if not cert.ok:
        raise NotInBGmu(cert.reason)
    nb = normalize(b, amb)
    nu = newton_average(nb)
    mb = mu_bar(datum, mu)
    coeffs = datum.coroot_expansion(la.vsub(mb, nu), amb) or {}
    cond3 = all(c > 0 for c in coeffs.values())
    cond2 = not any(datum.dominance(nu, mb, "rational", M) for M in proper_stable_levis(datum, amb))
    witness = irreducibility_witness(nb, mu, amb)
    cond1 = witness is None
    decomp = decomposing_levis(nb, mu, amb)
    reduction = min(decomp, key=lambda s: (len(s), sorted(s)))
    factors = tuple(factor_verdicts(nb, mu, amb))
    central_check = None
    if reduction != amb:
        cls = "decomposable"
    elif cond1:
        cls = "irreducible"
    else:
        if all(f.central_type for f in factors if not f.irreducible):
            cls = "indecomposable-central" if not any(f.irreducible for f in factors) else "indecomposable-mixed"
        else:
            cls = "indecomposable-mixed"
        if cls == "indecomposable-central":
            central_check = datum.is_central(mu, amb) and la.normalize(nu) == la.normalize(mb)
    return HNReport(cert, mb, nu, coeffs, cls, reduction, amb, nb, cond1, cond2, cond3, witness, factors,
                    central_check)


def reduce_to_indecomposable(b: BRep, mu: Sequence[int], ambient=None) -> tuple[frozenset, BRep]:
    """Minimal sigma-stable M containing M_b with kappa_M(b) = [mu], and b inside it."""
    datum = b.datum
    amb = _ambient(datum, ambient)
    cert = in_B_G_mu(b, mu, amb)
    if not cert.ok:
        raise NotInBGmu(cert.reason)
    nb = normalize(b, amb)
    cands = decomposing_levis(nb, mu, amb)
    M = min(cands, key=lambda s: (len(s), sorted(s)))
    return M, BRep(nb.lam, nb.w, datum, M)


@dataclass(frozen=True)
class CentralSplit:
    irreducible: tuple
    central: tuple

    def to_json(self) -> dict:
        return {"irreducible": [list(x) for x in self.irreducible], "central": [list(x) for x in self.central]}


def split_central_factors(b: BRep, mu: Sequence[int], ambient=None) -> CentralSplit:
    """Split the F-simple factors into an irreducible part and a central part."""
    datum = b.datum
    amb = _ambient(datum, ambient)
    nb = normalize(b, amb)
    if decomposing_levis(nb, mu, amb) != [amb]:
        from .errors import PreconditionError
        raise PreconditionError("pair is Hodge-Newton decomposable")
    irr, cen = [], []
    for f in factor_verdicts(nb, mu, amb):
        if f.irreducible:
            irr.append(f.simple_roots)
        else:
            if not f.central_type:
                raise AssertionError("factor is neither irreducible nor of central type")
            cen.append(f.simple_roots)
    return CentralSplit(tuple(irr), tuple(cen))
