"""Fundamental groups of Levi subgroups as explicit lattice quotients.

Every group here is a quotient Z^r / R for a sublattice R of the cocharacter
lattice.  Subgroups of such quotients are stored as lattices between R and
Z^r, so memberships and equalities reduce to Hermite forms.  Smith normal form
supplies readable coordinates (free part plus torsion).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from . import intlin as la
from .errors import KappaMismatch, PreconditionError
from .rootdata import RootDatum, fmt_levi


class Quotient:
    """Z^dim modulo the lattice spanned by ``relations``."""

    def __init__(self, dim: int, relations: Iterable[Sequence[int]]):
        self.dim = dim
        self.relations = la.hnf_rows(list(relations), dim)
        if self.relations:
            a = la.transpose(self.relations)
            u, d, _ = la.smith_normal_form(a)
            diag = [d[i][i] if i < len(d[0]) else 0 for i in range(dim)]
        else:
            u = la.identity(dim)
            diag = [0] * dim
        self._u = u
        self._u_inv = la.integer_inverse(u)
        keep = [i for i in range(dim) if diag[i] != 1]
        self._keep = keep
        # 0 marks a free coordinate
        self.moduli = tuple(diag[i] for i in keep)

    @property
    def free_rank(self) -> int:
        return sum(1 for m in self.moduli if m == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(m for m in self.moduli if m > 1)

    def coords(self, v: Sequence[int]) -> tuple[int, ...]:
        """Smith coordinates of the class of v."""
        if not la.is_integral(v):
            raise ValueError("cannot project a rational vector")
        uv = la.matvec(self._u, [int(x) for x in v])
        return tuple(uv[i] % m if m else uv[i] for i, m in zip(self._keep, self.moduli))

    def lift(self, c: Sequence[int]) -> tuple[int, ...]:
        full = [0] * self.dim
        for i, x in zip(self._keep, c):
            full[i] = x
        return la.matvec(self._u_inv, full)

    def canonical(self, v: Sequence[int]) -> tuple[int, ...]:
        """Reduced representative in Z^dim of the class of v."""
        return la.reduce_mod_lattice(v, self.relations)

    def equal(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return la.in_lattice(la.vsub(u, v), self.relations)

    def is_zero(self, v: Sequence[int]) -> bool:
        return la.in_lattice(v, self.relations)


def coroot_relations(datum: RootDatum, L: Iterable[int]) -> tuple:
    return la.hnf_rows(datum.levi_coroot_lattice(L), datum.rank)


def sigma_minus_one(datum: RootDatum) -> tuple:
    return la.mat_sub(datum.sigma, la.identity(datum.rank))


def sigma_minus_one_image(datum: RootDatum) -> tuple:
    return la.hnf_rows(la.transpose(sigma_minus_one(datum)), datum.rank)


@dataclass(frozen=True)
class Pi1Group:
    """pi_1(L) = X_*(T) / (coroot lattice of L), with the Frobenius action."""

    datum: RootDatum
    levi: frozenset

    @cached_property
    def plain(self) -> Quotient:
        return Quotient(self.datum.rank, self.datum.levi_coroot_lattice(self.levi))

    @cached_property
    def relations(self) -> tuple:
        return self.plain.relations

    @property
    def sigma_stable(self) -> bool:
        return self.datum.is_sigma_stable(self.levi)

    def _need_sigma(self) -> None:
        if not self.sigma_stable:
            raise PreconditionError(f"Levi {fmt_levi(self.levi)} is not sigma-stable")

    @cached_property
    def invariant_lattice(self) -> tuple:
        """{v : (sigma - 1) v in Q_L}: the preimage of pi_1(L)^Gamma in X_*(T)."""
        self._need_sigma()
        return la.lattice_preimage(sigma_minus_one(self.datum), self.relations, self.datum.rank)

    @cached_property
    def coinvariant_relations(self) -> tuple:
        self._need_sigma()
        return la.lattice_sum(self.relations, sigma_minus_one_image(self.datum), self.datum.rank)

    @cached_property
    def coinv(self) -> Quotient:
        return Quotient(self.datum.rank, self.coinvariant_relations)

    def project(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.plain.coords(v)

    def coinvariant_class(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.coinv.coords(v)

    def same_coinvariant_class(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.coinv.equal(u, v)

    def invariant_generators(self) -> list[tuple[int, ...]]:
        """Generators of pi_1(L)^Gamma in Smith coordinates."""
        gens = {self.project(v) for v in self.invariant_lattice}
        return sorted(g for g in gens if any(g))

    def is_invariant(self, v: Sequence[int]) -> bool:
        return la.in_lattice(v, self.invariant_lattice)

    def describe(self) -> dict:
        return {"levi": fmt_levi(self.levi), "free_rank": self.plain.free_rank,
                "torsion": list(self.plain.torsion)}


def pi1_of(datum: RootDatum, L: Iterable[int] | None = None) -> Pi1Group:
    return _pi1_cached(datum, frozenset(datum.full if L is None else L))


@lru_cache(maxsize=4096)
def _pi1_cached(datum: RootDatum, L: frozenset) -> Pi1Group:
    return Pi1Group(datum, L)


def invariants(p: Pi1Group) -> tuple:
    """The sublattice of X_*(T) whose image is pi_1(L)^Gamma."""
    return p.invariant_lattice


def coinvariants(p: Pi1Group) -> Quotient:
    return p.coinv


# ---------------------------------------------------------------------------
# Levi transition maps


@dataclass(frozen=True)
class LeviTransition:
    small: frozenset
    big: frozenset
    invariant_kernel: tuple          # lattice between Q_M and X_*, kernel preimage
    orbit_sum_span: tuple            # Q_M + span of Gamma-orbit coroot sums
    kernel_matches: bool
    invariants_surjective: bool
    coinvariant_kernel_torsion: tuple
    kernel_generators: tuple         # Smith coordinates in pi_1(M)

    @property
    def coinvariant_kernel_torsion_free(self) -> bool:
        return self.coinvariant_kernel_torsion == ()


def orbit_coroot_sums(datum: RootDatum, M: Iterable[int], G: Iterable[int] | None = None) -> list[tuple]:
    """Sums of sigma-orbits of simple coroots of G that are not in M."""
    M = set(M)
    G = set(datum.full if G is None else G)
    out = []
    for orb in datum.sigma_orbits_simple():
        if orb[0] in G and orb[0] not in M:
            v = (0,) * datum.rank
            for i in orb:
                v = la.vadd(v, datum.simple_coroots[i])
            out.append(v)
    return out


def levi_transition(datum: RootDatum, M: Iterable[int], G: Iterable[int] | None = None) -> LeviTransition:
    M = frozenset(M)
    G = frozenset(datum.full if G is None else G)
    if not M <= G:
        raise PreconditionError("M is not contained in G")
    if not (datum.is_sigma_stable(M) and datum.is_sigma_stable(G)):
        raise PreconditionError("Levi subsets must be sigma-stable")
    pm, pg = pi1_of(datum, M), pi1_of(datum, G)
    r = datum.rank
    kernel = la.lattice_intersection(pm.invariant_lattice, pg.relations, r)
    kernel = la.lattice_sum(kernel, pm.relations, r)
    sums = la.lattice_sum(pm.relations, orbit_coroot_sums(datum, M, G), r)
    surj = la.lattice_equal(la.lattice_sum(pm.invariant_lattice, pg.relations, r), pg.invariant_lattice, r)
    tors = la.quotient_torsion(pg.coinvariant_relations, pm.coinvariant_relations, r)
    gens = sorted({pm.project(v) for v in kernel} - {tuple(0 for _ in pm.plain.moduli)})
    return LeviTransition(M, G, kernel, sums, kernel == sums, surj, tors, tuple(gens))


# ---------------------------------------------------------------------------
# c_{b, mu} cosets


@dataclass(frozen=True)
class CosetDescriptor:
    """The coset c + pi_1(L)^Gamma inside pi_1(L).

    ``subgroup`` is the Hermite basis of the invariant lattice in X_*(T) and
    ``base`` is c reduced modulo it, so two descriptors are equal exactly when
    the cosets are.
    """

    datum_name: str
    levi: frozenset
    base: tuple
    subgroup: tuple

    def contains(self, v: Sequence[int]) -> bool:
        return la.in_lattice(la.vsub(v, self.base), self.subgroup)

    def to_json(self, datum: RootDatum) -> dict:
        p = pi1_of(datum, self.levi)
        gens = sorted({p.project(v) for v in self.subgroup} - {tuple(0 for _ in p.plain.moduli)})
        return {"levi": fmt_levi(self.levi), "base": list(p.project(self.base)),
                "base_cocharacter": list(self.base), "generators": [list(g) for g in gens],
                "torsion": list(p.plain.torsion), "moduli": list(p.plain.moduli)}


def make_coset(datum: RootDatum, L: Iterable[int], c: Sequence[int]) -> CosetDescriptor:
    L = frozenset(L)
    sub = pi1_of(datum, L).invariant_lattice
    return CosetDescriptor(datum.name, L, la.reduce_mod_lattice(c, sub), sub)


def solve_c(datum: RootDatum, lam: Sequence[int], mu: Sequence[int], L: Iterable[int] | None = None) -> tuple:
    """One c with lam - mu = (1 - sigma) c modulo the coroot lattice of L."""
    L = frozenset(datum.full if L is None else L)
    p = pi1_of(datum, L)
    one_minus_sigma = la.mat_sub(la.identity(datum.rank), datum.sigma)
    rel = list(p.relations)
    a = [list(one_minus_sigma[i]) + [q[i] for q in rel] for i in range(datum.rank)]
    sol = la.solve_integer(a, la.vsub(lam, mu))
    if sol is None:
        raise KappaMismatch(f"kappa_L(b) != [mu] in pi_1(L)_Gamma for L={fmt_levi(L)}")
    return tuple(sol[: datum.rank])


def solve_c_bmu(b, mu: Sequence[int], L: Iterable[int] | None = None) -> CosetDescriptor:
    """The coset c_{b,mu} pi_1(L)^Gamma for b = p^lambda w in L."""
    datum = b.datum
    L = frozenset(datum.full if L is None else L)
    if not datum.in_levi_weyl(b.w, L):
        raise PreconditionError("b is not in L")
    c = solve_c(datum, b.lam, mu, L)
    return make_coset(datum, L, c)


def coset_image(coset: CosetDescriptor, datum: RootDatum, target: Iterable[int]) -> CosetDescriptor:
    """Push a coset in pi_1(M) forward to pi_1(G) for a bigger Levi G."""
    return make_coset(datum, target, coset.base)


# ---------------------------------------------------------------------------
# the square X_*(T)^Gamma -> X_*(T_ad)^Gamma over pi_1^Gamma -> pi_1(G_ad)^Gamma


@dataclass(frozen=True)
class SquareCheck:
    injective: bool
    surjective: bool
    left_vertical_surjective: bool
    right_vertical_surjective: bool

    @property
    def cartesian(self) -> bool:
        return self.injective and self.surjective

    @property
    def ok(self) -> bool:
        return self.cartesian and self.left_vertical_surjective and self.right_vertical_surjective


def fixed_lattice(datum: RootDatum) -> tuple:
    return la.hnf_rows(la.integer_kernel(sigma_minus_one(datum), datum.rank) or [], datum.rank)


def cartesian_square_check(datum: RootDatum, ad: RootDatum, proj: Sequence[Sequence[int]]) -> SquareCheck:
    """Check the square of Gamma-invariants for the map G -> G_ad is Cartesian.

    ``proj`` is the matrix of X_*(T) -> X_*(T_ad).
    """
    r, s = datum.rank, ad.rank
    pg, pad = pi1_of(datum), pi1_of(ad)
    inv_g, inv_ad = pg.invariant_lattice, pad.invariant_lattice
    fix_g, fix_ad = fixed_lattice(datum), fixed_lattice(ad)
    # S = {(v, y) : v in inv_g, y in fix_ad, proj v - y in Q_ad}
    emb = [tuple(v) + (0,) * s for v in inv_g] + [(0,) * r + tuple(y) for y in fix_ad]
    emb_basis = la.hnf_rows(emb, r + s)
    f = [tuple(row) for row in proj]
    m = [list(f[i]) + [-int(i == j) for j in range(s)] for i in range(s)]
    pre = la.lattice_preimage(m, pad.relations, r + s)
    fiber = la.lattice_intersection(emb_basis, pre, r + s)
    image = [tuple(x) + la.matvec(f, x) for x in fix_g]
    kernel_part = [tuple(q) + (0,) * s for q in pg.relations]
    surj = la.lattice_equal(la.lattice_sum(image, kernel_part, r + s), fiber, r + s)
    inj = not image or not kernel_part or la.lattice_intersection(image, kernel_part, r + s) == ()
    left = la.lattice_equal(la.lattice_sum(fix_g, pg.relations, r), inv_g, r)
    right = la.lattice_equal(la.lattice_sum(fix_ad, pad.relations, s), inv_ad, s)
    return SquareCheck(inj, surj, left, right)
