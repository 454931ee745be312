"""Invariants of sigma-conjugacy classes of elements b = p^lambda w."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import intlin as la
from .errors import NotInLeviError, PreconditionError, SuperbasicImpossible
from .pi1lat import pi1_of
from .rootdata import RootDatum, WeylElement, fmt_levi

PSI_ORDER_CAP = 10_000


@dataclass(frozen=True)
class BRep:
    """b = p^lam * w, optionally regarded as an element of the Levi ``levi``."""

    lam: tuple
    w: WeylElement
    datum: RootDatum
    levi: frozenset | None = None

    def __post_init__(self):
        if len(self.lam) != self.datum.rank:
            raise ValueError("lambda has the wrong length")
        if not la.is_integral(self.lam):
            raise ValueError("lambda must be integral")
        object.__setattr__(self, "lam", tuple(int(x) for x in self.lam))
        if self.levi is not None:
            object.__setattr__(self, "levi", frozenset(self.levi))
            if not self.datum.in_levi_weyl(self.w, self.levi):
                raise NotInLeviError("w is not in the Weyl group of the declared Levi")

    def to_json(self) -> dict:
        out = {"lambda": list(self.lam), "w_word": list(self.w.word)}
        if self.levi is not None:
            out["levi"] = fmt_levi(self.levi)
        return out


def make_b(datum: RootDatum, lam: Sequence[int], word: Iterable[int] = (), levi: Iterable[int] | None = None) -> BRep:
    return BRep(tuple(lam), datum.weyl_from_word(word), datum, None if levi is None else frozenset(levi))


def b_from_json(datum: RootDatum, doc: dict) -> BRep:
    return make_b(datum, doc["lambda"], doc.get("w_word", ()), doc.get("levi"))


def psi_matrix(b: BRep) -> tuple:
    return la.matmul(b.w.matrix, b.datum.sigma)


def newton_average(b: BRep) -> tuple:
    """(1/n) sum psi^i(lam) for psi = w o sigma, before dominantizing."""
    psi = psi_matrix(b)
    n = la.matrix_order(psi, PSI_ORDER_CAP)
    total = [Fraction(0)] * b.datum.rank
    cur = b.lam
    for _ in range(n):
        total = [t + x for t, x in zip(total, cur)]
        cur = la.matvec(psi, cur)
    return la.normalize(tuple(t / n for t in total))


@dataclass(frozen=True)
class NewtonPoint:
    nu: tuple

    def to_json(self) -> list:
        return [str(x) for x in self.nu]


def newton_point(b: BRep, L: Iterable[int] | None = None) -> NewtonPoint:
    """Newton point, dominant for L (default: the whole group)."""
    return NewtonPoint(b.datum.dominant_rep(newton_average(b), L)[0])


def kottwitz_point(b: BRep, L: Iterable[int] | None = None) -> tuple:
    """Class of lambda in pi_1(L)_Gamma, in Smith coordinates."""
    datum = b.datum
    L = frozenset(datum.full if L is None else L)
    if not datum.in_levi_weyl(b.w, L):
        raise NotInLeviError(f"b is not in the Levi {fmt_levi(L)}")
    return pi1_of(datum, L).coinvariant_class(b.lam)


def is_basic(b: BRep, L: Iterable[int] | None = None) -> bool:
    datum = b.datum
    nu = newton_average(b)
    idx = datum.full if L is None else L
    return all(datum.pairing(datum.simple_roots[i], nu) == 0 for i in idx)


def centralizer_levi(b: BRep, L: Iterable[int] | None = None) -> frozenset:
    """Simple roots of L orthogonal to the L-dominant Newton point."""
    datum = b.datum
    idx = datum.full if L is None else frozenset(L)
    nu = newton_point(b, idx).nu
    return frozenset(i for i in idx if datum.pairing(datum.simple_roots[i], nu) == 0)


def normalize(b: BRep, L: Iterable[int] | None = None) -> BRep:
    """A sigma-conjugate p^{u lam} (u w sigma(u)^-1), u in W_L, with L-dominant Newton average.

    The result lies in the centralizer Levi M_b (inside L) and is basic there.
    """
    datum = b.datum
    idx = datum.full if L is None else frozenset(L)
    nu_raw = newton_average(b)
    _, u = datum.dominant_rep(nu_raw, idx)
    nb = conjugate(b, u)
    mb = centralizer_levi(nb, idx)
    # re-express w by a word in the simple reflections of M_b
    for cand in datum.weyl_group(mb):
        if cand == nb.w:
            return BRep(nb.lam, cand, datum, mb)
    raise AssertionError("normalized Weyl part is not in W_{M_b}")


def conjugate(b: BRep, u: WeylElement) -> BRep:
    """The sigma-conjugate u b sigma(u)^-1 of b by a Weyl representative."""
    datum = b.datum
    w_new = u * b.w * datum.weyl_conjugate_by_sigma(datum.weyl_inverse(u))
    return BRep(u.act(b.lam), w_new, datum)


# ---------------------------------------------------------------------------
# superbasic elements


def _is_type_a(datum: RootDatum, comp: Sequence[int]) -> bool:
    edges = 0
    for i in comp:
        deg = 0
        for j in comp:
            if i != j and datum.cartan[i][j] != 0:
                if datum.cartan[i][j] != -1 or datum.cartan[j][i] != -1:
                    return False
                deg += 1
        if deg > 2:
            return False
        edges += deg
    return edges // 2 == len(comp) - 1


def _path_order(datum: RootDatum, comp: Sequence[int]) -> list[int]:
    comp = sorted(comp)
    if len(comp) == 1:
        return comp
    ends = [i for i in comp if sum(1 for j in comp if j != i and datum.cartan[i][j] != 0) == 1]
    order = [min(ends)]
    while len(order) < len(comp):
        nxt = [j for j in comp if j not in order and datum.cartan[order[-1]][j] != 0]
        order.append(nxt[0])
    return order


@dataclass(frozen=True)
class SuperbasicFactor:
    components: tuple
    h: int
    classes: tuple      # per-copy integers m_r modulo h
    flipped: bool

    @property
    def total(self) -> int:
        return sum(self.classes) % self.h

    @property
    def coprime(self) -> bool:
        return not self.flipped and gcd(self.total, self.h) == 1


def superbasic_factors(b: BRep, L: Iterable[int]) -> list[SuperbasicFactor]:
    """Per sigma-orbit of components of L: the per-copy Kottwitz integers."""
    datum = b.datum
    out = []
    for orbit in datum.sigma_component_orbits(L):
        c0 = orbit[0]
        if not _is_type_a(datum, c0):
            raise SuperbasicImpossible(f"component {list(c0)} is not of type A")
        h = len(c0) + 1
        order = _path_order(datum, c0)
        classes = []
        cur = order
        for _ in orbit:
            m = sum((j + 1) * datum.pairing(datum.simple_roots[i], b.lam) for j, i in enumerate(cur))
            classes.append(m % h)
            cur = [datum.sigma_perm[i] for i in cur]
        flipped = cur != order and h > 2
        out.append(SuperbasicFactor(tuple(orbit), h, tuple(classes), flipped))
    return out


def is_superbasic(b: BRep, L: Iterable[int] | None = None) -> bool:
    datum = b.datum
    L = frozenset(datum.full if L is None else L)
    if not datum.in_levi_weyl(b.w, L):
        raise NotInLeviError(f"b is not in the Levi {fmt_levi(L)}")
    if not datum.is_sigma_stable(L):
        raise PreconditionError("Levi must be sigma-stable")
    if not is_basic(b, L):
        return False
    return all(f.coprime for f in superbasic_factors(b, L))


def _coordinate_blocks(datum: RootDatum, L: Iterable[int]) -> list[list[int]]:
    """Coordinate blocks of a Levi whose simple roots are all e_i - e_{i+1}."""
    parent = list(range(datum.rank))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in L:
        a, c = datum.simple_roots[i], datum.simple_coroots[i]
        nz = [k for k, x in enumerate(a) if x]
        if a != c or len(nz) != 2 or a[nz[0]] != 1 or a[nz[1]] != -1 or nz[1] != nz[0] + 1:
            raise PreconditionError("standard forms need a Levi of block GL type")
        parent[find(nz[1])] = find(nz[0])
    blocks: dict[int, list[int]] = {}
    for k in range(datum.rank):
        blocks.setdefault(find(k), []).append(k)
    return sorted(blocks.values())


def superbasic_standard_form(datum: RootDatum, L: Iterable[int], m: Sequence[int]) -> BRep:
    """The element mu_min(p) w^m on each coordinate block of L.

    ``m`` gives one integer per coordinate block, blocks ordered by their first
    coordinate.  On a block of size h the block of lambda is
    floor(m/h) + (1,..,1,0,..,0) with m mod h ones, and the Weyl part is the
    m-th power of the cycle e_i -> e_{i+1}.  The sign matrix that turns the
    permutation into a determinant-one representative is not recorded.
    """
    L = frozenset(L)
    blocks = _coordinate_blocks(datum, L)
    if len(m) != len(blocks):
        raise ValueError(f"expected {len(blocks)} block integers, got {len(m)}")
    lam = [0] * datum.rank
    word: list[int] = []
    simple_index = {}
    for i in L:
        k = next(k for k, x in enumerate(datum.simple_roots[i]) if x == 1)
        simple_index[k] = i
    for block, mr in zip(blocks, m):
        h = len(block)
        q, rem = divmod(int(mr), h)
        for j, k in enumerate(block):
            lam[k] = q + (1 if j < rem else 0)
        # the cycle e_1 -> e_2 -> ... -> e_h -> e_1 is s_1 s_2 ... s_{h-1}
        cycle = [simple_index[block[j]] for j in range(h - 1)]
        word += cycle * (mr % h)
    b = BRep(tuple(lam), datum.weyl_from_word(word), datum, L)
    for f in superbasic_factors(b, L):
        if not f.coprime:
            raise PreconditionError(f"gcd condition fails on a factor of size {f.h}")
    if not is_superbasic(b, L):
        raise AssertionError("standard form is not superbasic")
    return b
