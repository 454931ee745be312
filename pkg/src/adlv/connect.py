"""The finite sets of pi_1(M)-classes that control connected components.

For a Levi M carrying b and a minuscule mu, the set I-bar consists of the
classes x in pi_1(M) whose M-dominant, M-minuscule lift mu_x is W-conjugate to
mu and has the Kottwitz point of b.  Moves between elements of I-bar are
differences alpha^vee - alpha'^vee of coroots from one Frobenius orbit of
roots outside M.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import intlin as la
from .errors import ChainNotFound, PreconditionError
from .isocrystal import BRep, is_superbasic
from .pi1lat import pi1_of
from .rootdata import RootDatum, Vec, WeylElement, fmt_levi

LIFT_STEP_CAP = 10_000


# ---------------------------------------------------------------------------
# minuscule lifts and w_x


def minuscule_lift(datum: RootDatum, x: Sequence[int], M: Iterable[int]) -> Vec:
    """The M-dominant, M-minuscule cocharacter in the pi_1(M)-class of the vector x."""
    M = frozenset(M)
    roots = datum.levi_roots(M)
    v, _ = datum.dominant_rep(tuple(x), M)
    for _ in range(LIFT_STEP_CAP):
        big = next((g for g in roots if datum.pairing(g, v) >= 2), None)
        if big is None:
            return v
        v, _ = datum.dominant_rep(la.vsub(v, datum.coroot_of[big]), M)
    raise RuntimeError("minuscule lift did not terminate")


def minuscule_lift_search(datum: RootDatum, x: Sequence[int], M: Iterable[int], box: int = 3) -> list[Vec]:
    """All M-dominant, M-minuscule x + sum n_i beta_i^vee with |n_i| <= box (a brute-force check)."""
    import itertools

    idx = sorted(M)
    out = []
    for ns in itertools.product(range(-box, box + 1), repeat=len(idx)):
        v = tuple(x)
        for n, i in zip(ns, idx):
            v = la.vadd(v, la.vscale(n, datum.simple_coroots[i]))
        if datum.is_dominant(v, idx) and datum.is_minuscule(v, idx):
            out.append(v)
    return sorted(set(out))


def w_x_compute(datum: RootDatum, mu_x: Sequence[int], M: Iterable[int]) -> WeylElement:
    """w_x = w_{0,x} w_{0,M}, with M_x the centralizer of mu_x in M."""
    M = frozenset(M)
    mx = frozenset(i for i in M if datum.pairing(datum.simple_roots[i], mu_x) == 0)
    return datum.longest_element(mx) * datum.longest_element(M)


def b_x(datum: RootDatum, mu_x: Sequence[int], M: Iterable[int]) -> BRep:
    M = frozenset(M)
    return BRep(tuple(mu_x), w_x_compute(datum, mu_x, M), datum, M)


# ---------------------------------------------------------------------------
# the set I-bar


def reflection_orbit(datum: RootDatum, mu: Sequence[int], roots: Iterable[Vec] | None = None) -> list[Vec]:
    """Orbit of mu under the reflections in ``roots`` (default: all roots)."""
    roots = datum.positive_roots if roots is None else [a for a in roots if datum.is_positive(a)]
    start = la.normalize(mu)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for a in roots:
            u = datum.reflect(a, v)
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return sorted(seen)


@dataclass(frozen=True)
class ISet:
    datum: RootDatum
    M: frozenset
    mu: tuple
    b: BRep
    elements: tuple          # tuples of Smith coordinates in pi_1(M), sorted
    lifts: dict              # coordinates -> mu_x
    roots: tuple | None = None   # reflecting roots when taken inside a subsystem

    def __contains__(self, x) -> bool:
        return tuple(x) in self.lifts

    def __len__(self) -> int:
        return len(self.elements)

    def coords(self, v: Sequence[int]) -> tuple:
        return pi1_of(self.datum, self.M).project(v)

    def lift(self, x) -> Vec:
        return self.lifts[tuple(x)]

    def to_json(self) -> dict:
        return {"levi": fmt_levi(self.M), "mu": list(self.mu),
                "elements": [{"x": list(x), "mu_x": list(self.lifts[x])} for x in self.elements]}


def iset_enumerate(datum: RootDatum, mu: Sequence[int], b: BRep, M: Iterable[int],
                   roots: Iterable[Vec] | None = None) -> ISet:
    """All x in pi_1(M) with mu_x conjugate to mu (under the reflections in ``roots``)
    and x equal to kappa_M(b) in pi_1(M)_Gamma."""
    M = frozenset(M)
    if not datum.is_sigma_stable(M):
        raise PreconditionError("M must be sigma-stable")
    if not datum.in_levi_weyl(b.w, M):
        raise PreconditionError("b is not in M")
    roots_t = None if roots is None else tuple(sorted(roots))
    p = pi1_of(datum, M)
    lifts = {}
    for v in reflection_orbit(datum, mu, roots_t):
        if not datum.is_dominant(v, M):
            continue
        if not datum.is_minuscule(v, M):
            raise PreconditionError("mu is not minuscule")
        if not p.same_coinvariant_class(v, b.lam):
            continue
        x = p.project(v)
        if x in lifts:
            raise AssertionError("two M-dominant minuscule lifts share a class")
        lifts[x] = v
    return ISet(datum, M, tuple(mu), b, tuple(sorted(lifts)), lifts, roots_t)


# ---------------------------------------------------------------------------
# adapted roots and Frobenius orbits


def sigma_orbit_root(datum: RootDatum, a: Vec) -> list[Vec]:
    out, cur = [], a
    while cur not in out:
        out.append(cur)
        cur = datum.sigma_root(cur)
    return out


def is_adapted(datum: RootDatum, a: Vec, M: Iterable[int]) -> bool:
    M = frozenset(M)
    co = datum.coroot_of[a]
    if any(datum.pairing(datum.simple_roots[i], co) > 0 for i in M):
        return False
    return all(abs(datum.pairing(g, co)) <= 1 for g in datum.levi_roots(M))


def anti_dominant_rep(datum: RootDatum, a: Vec, M: Iterable[int]) -> Vec:
    """The root in W_M a whose coroot pairs non-positively with all simple roots of M."""
    idx = sorted(M)
    changed = True
    while changed:
        changed = False
        for i in idx:
            if datum.pairing(datum.simple_roots[i], datum.coroot_of[a]) > 0:
                a = datum.reflect_root(datum.simple_roots[i], a)
                changed = True
                break
    return a


def adapted_modify(datum: RootDatum, a: Vec, M: Iterable[int]) -> Vec:
    """An adapted root with the same coroot class in pi_1(M) as ``a``.

    First take the anti-dominant representative in W_M a.  If a root beta of M
    still pairs to -2 or less with its coroot, add beta^vee to the coroot (this
    is the coroot of a long root) and repeat.
    """
    M = frozenset(M)
    cur = anti_dominant_rep(datum, a, M)
    for _ in range(len(datum.roots) + 1):
        if is_adapted(datum, cur, M):
            if not pi1_of(datum, M).plain.equal(datum.coroot_of[cur], datum.coroot_of[a]):
                raise AssertionError("modified root changed its pi_1(M) class")
            return cur
        co = datum.coroot_of[cur]
        beta = next(g for g in sorted(datum.levi_roots(M)) if datum.pairing(g, co) < -1)
        new_co = la.vadd(co, datum.coroot_of[beta])
        cur = anti_dominant_rep(datum, datum.root_of_coroot[new_co], M)
    raise AssertionError("adapted_modify did not terminate")


@dataclass(frozen=True)
class OmegaClass:
    omega: tuple
    closure: frozenset
    type: str
    counts: tuple
    adapted: bool
    d: int
    beta: Vec | None
    alpha_tilde: Vec

    def to_json(self) -> dict:
        return {"omega": [list(a) for a in self.omega], "type": self.type, "adapted": self.adapted,
                "d": self.d, "beta": None if self.beta is None else list(self.beta),
                "alpha_tilde": list(self.alpha_tilde), "closure_size": len(self.closure)}


def omega_classify(datum: RootDatum, a: Vec, M: Iterable[int]) -> OmegaClass:
    """Type of the Frobenius orbit of ``a`` relative to the subsystem it generates with M."""
    M = frozenset(M)
    omega = sigma_orbit_root(datum, a)
    closure = datum.closed_symmetric_closure(list(datum.levi_roots(M)) + omega)
    comps = datum.subsystem_components(closure)
    counts = []
    comp_of = {}
    for k, c in enumerate(comps):
        n = sum(1 for o in omega if o in c)
        if n:
            counts.append(n)
        for o in omega:
            if o in c:
                comp_of[o] = k
    if len(set(counts)) != 1 or counts[0] > 3:
        raise AssertionError(f"non-uniform Omega counts {counts}")
    typ = {1: "I", 2: "II", 3: "III"}[counts[0]]
    d = next(k for k in range(1, len(omega) + 1) if comp_of[omega[k % len(omega)]] == comp_of[a])
    beta = None
    tilde = a
    if typ != "I":
        partners = [omega[(j * d) % len(omega)] for j in range(1, counts[0])]
        group = [a] + partners
        basis = datum.subsystem_basis(closure)
        adjacent = typ == "II" and datum.pairing(a, datum.coroot_of[partners[0]]) != 0
        if not adjacent:
            common = [g for g in sorted(basis) if g not in group
                      and all(datum.pairing(g, datum.coroot_of[h]) != 0 for h in group)]
            if not common:
                raise AssertionError("no common neighbour found")
            beta = common[0]
        tilde = a
        for h in partners:
            tilde = la.vadd(tilde, h)
        if beta is not None:
            tilde = la.vadd(tilde, beta)
        if tilde not in datum.root_set:
            raise AssertionError("alpha-tilde is not a root")
    return OmegaClass(tuple(omega), closure, typ, tuple(counts), is_adapted(datum, a, M), d, beta, tilde)


# ---------------------------------------------------------------------------
# moves and chains


def orbit_moves(datum: RootDatum, M: Iterable[int]) -> dict:
    """Class of alpha^vee - alpha'^vee in pi_1(M) -> first certificate (alpha, alpha', orbit id)."""
    M = frozenset(M)
    p = pi1_of(datum, M)
    zero = p.project((0,) * datum.rank)
    out: dict = {}
    seen = set()
    orbit_id = 0
    for a in sorted(datum.unipotent_roots(M)):
        if a in seen:
            continue
        orb = sigma_orbit_root(datum, a)
        seen.update(orb)
        for x in orb:
            for y in orb:
                if x == y:
                    continue
                d = p.project(la.vsub(datum.coroot_of[x], datum.coroot_of[y]))
                if d != zero and d not in out:
                    out[d] = (x, y, orbit_id)
        orbit_id += 1
    return out


def _add_coords(p, x, delta) -> tuple:
    moduli = p.plain.moduli
    return tuple((a + b) % m if m else a + b for a, b, m in zip(x, delta, moduli))


@dataclass(frozen=True)
class Step:
    frm: tuple
    to: tuple
    alpha: Vec
    alpha_prime: Vec
    orbit_id: int = -1
    immediate: bool | None = None
    reverse: bool = False      # immediate distance runs from ``to`` to ``frm``
    m: int | None = None

    def to_json(self) -> dict:
        return {"from": list(self.frm), "to": list(self.to), "alpha": list(self.alpha),
                "alpha_prime": list(self.alpha_prime), "orbit_id": self.orbit_id,
                "immediate": self.immediate, "immediate_direction": "backward" if self.reverse else "forward",
                "m": self.m}


@dataclass(frozen=True)
class ChainWitness:
    vertices: tuple
    steps: tuple

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices], "steps": [s.to_json() for s in self.steps]}


def validate_chain(iset: ISet, chain: ChainWitness) -> bool:
    """Recompute every step: endpoints in I-bar and the certified coroot difference."""
    datum = iset.datum
    p = pi1_of(datum, iset.M)
    if len(chain.steps) != max(len(chain.vertices) - 1, 0):
        return False
    for k, s in enumerate(chain.steps):
        if s.frm != chain.vertices[k] or s.to != chain.vertices[k + 1]:
            return False
        if s.frm not in iset or s.to not in iset:
            return False
        if s.alpha_prime not in sigma_orbit_root(datum, s.alpha):
            return False
        diff = la.vsub(datum.coroot_of[s.alpha], datum.coroot_of[s.alpha_prime])
        start, end = (s.to, s.frm) if s.reverse else (s.frm, s.to)
        if _add_coords(p, start, p.project(diff)) != end:
            return False
    return True


def convexity_chain(iset: ISet, x: Sequence[int], x2: Sequence[int]) -> ChainWitness:
    """Breadth-first path from x to x2 inside I-bar using orbit moves."""
    x, x2 = tuple(x), tuple(x2)
    if x not in iset or x2 not in iset:
        raise PreconditionError("endpoints must lie in I-bar")
    datum = iset.datum
    p = pi1_of(datum, iset.M)
    moves = orbit_moves(datum, iset.M)
    prev = {x: None}
    queue = deque([x])
    while queue:
        cur = queue.popleft()
        if cur == x2:
            break
        nbrs = []
        for delta, cert in moves.items():
            y = _add_coords(p, cur, delta)
            if y in iset and y not in prev:
                nbrs.append((y, cert))
        for y, cert in sorted(nbrs):
            if y not in prev:
                prev[y] = (cur, cert)
                queue.append(y)
    if x2 not in prev:
        raise ChainNotFound(f"no path from {x} to {x2} in I-bar")
    path = [x2]
    certs = []
    while prev[path[-1]] is not None:
        cur, cert = prev[path[-1]]
        certs.append(cert)
        path.append(cur)
    path.reverse()
    certs.reverse()
    steps = tuple(Step(path[k], path[k + 1], c[0], c[1], c[2]) for k, c in enumerate(certs))
    return ChainWitness(tuple(path), steps)


def is_connected(iset: ISet) -> bool:
    if len(iset) <= 1:
        return True
    first = iset.elements[0]
    try:
        for y in iset.elements[1:]:
            convexity_chain(iset, first, y)
    except ChainNotFound:
        return False
    return True


# ---------------------------------------------------------------------------
# immediate distance


def _orbit_power(datum: RootDatum, a: Vec, a2: Vec) -> int:
    orb = sigma_orbit_root(datum, a)
    return orb.index(a2)


def is_immediate(iset: ISet, x1: Sequence[int], x2: Sequence[int], alpha: Vec, m: int) -> bool:
    """Whether the distance from x1 to x2 = x1 + alpha^vee - sigma^m(alpha)^vee is immediate."""
    datum = iset.datum
    x1, x2 = tuple(x1), tuple(x2)
    if not is_adapted(datum, alpha, iset.M):
        raise PreconditionError("move root must be adapted")
    p = pi1_of(datum, iset.M)
    orb = sigma_orbit_root(datum, alpha)
    n = len(orb)
    am = orb[m % n]
    if _add_coords(p, x1, p.project(la.vsub(datum.coroot_of[alpha], datum.coroot_of[am]))) != x2:
        raise PreconditionError("malformed move certificate")
    typ = omega_classify(datum, alpha, iset.M).type
    if typ == "I":
        ok = 0 < m < n
    elif typ == "II":
        ok = 0 < 2 * m <= n
    else:
        ok = 0 < 3 * m < 2 * n
    if not ok:
        return False
    for i in range(1, m):
        ai = orb[i % n]
        y1 = _add_coords(p, x1, p.project(la.vsub(datum.coroot_of[ai], datum.coroot_of[am])))
        y2 = _add_coords(p, x1, p.project(la.vsub(datum.coroot_of[alpha], datum.coroot_of[ai])))
        if y1 in iset or y2 in iset:
            return False
    return True


def _refine_move(iset: ISet, x: tuple, x2: tuple, alpha: Vec, m: int, oid: int = -1, depth: int = 0) -> list[Step]:
    """Immediate steps from x to x2 = x + alpha^vee - alpha^{m vee} (alpha adapted)."""
    if depth > 64:
        raise AssertionError("refinement recursion too deep")
    datum = iset.datum
    p = pi1_of(datum, iset.M)
    orb = sigma_orbit_root(datum, alpha)
    n = len(orb)
    m %= n
    if m == 0 or x == x2:
        return []
    if 2 * m > n:
        back = _refine_move(iset, x2, x, orb[m], n - m, oid, depth + 1)
        return [Step(s.to, s.frm, s.alpha, s.alpha_prime, s.orbit_id, s.immediate, not s.reverse, s.m)
                for s in reversed(back)]
    am = orb[m]
    for i in range(1, m):
        ai = orb[i]
        y = _add_coords(p, x, p.project(la.vsub(datum.coroot_of[ai], datum.coroot_of[am])))
        if y in iset:
            return (_refine_move(iset, x, y, ai, m - i, oid, depth + 1)
                    + _refine_move(iset, y, x2, alpha, i, oid, depth + 1))
        y = _add_coords(p, x, p.project(la.vsub(datum.coroot_of[alpha], datum.coroot_of[ai])))
        if y in iset:
            return (_refine_move(iset, x, y, alpha, i, oid, depth + 1)
                    + _refine_move(iset, y, x2, ai, m - i, oid, depth + 1))
    return [Step(x, x2, alpha, am, oid, is_immediate(iset, x, x2, alpha, m), False, m)]


def refine_immediate(iset: ISet, chain: ChainWitness) -> ChainWitness:
    """Split each move of a chain into steps that are immediate in one direction."""
    datum = iset.datum
    steps: list[Step] = []
    for s in chain.steps:
        alpha = adapted_modify(datum, s.alpha, iset.M)
        orb0 = sigma_orbit_root(datum, s.alpha)
        m = orb0.index(s.alpha_prime)
        steps += _refine_move(iset, s.frm, s.to, alpha, m, s.orbit_id)
    vertices = [chain.vertices[0]] + [s.to for s in steps] if chain.vertices else []
    return ChainWitness(tuple(vertices), tuple(steps))


def check_refined(iset: ISet, chain: ChainWitness) -> bool:
    """Every consecutive pair is immediate in the recorded direction."""
    for s in chain.steps:
        a, b = (s.to, s.frm) if s.reverse else (s.frm, s.to)
        if not is_immediate(iset, a, b, s.alpha, s.m):
            return False
    return validate_chain(iset, chain) if chain.steps else True


# ---------------------------------------------------------------------------
# generation of the coroot lattice


@dataclass(frozen=True)
class GenerationResult:
    ok: bool
    generators: tuple
    span: tuple
    coroot_lattice: tuple

    def to_json(self) -> dict:
        return {"ok": self.ok, "generators": [list(g) for g in self.generators]}


def generation_check(datum: RootDatum, mu_x0: Sequence[int], M: Iterable[int], check_pre: bool = True) -> GenerationResult:
    """Do the coroots of M and the Frobenius orbits of C span the coroot lattice of G?

    C consists of the coroots of adapted roots alpha outside M with
    <alpha, mu_x0> < 0.  The pair (mu, b_{x0}) must be Hodge-Newton
    irreducible and b_{x0} superbasic in M.
    """
    from .hnstrat import hn_classify

    M = frozenset(M)
    mu_x0 = tuple(mu_x0)
    if check_pre:
        b0 = b_x(datum, mu_x0, M)
        if not is_superbasic(b0, M):
            raise PreconditionError("b_{x0} is not superbasic in M")
        mu = datum.dominant_rep(mu_x0)[0]
        if hn_classify(b0, mu).hn_class != "irreducible":
            raise PreconditionError("(mu, b_{x0}) is not Hodge-Newton irreducible")
    gens = []
    for a in sorted(datum.unipotent_roots(M)):
        if is_adapted(datum, a, M) and datum.pairing(a, mu_x0) < 0:
            for c in sigma_orbit_root(datum, a):
                gens.append(datum.coroot_of[c])
    gens = sorted(set(gens))
    span = la.hnf_rows(gens + list(datum.levi_coroot_lattice(M)), datum.rank)
    full = la.hnf_rows(datum.simple_coroots, datum.rank)
    return GenerationResult(span == full, tuple(gens), span, full)


# ---------------------------------------------------------------------------
# conjugating a root inside a Weyl orbit


def is_long_root(datum: RootDatum, a: Vec) -> bool:
    """True when some root other than +-a is strictly shorter than a."""
    neg = la.vscale(-1, a)
    return any(abs(datum.pairing(a, datum.coroot_of[g])) >= 2 for g in datum.roots if g not in (a, neg))


def weyl_orbit_conjugators(datum: RootDatum, alpha: Vec, gamma: Vec, H: Iterable[int]) -> list[Vec]:
    """Pairwise orthogonal positive roots beta_i of H whose reflections carry alpha to gamma.

    ``alpha`` must be a positive root pairing non-positively with the coroots
    of the simple roots of H.
    The difference gamma - alpha (or of the coroots, for long alpha) is expanded
    in simple roots of H and regrouped.
    """
    H = frozenset(H)
    if not datum.is_positive(alpha):
        raise PreconditionError("alpha must be a positive root")
    if any(datum.pairing(alpha, datum.simple_coroots[i]) > 0 for i in H):
        raise PreconditionError("alpha is not H-anti-dominant")
    if gamma not in {datum.weyl_act_root(w, alpha) for w in datum.weyl_group(H)}:
        raise PreconditionError("gamma is not in the W_H-orbit of alpha")
    if gamma == alpha:
        return []
    long_case = is_long_root(datum, alpha)
    if not long_case:
        exp = datum.root_expansion(la.vsub(gamma, alpha), H)
        terms = []
        for i, c in sorted(exp.items()):
            terms += [datum.simple_roots[i]] * int(c)
        betas = datum.regroup(terms, "root")
    else:
        exp = datum.coroot_expansion(la.vsub(datum.coroot_of[gamma], datum.coroot_of[alpha]), H)
        terms = []
        for i, c in sorted(exp.items()):
            terms += [datum.simple_coroots[i]] * int(c)
        betas = [datum.root_of_coroot[c] for c in datum.regroup(terms, "coroot")]
    check_conjugators(datum, alpha, gamma, betas)
    return betas


def check_conjugators(datum: RootDatum, alpha: Vec, gamma: Vec, betas: Sequence[Vec]) -> None:
    for k, b in enumerate(betas):
        if not datum.is_positive(b):
            raise AssertionError("conjugator is not positive")
        for c in betas[k + 1:]:
            if datum.pairing(b, datum.coroot_of[c]) != 0:
                raise AssertionError("conjugators are not orthogonal")
        if not datum.pairing(gamma, datum.coroot_of[b]) > 0 > datum.pairing(alpha, datum.coroot_of[b]):
            raise AssertionError("conjugator pairing condition fails")
    g = alpha
    for b in betas:
        g = datum.reflect_root(b, g)
    if g != gamma:
        raise AssertionError("reflections do not carry alpha to gamma")
    height = datum.root_height(alpha) + sum(abs(datum.pairing(alpha, datum.coroot_of[b])) * datum.root_height(b)
                                             for b in betas)
    if height != datum.root_height(gamma):
        raise AssertionError("height identity fails")
