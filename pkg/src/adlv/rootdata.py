"""Root data with a finite-order Frobenius automorphism.

Cocharacters and characters are integer vectors of the same length.  Characters
are stored in the dual basis, so the pairing is the coordinate dot product.  An
explicit datum may supply another unimodular pairing matrix; it is converted to
the dual basis on construction.

The Frobenius ``sigma`` is a matrix acting on cocharacters (column vectors).  It
acts on characters by the inverse transpose, which keeps the pairing invariant.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import intlin as la
from .errors import DatumError

Vec = tuple
Levi = frozenset

ROOT_CAP = 5000
WEYL_CAP = 200_000


def levi(indices: Iterable[int] = ()) -> Levi:
    return frozenset(int(i) for i in indices)


def fmt_levi(L: Iterable[int]) -> list[int]:
    return sorted(L)


@dataclass(frozen=True, eq=False)
class WeylElement:
    """A Weyl group element, canonically its matrix on cocharacters.

    ``word`` lists simple reflection indices, leftmost factor first.  It is a
    certificate only and does not take part in equality.
    """

    matrix: tuple
    word: tuple = ()

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def act(self, lam: Sequence) -> Vec:
        return la.normalize(la.matvec(self.matrix, lam))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(la.matmul(self.matrix, other.matrix), self.word + other.word)

    def is_identity(self) -> bool:
        return self.matrix == la.identity(len(self.matrix))


class RootDatum:
    """A reduced root datum of finite type with a Frobenius automorphism."""

    def __init__(self, cochar_rank: int, simple_roots: Sequence[Sequence[int]],
                 simple_coroots: Sequence[Sequence[int]], sigma: Sequence[Sequence[int]] | None = None,
                 name: str = "explicit", pairing: Sequence[Sequence[int]] | None = None):
        r = int(cochar_rank)
        if r <= 0:
            raise DatumError("cochar_rank must be positive")
        roots = [tuple(int(x) for x in a) for a in simple_roots]
        coroots = [tuple(int(x) for x in a) for a in simple_coroots]
        if len(roots) != len(coroots):
            raise DatumError("simple roots and coroots differ in number")
        if any(len(v) != r for v in roots + coroots):
            raise DatumError("vector length does not match cochar_rank")
        if pairing is not None:
            p = la.to_matrix(pairing)
            if len(p) != r or any(len(row) != r for row in p):
                raise DatumError("pairing matrix has the wrong shape")
            try:
                la.integer_inverse(p)
            except ValueError as exc:
                raise DatumError("pairing matrix must be unimodular") from exc
            pt = la.transpose(p)
            roots = [la.matvec(pt, a) for a in roots]
        self.name = name
        self.rank = r
        self.simple_roots: tuple[Vec, ...] = tuple(roots)
        self.simple_coroots: tuple[Vec, ...] = tuple(coroots)
        self.n_simple = len(roots)
        self.sigma = la.to_matrix(sigma) if sigma is not None else la.identity(r)
        if len(self.sigma) != r or any(len(row) != r for row in self.sigma):
            raise DatumError("sigma has the wrong shape")
        try:
            self.sigma_inv = la.integer_inverse(self.sigma)
        except ValueError as exc:
            raise DatumError("sigma is not invertible over Z") from exc
        self.sigma_char = la.transpose(self.sigma_inv)
        self._check_cartan()
        self._generate_roots()
        self._check_sigma()
        self.sigma_order = la.matrix_order(self.sigma)

    # -- construction checks ----------------------------------------------

    def _check_cartan(self) -> None:
        n = self.n_simple
        self.cartan = tuple(tuple(la.dot(self.simple_roots[i], self.simple_coroots[j]) for j in range(n))
                            for i in range(n))
        for i in range(n):
            if self.cartan[i][i] != 2:
                raise DatumError(f"pairing of simple root {i} with its coroot is not 2")
            for j in range(n):
                if i != j:
                    if self.cartan[i][j] > 0:
                        raise DatumError("positive off-diagonal Cartan entry")
                    if (self.cartan[i][j] == 0) != (self.cartan[j][i] == 0):
                        raise DatumError("Cartan matrix zero pattern is not symmetric")
        if n and la.rank(self.simple_roots) != n:
            raise DatumError("simple roots are linearly dependent")
        if n and la.rank(self.simple_coroots) != n:
            raise DatumError("simple coroots are linearly dependent")

    def _generate_roots(self) -> None:
        n = self.n_simple
        unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        # entries: root -> (coroot, root coefficients, coroot coefficients)
        data: dict[Vec, tuple[Vec, Vec, Vec]] = {}
        queue = deque()
        for i in range(n):
            for s in (1, -1):
                a = la.vscale(s, self.simple_roots[i])
                data[a] = (la.vscale(s, self.simple_coroots[i]), la.vscale(s, unit[i]), la.vscale(s, unit[i]))
                queue.append(a)
        while queue:
            a = queue.popleft()
            ac, rc, cc = data[a]
            for i in range(n):
                k = la.dot(a, self.simple_coroots[i])
                kc = la.dot(self.simple_roots[i], ac)
                b = la.vsub(a, la.vscale(k, self.simple_roots[i]))
                if b not in data:
                    data[b] = (la.vsub(ac, la.vscale(kc, self.simple_coroots[i])),
                               la.vsub(rc, la.vscale(k, unit[i])),
                               la.vsub(cc, la.vscale(kc, unit[i])))
                    queue.append(b)
                    if len(data) > ROOT_CAP:
                        raise DatumError("root system appears to be of infinite type")
        self.roots: tuple[Vec, ...] = tuple(sorted(data))
        self.coroot_of = {a: data[a][0] for a in data}
        self.root_of_coroot = {data[a][0]: a for a in data}
        self.root_coeffs = {a: data[a][1] for a in data}
        self.coroot_coeffs = {a: data[a][2] for a in data}
        for a, c in self.root_coeffs.items():
            if not (all(x >= 0 for x in c) or all(x <= 0 for x in c)):
                raise DatumError("root with mixed-sign coefficients; input is not of finite type")
        self.positive_roots = tuple(a for a in self.roots if sum(self.root_coeffs[a]) > 0)
        self.root_set = frozenset(self.roots)

    def _check_sigma(self) -> None:
        perm = []
        for i in range(self.n_simple):
            img_co = la.matvec(self.sigma, self.simple_coroots[i])
            img_r = la.matvec(self.sigma_char, self.simple_roots[i])
            try:
                j = self.simple_coroots.index(img_co)
            except ValueError:
                raise DatumError("sigma does not permute the simple coroots") from None
            if self.simple_roots[j] != img_r:
                raise DatumError("sigma does not permute simple roots compatibly with coroots")
            perm.append(j)
        self.sigma_perm = tuple(perm)

    # -- basic operations -------------------------------------------------

    def __repr__(self) -> str:
        return f"RootDatum({self.name}, rank={self.rank}, simple={self.n_simple})"

    @property
    def full(self) -> Levi:
        return frozenset(range(self.n_simple))

    def pairing(self, chi: Sequence, lam: Sequence):
        if len(chi) != self.rank or len(lam) != self.rank:
            raise ValueError("length mismatch in pairing")
        v = sum(Fraction(x) * y for x, y in zip(chi, lam))
        return int(v) if v.denominator == 1 else v

    def sigma_act(self, lam: Sequence, power: int = 1) -> Vec:
        m = self.sigma if power >= 0 else self.sigma_inv
        v = tuple(lam)
        for _ in range(abs(power)):
            v = la.matvec(m, v)
        return la.normalize(v)

    def sigma_root(self, a: Vec, power: int = 1) -> Vec:
        m = self.sigma_char if power >= 0 else la.transpose(self.sigma)
        v = a
        for _ in range(abs(power)):
            v = la.matvec(m, v)
        return v

    def coroot(self, a: Vec) -> Vec:
        return self.coroot_of[a]

    def is_positive(self, a: Vec) -> bool:
        return sum(self.root_coeffs[a]) > 0

    def reflect(self, a: Vec, lam: Sequence) -> Vec:
        k = self.pairing(a, lam)
        return la.normalize(la.vsub(lam, la.vscale(k, self.coroot_of[a])))

    def reflect_root(self, a: Vec, b: Vec) -> Vec:
        return la.vsub(b, la.vscale(la.dot(b, self.coroot_of[a]), a))

    def simple_reflection(self, i: int) -> WeylElement:
        a, c = self.simple_roots[i], self.simple_coroots[i]
        m = tuple(tuple(int(r == s) - c[r] * a[s] for s in range(self.rank)) for r in range(self.rank))
        return WeylElement(m, (i,))

    def identity(self) -> WeylElement:
        return WeylElement(la.identity(self.rank), ())

    def weyl_from_word(self, word: Iterable[int]) -> WeylElement:
        w = self.identity()
        for i in word:
            if not 0 <= int(i) < self.n_simple:
                raise ValueError(f"simple reflection index {i} out of range")
            w = w * self.simple_reflection(int(i))
        return w

    def weyl_inverse(self, w: WeylElement) -> WeylElement:
        return self.weyl_from_word(reversed(w.word)) if w.word or w.is_identity() else \
            WeylElement(la.integer_inverse(w.matrix), ())

    def weyl_act_root(self, w: WeylElement, a: Vec) -> Vec:
        return self.root_of_coroot[w.act(self.coroot_of[a])]

    def weyl_conjugate_by_sigma(self, w: WeylElement) -> WeylElement:
        """sigma w sigma^-1; on words it permutes indices."""
        return self.weyl_from_word(self.sigma_perm[i] for i in w.word)

    def in_levi_weyl(self, w: WeylElement, L: Iterable[int]) -> bool:
        return w in self.weyl_group(L)

    # -- Levi subsets -------------------------------------------------------

    def levi_roots(self, L: Iterable[int]) -> tuple[Vec, ...]:
        L = set(L)
        return tuple(a for a in self.roots if all(c == 0 or i in L for i, c in enumerate(self.root_coeffs[a])))

    def levi_positive_roots(self, L: Iterable[int]) -> tuple[Vec, ...]:
        return tuple(a for a in self.levi_roots(L) if self.is_positive(a))

    def unipotent_roots(self, L: Iterable[int]) -> tuple[Vec, ...]:
        """Positive roots outside the Levi (the roots of N)."""
        inside = set(self.levi_roots(L))
        return tuple(a for a in self.positive_roots if a not in inside)

    def is_sigma_stable(self, L: Iterable[int]) -> bool:
        L = set(L)
        return {self.sigma_perm[i] for i in L} == L

    def sigma_orbits_simple(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(self.n_simple):
            if i in seen:
                continue
            orb, j = [], i
            while j not in orb:
                orb.append(j)
                j = self.sigma_perm[j]
            seen.update(orb)
            out.append(tuple(sorted(orb)))
        return out

    def sigma_stable_levis(self) -> list[Levi]:
        orbits = self.sigma_orbits_simple()
        out = []
        for mask in range(1 << len(orbits)):
            s = set()
            for k, o in enumerate(orbits):
                if mask >> k & 1:
                    s.update(o)
            out.append(frozenset(s))
        out.sort(key=lambda s: (len(s), sorted(s)))
        return out

    def components(self, L: Iterable[int] | None = None) -> list[tuple[int, ...]]:
        """Connected components of the Dynkin subdiagram on L."""
        L = set(self.full if L is None else L)
        seen, out = set(), []
        for i in sorted(L):
            if i in seen:
                continue
            comp, stack = set(), [i]
            while stack:
                j = stack.pop()
                if j in comp:
                    continue
                comp.add(j)
                stack.extend(k for k in L if k not in comp and self.cartan[j][k] != 0)
            seen |= comp
            out.append(tuple(sorted(comp)))
        return out

    def sigma_component_orbits(self, L: Iterable[int] | None = None) -> list[tuple[tuple[int, ...], ...]]:
        """Components of L grouped into sigma-orbits (the F-simple factors)."""
        comps = self.components(L)
        index = {c: k for k, c in enumerate(comps)}
        seen, out = set(), []
        for c in comps:
            if c in seen:
                continue
            orb, cur = [], c
            while cur not in orb:
                orb.append(cur)
                cur = tuple(sorted(self.sigma_perm[i] for i in cur))
                if cur not in index:
                    raise ValueError("Levi subset is not sigma-stable")
            seen.update(orb)
            out.append(tuple(orb))
        return out

    def levi_coroot_lattice(self, L: Iterable[int]) -> tuple[Vec, ...]:
        return tuple(self.simple_coroots[i] for i in sorted(L))

    # -- Weyl groups ----------------------------------------------------------

    def weyl_group(self, L: Iterable[int] | None = None) -> tuple[WeylElement, ...]:
        key = frozenset(self.full if L is None else L)
        cache = self.__dict__.setdefault("_weyl_cache", {})
        if key not in cache:
            gens = [self.simple_reflection(i) for i in sorted(key)]
            start = self.identity()
            seen = {start.matrix: start}
            queue = deque([start])
            while queue:
                w = queue.popleft()
                for g in gens:
                    u = w * g
                    if u.matrix not in seen:
                        seen[u.matrix] = u
                        queue.append(u)
                        if len(seen) > WEYL_CAP:
                            raise DatumError("Weyl group too large to enumerate")
            cache[key] = tuple(seen.values())
        return cache[key]

    def dominant_rep(self, lam: Sequence, L: Iterable[int] | None = None) -> tuple[Vec, WeylElement]:
        """Dominant element of the W_L-orbit of lam and w in W_L with w(lam) = rep."""
        idx = sorted(self.full if L is None else L)
        v = la.normalize(lam)
        word: list[int] = []
        changed = True
        while changed:
            changed = False
            for i in idx:
                if self.pairing(self.simple_roots[i], v) < 0:
                    v = self.reflect(self.simple_roots[i], v)
                    word.insert(0, i)
                    changed = True
                    break
        return v, self.weyl_from_word(word)

    def is_dominant(self, lam: Sequence, L: Iterable[int] | None = None) -> bool:
        idx = self.full if L is None else L
        return all(self.pairing(self.simple_roots[i], lam) >= 0 for i in idx)

    def longest_element(self, L: Iterable[int] | None = None) -> WeylElement:
        idx = sorted(self.full if L is None else L)
        w = self.identity()
        while True:
            for i in idx:
                if self.is_positive(self.weyl_act_root(w, self.simple_roots[i])):
                    w = w * self.simple_reflection(i)
                    break
            else:
                return w

    def length(self, w: WeylElement) -> int:
        return sum(1 for a in self.positive_roots if not self.is_positive(self.weyl_act_root(w, a)))

    # -- expansions, dominance, norms ---------------------------------------

    def coroot_expansion(self, phi: Sequence, L: Iterable[int] | None = None) -> dict[int, object] | None:
        """Rational coefficients of phi in the simple coroots of L, or None."""
        idx = sorted(self.full if L is None else L)
        if not idx:
            return {} if all(x == 0 for x in phi) else None
        cols = la.transpose([self.simple_coroots[i] for i in idx])
        sol = la.solve_rational(cols, phi)
        if sol is None:
            return None
        return dict(zip(idx, sol))

    def root_expansion(self, chi: Sequence, L: Iterable[int] | None = None) -> dict[int, object] | None:
        idx = sorted(self.full if L is None else L)
        if not idx:
            return {} if all(x == 0 for x in chi) else None
        cols = la.transpose([self.simple_roots[i] for i in idx])
        sol = la.solve_rational(cols, chi)
        return None if sol is None else dict(zip(idx, sol))

    def dominance(self, mu1: Sequence, mu2: Sequence, mode: str = "rational",
                  L: Iterable[int] | None = None) -> bool:
        """mu1 <= mu2: mu2 - mu1 is a non-negative combination of positive coroots of L."""
        if len(mu1) != len(mu2):
            raise ValueError("length mismatch")
        if mode not in ("rational", "integral"):
            raise ValueError("mode must be 'rational' or 'integral'")
        if mode == "integral" and not (la.is_integral(mu1) and la.is_integral(mu2)):
            raise ValueError("integral dominance is undefined on rational cocharacters")
        exp = self.coroot_expansion(la.vsub(mu2, mu1), L)
        if exp is None:
            return False
        if mode == "integral" and not la.is_integral(exp.values()):
            return False
        return all(c >= 0 for c in exp.values())

    def norms(self, phi: Sequence) -> tuple[int, int]:
        """(|phi|, |phi|_Gamma) for phi in the coroot lattice."""
        exp = self.coroot_expansion(phi)
        if exp is None or not la.is_integral(exp.values()):
            raise ValueError("not in the coroot lattice")
        plain = sum(abs(int(c)) for c in exp.values())
        gamma = sum(abs(sum(int(exp[i]) for i in orb)) for orb in self.sigma_orbits_simple())
        return plain, gamma

    def root_height(self, a: Vec) -> int:
        """|a| for a root: the sum of absolute simple-root coefficients."""
        return sum(abs(c) for c in self.root_coeffs[a])

    def coroot_height(self, a: Vec) -> int:
        return sum(abs(c) for c in self.coroot_coeffs[a])

    def is_minuscule(self, mu: Sequence, L: Iterable[int] | None = None) -> bool:
        roots = self.roots if L is None else self.levi_roots(L)
        return all(self.pairing(a, mu) in (-1, 0, 1) for a in roots)

    def is_central(self, mu: Sequence, L: Iterable[int] | None = None) -> bool:
        idx = self.full if L is None else L
        return all(self.pairing(self.simple_roots[i], mu) == 0 for i in idx)

    def sigma_average(self, v: Sequence) -> Vec:
        """Average of the sigma-orbit of v (the mu-bar construction)."""
        n = self.sigma_order
        total = [Fraction(0)] * self.rank
        cur = tuple(v)
        for _ in range(n):
            total = [t + x for t, x in zip(total, cur)]
            cur = la.matvec(self.sigma, cur)
        return la.normalize(tuple(t / n for t in total))

    def central_projection(self, v: Sequence, L: Iterable[int]) -> Vec:
        """Project v to the orthogonal complement of the roots of L along their coroots."""
        idx = sorted(L)
        if not idx:
            return la.normalize(v)
        sub = [[self.cartan[i][j] for j in idx] for i in idx]
        rhs = [self.pairing(self.simple_roots[i], v) for i in idx]
        d = la.solve_rational(sub, rhs)
        out = [Fraction(x) for x in v]
        for c, i in zip(d, idx):
            out = [x - c * y for x, y in zip(out, self.simple_coroots[i])]
        return la.normalize(out)

    # -- root subsystems ------------------------------------------------------

    def closed_symmetric_closure(self, seed: Iterable[Vec]) -> frozenset:
        s = set(seed)
        for a in s:
            if a not in self.root_set:
                raise ValueError(f"{a} is not a root")
        s |= {la.vscale(-1, a) for a in s}
        changed = True
        while changed:
            changed = False
            for a in list(s):
                for b in list(s):
                    c = la.vadd(a, b)
                    if c in self.root_set and c not in s:
                        s.add(c)
                        changed = True
        return frozenset(s)

    def subsystem_basis(self, subsystem: Iterable[Vec]) -> frozenset:
        pos = [a for a in subsystem if self.is_positive(a)]
        pos_set = set(pos)
        out = set()
        for a in pos:
            if not any(la.vsub(a, b) in pos_set for b in pos if b != a):
                out.add(a)
        return frozenset(out)

    def subsystem_components(self, subsystem: Iterable[Vec]) -> list[frozenset]:
        """Irreducible components of a closed subsystem, via its basis."""
        sub = set(subsystem)
        basis = sorted(self.subsystem_basis(sub))
        groups: list[set] = []
        for b in basis:
            linked = [g for g in groups if any(la.dot(b, self.coroot_of[c]) != 0 for c in g)]
            merged = {b}.union(*linked) if linked else {b}
            groups = [g for g in groups if g not in linked] + [merged]
        out = []
        for g in groups:
            out.append(frozenset(a for a in sub if self._supported_on(a, g)))
        return out

    def _supported_on(self, a: Vec, basis: Iterable[Vec]) -> bool:
        basis = list(basis)
        sol = la.solve_rational(la.transpose(basis), a)
        return sol is not None

    # -- regrouping sums of roots -------------------------------------------

    def regroup(self, terms: Iterable[Vec], side: str = "root") -> list[Vec]:
        """Regroup a list of roots (or coroots) into one with non-negative pairings.

        While two entries pair negatively, they are either cancelled (if
        opposite) or replaced by their sum, which is again a root.  The sum is
        preserved and the number of entries drops every round.
        """
        if side == "root":
            vecs = list(terms)
            co = self.coroot_of
            valid = self.root_set
        else:
            vecs = list(terms)
            co = self.root_of_coroot
            valid = frozenset(self.root_of_coroot)
        for v in vecs:
            if v not in valid:
                raise ValueError(f"{v} is not a {side}")
        while True:
            hit = None
            for i in range(len(vecs)):
                for j in range(i + 1, len(vecs)):
                    if la.dot(vecs[i], co[vecs[j]]) < 0:
                        hit = (i, j)
                        break
                if hit:
                    break
            if hit is None:
                return sorted(vecs)
            i, j = hit
            a, b = vecs[i], vecs[j]
            rest = [v for k, v in enumerate(vecs) if k not in (i, j)]
            s = la.vadd(a, b)
            if any(s):
                if s not in valid:
                    raise AssertionError("sum of negatively paired roots is not a root")
                rest.append(s)
            vecs = rest

    def orthogonal_decomposition(self, mu1: Sequence[int], mu2: Sequence[int]) -> list[Vec]:
        """Write mu1 - mu2 as a sum of pairwise orthogonal coroots.

        Both inputs must be minuscule and W-conjugate.  Every returned coroot
        pairs to 1 with mu1 and to -1 with mu2.
        """
        mu1, mu2 = tuple(mu1), tuple(mu2)
        if not (self.is_minuscule(mu1) and self.is_minuscule(mu2)):
            raise ValueError("inputs must be minuscule")
        if self.dominant_rep(mu1)[0] != self.dominant_rep(mu2)[0]:
            raise ValueError("inputs are not W-conjugate")
        diff = la.vsub(mu1, mu2)
        exp = self.coroot_expansion(diff)
        if exp is None or not la.is_integral(exp.values()):
            raise ValueError("difference is not in the coroot lattice")
        terms: list[Vec] = []
        for i, c in sorted(exp.items()):
            c = int(c)
            terms += [la.vscale(1 if c > 0 else -1, self.simple_coroots[i])] * abs(c)
        out = self.regroup(terms, side="coroot")
        for k, g in enumerate(out):
            root = self.root_of_coroot[g]
            if self.pairing(root, mu1) != 1 or self.pairing(root, mu2) != -1:
                raise AssertionError("decomposition pairing condition failed")
            for h in out[k + 1:]:
                if la.dot(root, h) != 0:
                    raise AssertionError("decomposition is not orthogonal")
        if sum(self.coroot_height(self.root_of_coroot[g]) for g in out) != self.norms(diff)[0]:
            raise AssertionError("decomposition norm identity failed")
        return out
