"""Brute-force points of affine Deligne-Lusztig varieties for GL_n over F_q((t)).

A lattice is stored by its column Hermite form: column j is
t^{a_j} e_j + sum_{i<j} c_ij e_i, where each c_ij is a Laurent polynomial whose
exponents lie in [-N, a_i - 1].  A point of X_mu(b) is a lattice L = g O^n with
g^{-1} b sigma(g) in K t^mu K, where sigma raises coefficients to the q-th power.

Relative positions are read off from determinantal divisors of matrices with
Laurent polynomial entries, which is exact: no power series are truncated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import PreconditionError, ResourceExhausted
from .ffield import FiniteField, field as get_field
from .presets import gl

# Laurent polynomials are dicts {exponent: nonzero field element}.
Poly = dict

MAX_RANK = 5
DEFAULT_CAP = 200_000


# ---------------------------------------------------------------------------
# Laurent polynomial arithmetic


def p_add(F: FiniteField, a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for e, c in b.items():
        v = F.add_t[out.get(e, 0)][c]
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def p_neg(F: FiniteField, a: Poly) -> Poly:
    return {e: F.neg_t[c] for e, c in a.items()}


def p_sub(F: FiniteField, a: Poly, b: Poly) -> Poly:
    return p_add(F, a, p_neg(F, b))


def p_mul(F: FiniteField, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return {}
    out: dict = {}
    mul, add = F.mul_t, F.add_t
    for e1, c1 in a.items():
        row = mul[c1]
        for e2, c2 in b.items():
            e = e1 + e2
            out[e] = add[out.get(e, 0)][row[c2]]
    return {e: c for e, c in out.items() if c}


def p_shift(a: Poly, k: int) -> Poly:
    return {e + k: c for e, c in a.items()}


def p_val(a: Poly) -> float:
    return min(a) if a else float("inf")


def p_frob(F: FiniteField, a: Poly) -> Poly:
    return {e: F.frob_t[c] for e, c in a.items()}


def monomial(k: int, c: int = 1) -> Poly:
    return {k: c} if c else {}


# ---------------------------------------------------------------------------
# matrices of Laurent polynomials


def m_mul(F: FiniteField, a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc: Poly = {}
            for t in range(k):
                if a[i][t] and b[t][j]:
                    acc = p_add(F, acc, p_mul(F, a[i][t], b[t][j]))
            row.append(acc)
        out.append(row)
    return out


def det(F: FiniteField, a) -> Poly:
    n = len(a)
    if n == 0:
        return {0: 1}
    if n == 1:
        return a[0][0]
    if n == 2:
        return p_sub(F, p_mul(F, a[0][0], a[1][1]), p_mul(F, a[0][1], a[1][0]))
    out: Poly = {}
    for j in range(n):
        if not a[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        term = p_mul(F, a[0][j], det(F, minor))
        out = p_sub(F, out, term) if j % 2 else p_add(F, out, term)
    return out


def adjugate(F: FiniteField, a):
    n = len(a)
    out = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(a) if k != i]
            d = det(F, minor)
            out[j][i] = p_neg(F, d) if (i + j) % 2 else d
    return out


def determinantal_valuations(F: FiniteField, a) -> list[float]:
    """d_k = minimal valuation of the k x k minors, k = 1..n."""
    n = len(a)
    out = []
    for k in range(1, n + 1):
        best = float("inf")
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(n), k):
                v = p_val(det(F, [[a[i][j] for j in cols] for i in rows]))
                if v < best:
                    best = v
        out.append(best)
    return out


def elementary_divisors(F: FiniteField, a, shift: int = 0) -> tuple[int, ...]:
    """Exponents of the elementary divisors of a (divided by t^shift), sorted decreasingly."""
    d = determinantal_valuations(F, a)
    if d[-1] == float("inf"):
        raise PreconditionError("matrix is singular")
    prev = 0
    exps = []
    for v in d:
        exps.append(int(v - prev))
        prev = v
    return tuple(sorted((e - shift for e in exps), reverse=True))


def relative_position(F: FiniteField, basis1, basis2) -> tuple[int, ...]:
    """Cartan invariant of the pair of lattices spanned by the columns of basis1 and basis2."""
    d1 = det(F, basis1)
    if not d1:
        raise PreconditionError("first basis is singular")
    return elementary_divisors(F, m_mul(F, adjugate(F, basis1), basis2), int(p_val(d1)))


# ---------------------------------------------------------------------------
# Hermite-form lattices


@dataclass(frozen=True)
class LatticePoint:
    field_size: int
    shape: tuple                   # a_1 .. a_n
    entries: tuple                 # ((i, j, ((exp, coeff), ...)), ...) for i < j
    field_degree: int

    @property
    def w_G(self) -> int:
        return sum(self.shape)

    def matrix(self) -> list:
        n = len(self.shape)
        m = [[{} for _ in range(n)] for _ in range(n)]
        for j, a in enumerate(self.shape):
            m[j][j] = {a: 1}
        for i, j, poly in self.entries:
            m[i][j] = dict(poly)
        return m

    def to_json(self) -> dict:
        return {"shape": list(self.shape), "w_G": self.w_G, "field_size": self.field_size,
                "field_degree": self.field_degree,
                "hermite_entries": [{"row": i, "col": j, "coefficients": [[e, c] for e, c in poly]}
                                    for i, j, poly in self.entries]}


def hermite_inverse(F: FiniteField, shape: Sequence[int], m) -> list:
    """Inverse of an upper triangular matrix with monomial diagonal t^{a_j}."""
    n = len(shape)
    inv = [[{} for _ in range(n)] for _ in range(n)]
    for j in range(n):
        inv[j][j] = {-shape[j]: 1}
    for j in range(n):
        for i in range(j - 1, -1, -1):
            acc: Poly = {}
            for k in range(i + 1, j + 1):
                if m[i][k] and inv[k][j]:
                    acc = p_add(F, acc, p_mul(F, m[i][k], inv[k][j]))
            inv[i][j] = p_neg(F, p_shift(acc, -shape[i]))
    return inv


def b_matrix(lam: Sequence[int], perm_matrix: Sequence[Sequence[int]]) -> list:
    """diag(t^lam) times a permutation matrix."""
    n = len(lam)
    return [[{lam[i]: 1} if perm_matrix[i][j] else {} for j in range(n)] for i in range(n)]


def point_relative_position(F: FiniteField, point_matrix, shape, b) -> tuple[int, ...]:
    """inv(L, b sigma(L)) for L in Hermite form."""
    hinv = hermite_inverse(F, shape, point_matrix)
    sig = [[p_frob(F, x) for x in row] for row in point_matrix]
    return elementary_divisors(F, m_mul(F, hinv, m_mul(F, b, sig)))


def _coeff_vectors(F: FiniteField, length: int) -> Iterator[tuple]:
    return itertools.product(F.elements(), repeat=length)


def window_lattices(n: int, F: FiniteField, depth: int, fix_last: bool = False,
                    min_degree: int = 1) -> Iterator[LatticePoint]:
    """All Hermite forms with a_j in [-depth, depth] and exponents >= -depth.

    With ``fix_last`` the last a_j is 0 (scaling by t is a symmetry of the
    varieties considered).  Lattices whose coefficients generate a field of
    degree below ``min_degree`` are skipped.
    """
    ranges = [range(-depth, depth + 1)] * n
    if fix_last:
        ranges[-1] = range(0, 1)
    for shape in itertools.product(*ranges):
        slots = [(i, j, e) for j in range(n) for i in range(j) for e in range(-depth, shape[i])]
        for coeffs in _coeff_vectors(F, len(slots)):
            deg = 1
            for c in coeffs:
                d = F.degree_t[c]
                if d > deg:
                    deg = _lcm(deg, d)
            if deg < min_degree:
                continue
            entries: dict = {}
            for (i, j, e), c in zip(slots, coeffs):
                if c:
                    entries.setdefault((i, j), []).append((e, c))
            yield LatticePoint(F.size, tuple(shape),
                               tuple((i, j, tuple(p)) for (i, j), p in sorted(entries.items())), deg)


def _lcm(a: int, b: int) -> int:
    from math import gcd
    return a * b // gcd(a, b)


def window_size(n: int, F: FiniteField, depth: int, fix_last: bool = False) -> int:
    ranges = [range(-depth, depth + 1)] * n
    if fix_last:
        ranges[-1] = range(0, 1)
    total = 0
    for shape in itertools.product(*ranges):
        slots = sum(max(shape[i] + depth, 0) for j in range(n) for i in range(j))
        total += F.size ** slots
    return total


# ---------------------------------------------------------------------------
# configurations and enumeration


@dataclass(frozen=True)
class OracleConfig:
    n: int
    q: int
    m_max: int
    depth: int
    mu: tuple
    lam: tuple
    w_word: tuple = ()
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if not 1 <= self.n <= MAX_RANK:
            raise PreconditionError(f"oracle supports 1 <= n <= {MAX_RANK}")
        if len(self.mu) != self.n or len(self.lam) != self.n:
            raise PreconditionError("mu and lambda must have length n")

    def b(self) -> list:
        datum = gl(self.n)
        return b_matrix(self.lam, datum.weyl_from_word(self.w_word).matrix)


def dominates(mu1: Sequence[int], mu2: Sequence[int]) -> bool:
    """mu1 <= mu2 in the dominance order of GL_n (both sorted decreasingly)."""
    if sum(mu1) != sum(mu2):
        return False
    s1 = s2 = 0
    for x, y in zip(mu1, mu2):
        s1 += x
        s2 += y
        if s1 > s2:
            return False
    return True


def schedule(m_max: int, depth: int) -> list[tuple[int, int]]:
    """Deterministic widening order of (field degree, depth) pairs."""
    pairs = [(m, d) for d in range(1, depth + 1) for m in range(1, m_max + 1)]
    return sorted(pairs, key=lambda md: (md[0] + md[1], md[1], md[0]))


def _window_points(cfg: OracleConfig, fix_last: bool) -> Iterator[tuple[int, int, LatticePoint, FiniteField]]:
    """Every lattice of the widening schedule, each exactly once."""
    for m, d in schedule(cfg.m_max, cfg.depth):
        F = get_field(cfg.q, m)
        for pt in window_lattices(cfg.n, F, d, fix_last, min_degree=m):
            if d > 1 and _inside_depth(pt, d - 1):
                continue
            yield m, d, pt, F


def _inside_depth(pt: LatticePoint, d: int) -> bool:
    if any(abs(a) > d for a in pt.shape):
        return False
    return all(e >= -d for _, _, poly in pt.entries for e, _ in poly)


@dataclass
class PointRecord:
    point: LatticePoint
    rel_pos: tuple
    w_G_image: int

    def to_json(self) -> dict:
        out = self.point.to_json()
        out["rel_pos"] = list(self.rel_pos)
        return out


def adlv_points(cfg: OracleConfig, closure: bool = False, fix_last: bool = False) -> list[PointRecord]:
    """All points of X_mu(b) (or of its closure) in the schedule window."""
    mu = tuple(sorted(cfg.mu, reverse=True))
    b = cfg.b()
    out = []
    seen = 0
    for _, _, pt, F in _window_points(cfg, fix_last):
        seen += 1
        if seen > cfg.cap:
            raise ResourceExhausted(f"more than {cfg.cap} lattices in the window")
        rp = point_relative_position(F, pt.matrix(), pt.shape, b)
        if rp == mu or (closure and dominates(rp, mu)):
            out.append(PointRecord(pt, rp, pt.w_G + sum(cfg.lam)))
    return out


@dataclass(frozen=True)
class OracleVerdict:
    status: str          # nonempty | empty | empty-in-window
    witness: LatticePoint | None
    searched: int
    window: tuple        # last (field degree, depth) reached
    reason: str = ""

    @property
    def nonempty(self) -> bool:
        return self.status == "nonempty"

    def to_json(self) -> dict:
        return {"status": self.status, "searched": self.searched, "window": list(self.window),
                "witness": None if self.witness is None else self.witness.to_json(), "reason": self.reason}


def reachable_positions(cfg: OracleConfig, cap: int | None = None) -> tuple[dict, int, tuple]:
    """Relative positions inv(L, b sigma(L)) met in the window, each with a first witness.

    The last coordinate of the shape is fixed to 0.  The search stops after
    ``cap`` lattices (default: the config's cap).
    """
    cap = cfg.cap if cap is None else cap
    b = cfg.b()
    found: dict = {}
    seen = 0
    window = (0, 0)
    for m, d, pt, F in _window_points(cfg, True):
        if seen >= cap:
            break
        seen += 1
        window = (m, d)
        rp = point_relative_position(F, pt.matrix(), pt.shape, b)
        found.setdefault(rp, pt)
    return found, seen, window


def verdicts_for(cfg: OracleConfig, mus: Iterable[Sequence[int]], closure: bool = True,
                 cap: int | None = None) -> dict:
    """Oracle verdicts for several mu sharing one b (a single enumeration)."""
    mus = [tuple(sorted(m, reverse=True)) for m in mus]
    found, seen, window = reachable_positions(cfg, cap)
    out = {}
    for mu in mus:
        if sum(mu) != sum(cfg.lam):
            # determinant valuations differ for every lattice
            out[mu] = OracleVerdict("empty", None, 0, (0, 0), "kottwitz mismatch")
            continue
        hit = next((pt for rp, pt in sorted(found.items()) if rp == mu or (closure and dominates(rp, mu))), None)
        if hit is not None:
            out[mu] = OracleVerdict("nonempty", hit, seen, window)
        else:
            out[mu] = OracleVerdict("empty-in-window", None, seen, window)
    return out


def nonempty_oracle(cfg: OracleConfig, closure: bool = True) -> OracleVerdict:
    return verdicts_for(cfg, [cfg.mu], closure)[tuple(sorted(cfg.mu, reverse=True))]


# ---------------------------------------------------------------------------
# the delta invariant for GL_h


def _in_lattice(F: FiniteField, hinv, v: Sequence[Poly]) -> bool:
    n = len(v)
    for i in range(n):
        acc: Poly = {}
        for k in range(n):
            if hinv[i][k] and v[k]:
                acc = p_add(F, acc, p_mul(F, hinv[i][k], v[k]))
        if p_val(acc) < 0:
            return False
    return True


def shift_operator(h: int, i: int, delta: int, v: Sequence[Poly]) -> list[Poly]:
    """N_{i,delta}: e_j -> e_{j+delta} for j = i mod h, other basis vectors to 0; e_{j+h} = t e_j.

    ``i`` is 1-based as in e_1 .. e_h.
    """
    out: list[Poly] = [{} for _ in range(h)]
    src = i - 1
    q, r = divmod(src + delta, h)
    if v[src]:
        out[r] = p_shift(v[src], q)
    return out


def operator_preserves(F: FiniteField, pt: LatticePoint, i: int, delta: int) -> bool:
    """Whether N_{i,delta} maps the lattice into itself (so every a_{i,delta}(x) preserves it)."""
    m = pt.matrix()
    h = len(pt.shape)
    hinv = hermite_inverse(F, pt.shape, m)
    for j in range(h):
        col = [m[k][j] for k in range(h)]
        if not _in_lattice(F, hinv, shift_operator(h, i, delta, col)):
            return False
    return True


@dataclass(frozen=True)
class DeltaResult:
    delta: int
    i_g: int | None
    failing: tuple          # all i failing at delta
    s_power: int | None     # j with L = s^j L_0 when delta = -1

    def to_json(self) -> dict:
        return {"delta": self.delta, "i_g": self.i_g, "failing": list(self.failing), "s_power": self.s_power}


def s_power_matrix(h: int, j: int) -> list:
    """Matrix of s^j where s e_i = e_{i+1} and s e_h = t e_1."""
    cols = []
    for k in range(h):
        q, r = divmod(k + j, h)
        col: list[Poly] = [{} for _ in range(h)]
        col[r] = {q: 1}
        cols.append(col)
    return [[cols[c][r] for c in range(h)] for r in range(h)]


def same_lattice(F: FiniteField, basis1, basis2) -> bool:
    return relative_position(F, basis1, basis2) == (0,) * len(basis1)


def delta_invariant(F: FiniteField, pt: LatticePoint) -> DeltaResult:
    h = len(pt.shape)
    if h == 1:
        return DeltaResult(-1, None, (), pt.shape[0])
    exps = [e for _, _, poly in pt.entries for e, _ in poly] + list(pt.shape)
    lo, hi = min(exps), max(pt.shape)
    top = h * (hi - lo + 2)
    for delta in range(top, -h * (hi - lo + 2) - 1, -1):
        failing = tuple(i for i in range(1, h + 1) if not operator_preserves(F, pt, i, delta))
        if not failing:
            continue
        if delta >= 1:
            return DeltaResult(delta, failing[0] if len(failing) == 1 else None, failing, None)
        if delta != -1:
            raise AssertionError(f"delta invariant {delta} is neither -1 nor positive")
        j = pt.w_G
        if not same_lattice(F, s_power_matrix(h, j), pt.matrix()):
            raise AssertionError("delta = -1 but the lattice is not a power of s applied to the standard lattice")
        return DeltaResult(-1, None, failing, j)
    raise AssertionError("no failing operator found")
