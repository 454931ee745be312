"""Exact integer and rational linear algebra on small dense matrices.

Matrices are tuples of row tuples (or lists of lists on input).  Vectors are
plain tuples.  Everything here is exact: integers stay integers, rationals are
``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = tuple
Matrix = tuple


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> Matrix:
    return tuple(tuple(0 for _ in range(n)) for _ in range(m))


def transpose(a: Sequence[Sequence]) -> Matrix:
    if not a:
        return ()
    return tuple(zip(*a))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vadd(u: Sequence, v: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def vscale(c, v: Sequence) -> Vector:
    return tuple(c * x for x in v)


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def mat_sub(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def normalize(v: Sequence) -> Vector:
    """Turn integral Fractions into ints so that vectors hash consistently."""
    out = []
    for x in v:
        if isinstance(x, Fraction) and x.denominator == 1:
            out.append(int(x))
        else:
            out.append(x)
    return tuple(out)


def is_integral(v: Sequence) -> bool:
    return all(isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1) for x in v)


def matrix_order(a: Sequence[Sequence], cap: int = 10_000) -> int:
    """Multiplicative order of a square matrix; ValueError past ``cap``."""
    a = to_matrix(a)
    ident = identity(len(a))
    p = a
    for k in range(1, cap + 1):
        if p == ident:
            return k
        p = matmul(p, a)
    raise ValueError(f"matrix order exceeds cap {cap}")


def rational_inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(normalize(row[n:]) for row in m)


def integer_inverse(a: Sequence[Sequence]) -> Matrix:
    inv = rational_inverse(a)
    if not all(is_integral(r) for r in inv):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in r) for r in inv)


def solve_rational(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One rational solution x of a x = b, or None.  Free variables are set to 0."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[Fraction(x) for x in a[i]] + [Fraction(b[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(m[i][cols] != 0 for i in range(r, rows)):
        return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = m[i][cols]
    return normalize(x)


def rank(a: Sequence[Sequence]) -> int:
    if not a:
        return 0
    return len(hnf_rows(a)) if all(is_integral(r) for r in a) else _rational_rank(a)


def _rational_rank(a: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in row] for row in a]
    rk = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rk, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(rk + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / m[rk][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rk])]
        rk += 1
    return rk


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(a: Sequence[Sequence]) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, D, V) with U a V = D diagonal, U and V unimodular.

    The diagonal entries d_1 | d_2 | ... are non-negative.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(int(x) for x in row) for row in a]
    u = [list(r) for r in identity(m)]
    v = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row_dst += f * row_src
        d[dst] = [x + f * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in d:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j] != 0]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            changed = False
            for i in range(t + 1, m):
                if d[i][t] != 0:
                    q = d[i][t] // d[t][t]
                    add_row(t, i, -q)
                    if d[i][t] != 0:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if d[t][j] != 0:
                    q = d[t][j] // d[t][t]
                    add_col(t, j, -q)
                    if d[t][j] != 0:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if d[i][j] % d[t][t] != 0), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return to_matrix(u), to_matrix(d), to_matrix(v)


def invariant_factors(a: Sequence[Sequence]) -> tuple[int, ...]:
    """Non-zero diagonal entries of the Smith form."""
    if not a or not a[0]:
        return ()
    _, d, _ = smith_normal_form(a)
    return tuple(d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i] != 0)


def solve_integer(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One integer solution x of a x = b, or None."""
    m = len(a)
    n = len(a[0]) if m else 0
    if n == 0:
        return () if all(x == 0 for x in b) else None
    u, d, v = smith_normal_form(a)
    ub = matvec(u, b)
    y = [0] * n
    for i in range(m):
        di = d[i][i] if i < n else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di != 0:
                return None
            y[i] = ub[i] // di
    return matvec(v, y)


def integer_kernel(a: Sequence[Sequence], ncols: int | None = None) -> tuple[Vector, ...]:
    """A Z-basis of {x in Z^n : a x = 0}."""
    if not a:
        if ncols is None:
            raise ValueError("empty matrix needs ncols")
        return identity(ncols)
    n = len(a[0])
    if n == 0:
        return ()
    _, d, v = smith_normal_form(a)
    r = sum(1 for i in range(min(len(d), n)) if d[i][i] != 0)
    vt = transpose(v)
    return tuple(vt[j] for j in range(r, n))


# ---------------------------------------------------------------------------
# Lattices given by generating rows


def hnf_rows(gens: Iterable[Sequence[int]], dim: int | None = None) -> Matrix:
    """Canonical row Hermite form of the lattice spanned by ``gens``.

    Rows are in echelon form with positive pivots, and entries above each
    pivot are reduced into [0, pivot).  Zero rows are dropped.
    """
    rows = [list(int(x) for x in g) for g in gens]
    if not rows:
        return ()
    ncols = len(rows[0]) if dim is None else dim
    out: list[list[int]] = []
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(rows[i][c]))
            rows[r], rows[piv] = rows[piv], rows[r]
            done = True
            for i in range(r + 1, len(rows)):
                if rows[i][c] != 0:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if rows[i][c] != 0:
                        done = False
            if done:
                break
        if r < len(rows) and rows[r][c] != 0:
            if rows[r][c] < 0:
                rows[r] = [-x for x in rows[r]]
            out.append(rows[r])
            r += 1
    pivcols = [next(j for j, x in enumerate(row) if x != 0) for row in out]
    for k, (row, pc) in enumerate(zip(out, pivcols)):
        for i in range(k):
            q = out[i][pc] // row[pc]
            if q:
                out[i] = [x - q * y for x, y in zip(out[i], row)]
    return to_matrix(out)


def reduce_mod_lattice(v: Sequence[int], hnf: Matrix) -> Vector:
    """Canonical representative of v modulo the lattice with Hermite basis ``hnf``."""
    v = list(int(x) for x in v)
    for row in hnf:
        pc = next(j for j, x in enumerate(row) if x != 0)
        q = v[pc] // row[pc]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return tuple(v)


def in_lattice(v: Sequence[int], hnf: Matrix) -> bool:
    if not is_integral(v):
        return False
    return all(x == 0 for x in reduce_mod_lattice(v, hnf))


def lattice_sum(a: Iterable[Sequence[int]], b: Iterable[Sequence[int]], dim: int) -> Matrix:
    return hnf_rows(list(a) + list(b), dim)


def lattice_equal(a: Iterable[Sequence[int]], b: Iterable[Sequence[int]], dim: int) -> bool:
    return hnf_rows(list(a), dim) == hnf_rows(list(b), dim)


def lattice_contains(big: Iterable[Sequence[int]], small: Iterable[Sequence[int]], dim: int) -> bool:
    h = hnf_rows(list(big), dim)
    return all(in_lattice(v, h) for v in small)


def lattice_intersection(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], dim: int) -> Matrix:
    a = hnf_rows(a, dim)
    b = hnf_rows(b, dim)
    if not a or not b:
        return ()
    # (u, v) with u A = v B; kernel of the transpose of [A; -B]
    stacked = list(a) + [tuple(-x for x in r) for r in b]
    ker = integer_kernel(transpose(stacked), len(stacked))
    gens = [matvec(transpose(a), k[: len(a)]) for k in ker]
    return hnf_rows(gens, dim)


def lattice_preimage(f: Sequence[Sequence[int]], target: Sequence[Sequence[int]], dim: int) -> Matrix:
    """{x in Z^dim : f x in target lattice}, with ``f`` acting on column vectors."""
    t = hnf_rows(target, len(f)) if target else ()
    # f x - T^T y = 0
    cols_t = [tuple(-x for x in r) for r in t]
    big = [list(f[i]) + [c[i] for c in cols_t] for i in range(len(f))]
    if not big:
        return identity(dim)
    ker = integer_kernel(big, dim + len(cols_t))
    return hnf_rows([k[:dim] for k in ker] or [], dim)


def image_rows(f: Sequence[Sequence[int]], basis: Sequence[Sequence[int]]) -> list[Vector]:
    """Images f(v) for v in basis, with f acting on column vectors."""
    return [matvec(f, v) for v in basis]


def quotient_torsion(big: Sequence[Sequence[int]], small: Sequence[Sequence[int]], dim: int) -> tuple[int, ...]:
    """Invariant factors > 1 of big/small (small must be a sublattice of big)."""
    bh = hnf_rows(big, dim)
    sh = hnf_rows(small, dim) if small else ()
    if not sh:
        return ()
    coords = []
    bt = transpose(bh)
    for v in sh:
        c = solve_integer(bt, v)
        if c is None:
            raise ValueError("not a sublattice")
        coords.append(c)
    return tuple(x for x in invariant_factors(coords) if x > 1)


def is_saturated(sub: Sequence[Sequence[int]], big: Sequence[Sequence[int]], dim: int) -> bool:
    """True when big/sub is torsion free."""
    return quotient_torsion(big, sub, dim) == ()


def lcm_denominator(v: Iterable) -> int:
    out = 1
    for x in v:
        den = x.denominator if isinstance(x, Fraction) else 1
        out = out * den // gcd(out, den)
    return out
