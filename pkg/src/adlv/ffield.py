"""Small finite fields F_{p^m} with table arithmetic.

Elements are integers 0 .. p^m - 1 read as base-p digit vectors, i.e.
polynomials over F_p modulo a fixed monic irreducible polynomial.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

FIELD_SIZE_CAP = 4096


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _digits(x: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        x, r = divmod(x, p)
        out.append(r)
    return out


def _poly_mulmod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    m = len(modulus) - 1
    prod = [0] * (2 * m)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if c:
            for i in range(m + 1):
                prod[k - m + i] = (prod[k - m + i] - c * modulus[i]) % p
    return prod[:m]


def _irreducible(p: int, m: int) -> list[int]:
    """Lexicographically first monic irreducible polynomial of degree m (low degree first)."""
    if m == 1:
        return [0, 1]
    for low in itertools.product(range(p), repeat=m):
        f = list(low) + [1]
        if f[0] == 0:
            continue
        # no roots and no factors of degree <= m/2: test by brute force over monic divisors
        if not any(_divides(list(g) + [1], f, p) for d in range(1, m // 2 + 1)
                   for g in itertools.product(range(p), repeat=d)):
            return f
    raise ValueError("no irreducible polynomial found")


def _divides(g: list[int], f: list[int], p: int) -> bool:
    r = list(f)
    dg = len(g) - 1
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c:
            for i in range(dg + 1):
                r[k - dg + i] = (r[k - dg + i] - c * g[i]) % p
    return not any(r[:dg])


class FiniteField:
    def __init__(self, p: int, m: int = 1):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if m < 1 or p ** m > FIELD_SIZE_CAP:
            raise ValueError("field too large for table arithmetic")
        self.p, self.m, self.size = p, m, p ** m
        self.modulus = _irreducible(p, m)
        n = self.size
        digits = [_digits(x, p, m) for x in range(n)]

        def enc(v):
            return sum(c * p ** i for i, c in enumerate(v))

        self.add_t = [[enc([(a + b) % p for a, b in zip(digits[x], digits[y])]) for y in range(n)] for x in range(n)]
        self.neg_t = [enc([(-a) % p for a in digits[x]]) for x in range(n)]
        self.mul_t = [[enc(_poly_mulmod(digits[x], digits[y], self.modulus, p)) for y in range(n)] for x in range(n)]
        self.inv_t = [0] * n
        for x in range(1, n):
            self.inv_t[x] = next(y for y in range(1, n) if self.mul_t[x][y] == 1)
        self.frob_t = [self.power(x, p) for x in range(n)]
        self.degree_t = [self._degree(x) for x in range(n)]

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})"

    def power(self, x: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = self.mul_t[out][x]
        return out

    def _degree(self, x: int) -> int:
        """Degree over F_p of the field generated by x."""
        y = x
        for d in range(1, self.m + 1):
            y = self.power(y, self.p) if d > 1 else self.power(x, self.p)
            if y == x:
                return d
        return self.m

    def elements(self) -> range:
        return range(self.size)


@lru_cache(maxsize=None)
def field(p: int, m: int = 1) -> FiniteField:
    return FiniteField(p, m)
