"""Preset root data and the JSON-style ``build_root_datum`` entry point."""

from __future__ import annotations

from typing import Any, Mapping, Sequence

from . import intlin as la
from .errors import DatumError
from .rootdata import RootDatum


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(n))


def _diff(n: int, i: int, j: int) -> tuple[int, ...]:
    return tuple(int(k == i) - int(k == j) for k in range(n))


def gl(n: int) -> RootDatum:
    roots = [_diff(n, i, i + 1) for i in range(n - 1)]
    return RootDatum(n, roots, roots, None, name=f"GL{n}")


def res_gl(n: int, d: int) -> RootDatum:
    """Restriction of scalars of GL_n along an unramified extension of degree d."""
    r = n * d
    roots = [_diff(r, k * n + i, k * n + i + 1) for k in range(d) for i in range(n - 1)]
    # block k moves to block k+1
    sigma = [[0] * r for _ in range(r)]
    for k in range(d):
        for i in range(n):
            sigma[((k + 1) % d) * n + i][k * n + i] = 1
    return RootDatum(r, roots, roots, sigma, name=f"ResGL({n},{d})")


def gu(n: int) -> RootDatum:
    """Unitary similitude group: GL_n x G_m with the unitary Frobenius.

    On characters sigma(e_i*) = c* - e*_{n+1-i} and sigma(c*) = c*; the
    cocharacter action is the inverse transpose.
    """
    r = n + 1
    s_char = [[0] * r for _ in range(r)]
    for i in range(n):
        s_char[n - 1 - i][i] = -1
        s_char[n][i] = 1
    s_char[n][n] = 1
    sigma = la.transpose(la.integer_inverse(s_char))
    roots = [_diff(r, i, i + 1) for i in range(n - 1)]
    return RootDatum(r, roots, roots, sigma, name=f"GU{n}")


def gsp(n: int) -> RootDatum:
    """GSp_{2n}; cocharacters (a_1..a_n; c)."""
    r = n + 1
    roots = [_diff(r, i, i + 1) for i in range(n - 1)]
    coroots = list(roots)
    roots.append(tuple(2 * int(k == n - 1) - int(k == n) for k in range(r)))
    coroots.append(_unit(r, n - 1))
    return RootDatum(r, roots, coroots, None, name=f"GSp{2 * n}")


def sp(n: int) -> RootDatum:
    roots = [_diff(n, i, i + 1) for i in range(n - 1)] + [tuple(2 * int(k == n - 1) for k in range(n))]
    coroots = [_diff(n, i, i + 1) for i in range(n - 1)] + [_unit(n, n - 1)]
    return RootDatum(n, roots, coroots, None, name=f"Sp{2 * n}")


def so_even(n: int, outer: bool = False) -> RootDatum:
    """SO_{2n}; with ``outer`` the Frobenius negates the last coordinate."""
    roots = [_diff(n, i, i + 1) for i in range(n - 1)]
    roots.append(tuple(int(k in (n - 2, n - 1)) for k in range(n)))
    sigma = None
    if outer:
        sigma = [[int(i == j) * (-1 if i == n - 1 else 1) for j in range(n)] for i in range(n)]
    return RootDatum(n, roots, roots, sigma, name=f"SO{2 * n}" + ("-outer" if outer else ""))


D4_CARTAN = ((2, -1, 0, 0), (-1, 2, -1, -1), (0, -1, 2, 0), (0, -1, 0, 2))


def d4(order: int = 1, form: str = "adjoint") -> RootDatum:
    """D4 with a diagram automorphism of order 1, 2 or 3 (node 1 is central)."""
    perms = {1: (0, 1, 2, 3), 2: (0, 1, 3, 2), 3: (2, 1, 3, 0)}
    if order not in perms:
        raise DatumError("D4 automorphism order must be 1, 2 or 3")
    return _from_cartan(D4_CARTAN, perms[order], form, name=f"D4-{form}-order{order}")


def _from_cartan(cartan: Sequence[Sequence[int]], perm: Sequence[int], form: str, name: str) -> RootDatum:
    n = len(cartan)
    sigma = [[0] * n for _ in range(n)]
    for i in range(n):
        sigma[perm[i]][i] = 1
    if form == "adjoint":
        # fundamental coweight coordinates: roots are unit vectors
        roots = [_unit(n, i) for i in range(n)]
        coroots = [tuple(cartan[i][j] for i in range(n)) for j in range(n)]
    elif form in ("sc", "simply_connected"):
        coroots = [_unit(n, j) for j in range(n)]
        roots = [tuple(cartan[i][j] for j in range(n)) for i in range(n)]
    else:
        raise DatumError(f"unknown form {form!r}")
    return RootDatum(n, roots, coroots, sigma, name=name)


def adjoint_of(datum: RootDatum) -> RootDatum:
    return _from_cartan(datum.cartan, datum.sigma_perm, "adjoint", name=f"ad({datum.name})")


def simply_connected_of(datum: RootDatum) -> RootDatum:
    return _from_cartan(datum.cartan, datum.sigma_perm, "sc", name=f"sc({datum.name})")


def adjoint_projection(datum: RootDatum) -> tuple[tuple[int, ...], ...]:
    """Matrix of X_*(T) -> X_*(T_ad): lambda -> (<alpha_i, lambda>)_i."""
    return tuple(tuple(a) for a in datum.simple_roots)


def product(*factors: RootDatum) -> RootDatum:
    r = sum(f.rank for f in factors)
    roots, coroots = [], []
    sigma = [[0] * r for _ in range(r)]
    off = 0
    for f in factors:
        pad = lambda v: (0,) * off + tuple(v) + (0,) * (r - off - f.rank)  # noqa: E731
        roots += [pad(a) for a in f.simple_roots]
        coroots += [pad(a) for a in f.simple_coroots]
        for i in range(f.rank):
            for j in range(f.rank):
                sigma[off + i][off + j] = f.sigma[i][j]
        off += f.rank
    return RootDatum(r, roots, coroots, sigma, name="x".join(f.name for f in factors))


def torus(r: int, sigma: Sequence[Sequence[int]] | None = None) -> RootDatum:
    return RootDatum(r, [], [], sigma, name=f"T{r}")


def build_root_datum(source: Any) -> RootDatum:
    """Build a datum from a preset name, a preset dict, or explicit matrices.

    Accepted forms: ``"GL3"``-style strings, ``{"preset": name, "params": {...}}``
    and ``{"cochar_rank": r, "simple_roots": ..., "simple_coroots": ...,
    "pairing": ..., "sigma": ...}``.
    """
    if isinstance(source, RootDatum):
        return source
    if isinstance(source, str):
        if source.lstrip().startswith("{"):
            import json
            try:
                return build_root_datum(json.loads(source))
            except json.JSONDecodeError as exc:
                raise DatumError(f"datum JSON is malformed: {exc}") from None
        return _from_name(source)
    if not isinstance(source, Mapping):
        raise DatumError("root datum description must be a string or a mapping")
    if "preset" in source:
        return _from_preset(str(source["preset"]), dict(source.get("params", {})))
    try:
        return RootDatum(int(source["cochar_rank"]), source.get("simple_roots", []), source.get("simple_coroots", []),
                         source.get("sigma"), name=source.get("name", "explicit"), pairing=source.get("pairing"))
    except KeyError as exc:
        raise DatumError(f"explicit datum is missing {exc}") from None


def _from_name(name: str) -> RootDatum:
    import re

    m = re.fullmatch(r"(GL|PGL|SL|GU|GSp|Sp|SO)(\d+)", name)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if kind in ("GSp", "Sp", "SO"):
            if n % 2:
                raise DatumError(f"{kind} needs an even dimension")
            return _from_preset(kind, {"n": n // 2})
        return _from_preset(kind, {"n": n})
    m = re.fullmatch(r"ResGL\((\d+),\s*(\d+)\)", name)
    if m:
        return res_gl(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"D4-(adjoint|sc)-order([123])", name)
    if m:
        return d4(int(m.group(2)), m.group(1))
    return _from_preset(name, {})


def _from_preset(name: str, p: dict) -> RootDatum:
    key = name.lower()
    try:
        if key == "gl":
            return gl(int(p["n"]))
        if key == "pgl":
            return adjoint_of(gl(int(p["n"])))
        if key == "sl":
            return simply_connected_of(gl(int(p["n"])))
        if key == "resgl":
            return res_gl(int(p["n"]), int(p["d"]))
        if key == "gu":
            return gu(int(p["n"]))
        if key == "gsp":
            return gsp(int(p["n"]))
        if key == "sp":
            return sp(int(p["n"]))
        if key == "so":
            return so_even(int(p["n"]), bool(p.get("outer", False)))
        if key in ("d4", "d4-triality"):
            return d4(int(p.get("order", 3 if key == "d4-triality" else 1)), str(p.get("form", "adjoint")))
        if key == "torus":
            return torus(int(p["rank"]), p.get("sigma"))
        if key == "adjoint":
            return adjoint_of(build_root_datum(p["of"]))
        if key in ("sc", "simply_connected"):
            return simply_connected_of(build_root_datum(p["of"]))
        if key == "product":
            return product(*(build_root_datum(f) for f in p["factors"]))
    except KeyError as exc:
        raise DatumError(f"preset {name!r} is missing parameter {exc}") from None
    raise DatumError(f"unknown preset {name!r}")
