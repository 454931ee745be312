"""Command line driver: ``adlv <command> [options]``.

Commands: classify, pi0, iset, chain, oracle, survey.  Input comes either from
inline flags or from a JSON job file given with ``--spec``.  Simple
reflections and Levi indices are numbered from 1 on input (s_1 is the first
simple reflection); reports number them from 0.

Exit codes: 0 success, 2 invalid input, 3 empty variety, 4 precondition
failure, 5 resource limit, 6 other failures.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Sequence

from . import connect, latoracle
from .errors import (AdlvError, DatumError, NotInBGmu, NotInLeviError, PreconditionError, ResourceExhausted,
                     SuperbasicImpossible)
from .hnstrat import hn_classify, in_B_G_mu
from .isocrystal import BRep
from .pi0 import pi0_compute
from .presets import build_root_datum
from .rootdata import RootDatum

EXIT_OK, EXIT_INPUT, EXIT_EMPTY, EXIT_PRECONDITION, EXIT_RESOURCE, EXIT_OTHER = 0, 2, 3, 4, 5, 6
COMMANDS = ("classify", "pi0", "iset", "chain", "oracle", "survey")
SURVEY_ROW_CAP = int(os.environ.get("ADLV_SURVEY_CAP", "20000"))
SURVEY_WORKERS = int(os.environ.get("ADLV_SURVEY_WORKERS", str(os.cpu_count() or 1)))
ORACLE_CAP = int(os.environ.get("ADLV_ORACLE_CAP", str(latoracle.DEFAULT_CAP)))


class InputError(AdlvError):
    pass


def _ints(text: str | Sequence | None, what: str) -> tuple[int, ...] | None:
    if text is None:
        return None
    if isinstance(text, str):
        text = text.strip().strip("()[]")
        if not text:
            return ()
        try:
            return tuple(int(x) for x in text.replace(" ", "").split(","))
        except ValueError:
            raise InputError(f"{what} must be a comma-separated list of integers") from None
    try:
        return tuple(int(x) for x in text)
    except (TypeError, ValueError):
        raise InputError(f"{what} must be a list of integers") from None


def _zero_based(word: Sequence[int] | None, rank: int, what: str) -> tuple[int, ...]:
    out = []
    for k in word or ():
        if not 1 <= k <= rank:
            raise InputError(f"{what} index {k} is outside 1..{rank}")
        out.append(k - 1)
    return tuple(out)


# ---------------------------------------------------------------------------
# job specs


def load_job(args: argparse.Namespace) -> dict:
    job: dict = {}
    if args.spec:
        with open(args.spec, encoding="utf-8") as fh:
            try:
                job = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InputError(f"job file is not valid JSON: {exc}") from None
        if not isinstance(job, dict):
            raise InputError("job file must hold a JSON object")
    job.setdefault("command", args.command)
    if job["command"] != args.command:
        raise InputError(f"job file command {job['command']!r} does not match {args.command!r}")
    inline = {"datum": args.datum, "mu": _ints(args.mu, "--mu"), "levi": _ints(args.levi, "--levi")}
    b = job.get("b", {})
    if args.lam is not None:
        b = dict(b, **{"lambda": list(_ints(args.lam, "--lambda"))})
    if args.w is not None:
        b = dict(b, w=list(_ints(args.w, "--w")))
    if b:
        job["b"] = b
    for k, v in inline.items():
        if v is not None:
            job[k] = list(v) if isinstance(v, tuple) else v
    options = dict(job.get("options", {}))
    for k in ("n", "q", "mmax", "depth", "bound", "pair", "closure", "points"):
        v = getattr(args, k, None)
        if v not in (None, False):
            options[k] = v
    job["options"] = options
    validate_job(job)
    return job


def validate_job(job: dict) -> None:
    allowed = {"command", "datum", "mu", "b", "levi", "options"}
    extra = set(job) - allowed
    if extra:
        raise InputError(f"unknown job fields: {sorted(extra)}")
    cmd = job["command"]
    if cmd not in COMMANDS:
        raise InputError(f"unknown command {cmd!r}")
    if cmd == "oracle":
        for k in ("mu", "b"):
            if k not in job:
                raise InputError(f"oracle needs {k}")
        return
    if "datum" not in job:
        raise InputError("a root datum is required (--datum or 'datum')")
    if cmd in ("classify", "pi0", "iset", "chain") and ("mu" not in job or "b" not in job):
        raise InputError(f"{cmd} needs mu and b")
    if cmd in ("iset", "chain") and "levi" not in job:
        raise InputError(f"{cmd} needs a Levi (--levi)")
    if "b" in job:
        b = job["b"]
        if not isinstance(b, dict) or "lambda" not in b:
            raise InputError("b must be an object with 'lambda' and optional 'w'")
        _ints(b["lambda"], "b.lambda")
        _ints(b.get("w", []), "b.w")


def _datum(job: dict) -> RootDatum:
    return build_root_datum(job["datum"])


def _b(datum: RootDatum, job: dict) -> BRep:
    lam = _ints(job["b"]["lambda"], "b.lambda")
    if len(lam) != datum.rank:
        raise InputError(f"lambda must have {datum.rank} entries")
    word = _zero_based(_ints(job["b"].get("w", []), "b.w"), len(datum.simple_roots), "w")
    return BRep(lam, datum.weyl_from_word(word), datum)


def _mu(datum: RootDatum, job: dict) -> tuple[int, ...]:
    mu = _ints(job["mu"], "mu")
    if len(mu) != datum.rank:
        raise InputError(f"mu must have {datum.rank} entries")
    return mu


# ---------------------------------------------------------------------------
# commands


def cmd_classify(job: dict) -> tuple[dict, int]:
    datum = _datum(job)
    b, mu = _b(datum, job), _mu(datum, job)
    cert = in_B_G_mu(b, mu)
    if not cert.ok:
        return {"in_B_G_mu": cert.to_json(), "provenance": ["Kottwitz point and Mazur inequality test"]}, EXIT_EMPTY
    report = hn_classify(b, mu)
    out = report.to_json()
    out["provenance"] = ["Hodge-Newton classification by the coefficients of mu_bar - nu",
                         "irreducibility checked by a definitional search over sigma-stable Levis"]
    return out, EXIT_OK


def cmd_pi0(job: dict) -> tuple[dict, int]:
    datum = _datum(job)
    desc = pi0_compute(datum, _mu(datum, job), _b(datum, job))
    return desc.to_json(), EXIT_EMPTY if desc.variant == "empty" else EXIT_OK


def _iset(job: dict):
    datum = _datum(job)
    M = frozenset(_zero_based(_ints(job["levi"], "levi"), len(datum.simple_roots), "levi"))
    b = _b(datum, job)
    b = BRep(b.lam, b.w, datum, M)
    return datum, M, connect.iset_enumerate(datum, _mu(datum, job), b, M)


def cmd_iset(job: dict) -> tuple[dict, int]:
    _, _, iset = _iset(job)
    out = iset.to_json()
    out["connected"] = connect.is_connected(iset)
    return out, EXIT_OK if len(iset) else EXIT_EMPTY


def cmd_chain(job: dict) -> tuple[dict, int]:
    _, _, iset = _iset(job)
    if not len(iset):
        return {"iset": iset.to_json(), "chains": []}, EXIT_EMPTY
    pair = job["options"].get("pair")
    if pair is not None:
        i, j = _ints(pair, "--pair")
        if not (0 <= i < len(iset) and 0 <= j < len(iset)):
            raise InputError(f"--pair indices must lie in 0..{len(iset) - 1}")
        pairs = [(i, j)]
    else:
        pairs = [(i, j) for i in range(len(iset)) for j in range(i + 1, len(iset))]
    chains = []
    for i, j in pairs:
        ch = connect.convexity_chain(iset, iset.elements[i], iset.elements[j])
        ref = connect.refine_immediate(iset, ch)
        chains.append({"from": i, "to": j, "chain": ch.to_json(), "valid": connect.validate_chain(iset, ch),
                       "refined": ref.to_json(), "refined_valid": connect.check_refined(iset, ref)})
    return {"iset": iset.to_json(), "chains": chains}, EXIT_OK


def cmd_oracle(job: dict) -> tuple[dict, int]:
    opts = job["options"]
    mu = _ints(job["mu"], "mu")
    lam = _ints(job["b"]["lambda"], "b.lambda")
    n = int(opts.get("n", len(mu)))
    word = _zero_based(_ints(job["b"].get("w", []), "b.w"), n - 1, "w")
    cfg = latoracle.OracleConfig(n, int(opts.get("q", 2)), int(opts.get("mmax", 1)), int(opts.get("depth", 1)),
                                 mu, lam, word, ORACLE_CAP)
    closure = bool(opts.get("closure", False))
    verdict = latoracle.nonempty_oracle(cfg, closure)
    from .presets import gl
    g = gl(n)
    pred = in_B_G_mu(BRep(lam, g.weyl_from_word(word), g), tuple(sorted(mu, reverse=True))).ok
    out = {"config": {"n": n, "q": cfg.q, "mmax": cfg.m_max, "depth": cfg.depth, "mu": list(mu),
                      "lambda": list(lam), "w_word": list(word), "closure": closure},
           "verdict": verdict.to_json(), "predicted_nonempty": pred,
           "agrees": pred == verdict.nonempty}
    if opts.get("points"):
        out["points"] = [p.to_json() for p in latoracle.adlv_points(cfg, closure)]
    return out, EXIT_OK if verdict.nonempty else EXIT_EMPTY


def _survey_row(datum: RootDatum, mu: Sequence[int], b: BRep) -> dict:
    desc = pi0_compute(datum, mu, b)
    return {"mu": list(mu), "lambda": list(b.lam), "w_word": list(b.w.word),
            "hn_class": desc.hn_class, "variant": desc.variant, "pi0": desc.to_json()}


def survey_rows(datum: RootDatum, bound: int) -> list[dict]:
    from .survey import minuscule_dominant

    mus = minuscule_dominant(datum, -1, 1)
    weyl = datum.weyl_group()
    total = len(mus) * len(weyl) * (2 * bound + 1) ** datum.rank
    if total > SURVEY_ROW_CAP:
        raise ResourceExhausted(f"survey would have {total} rows (cap {SURVEY_ROW_CAP})")
    lams = list(itertools.product(range(-bound, bound + 1), repeat=datum.rank))
    jobs = [(datum, lam, mus) for lam in lams]
    if SURVEY_WORKERS <= 1 or len(jobs) < 2:
        chunks = map(_survey_chunk, jobs)
        return [row for chunk in chunks for row in chunk]
    # map() yields in submission order, so the output order does not depend on scheduling
    with ProcessPoolExecutor(max_workers=SURVEY_WORKERS) as pool:
        return [row for chunk in pool.map(_survey_chunk, jobs) for row in chunk]


def _survey_chunk(job: tuple) -> list[dict]:
    datum, lam, mus = job
    rows = []
    for w in sorted(datum.weyl_group(), key=lambda x: (len(x.word), x.word)):
        b = BRep(lam, w, datum)
        rows.extend(_survey_row(datum, mu, b) for mu in mus)
    return rows


def cmd_survey(job: dict) -> tuple[dict, int]:
    """Survey a box of (lambda, w) with all minuscule mu, or a single (mu, b) point."""
    datum = _datum(job)
    if "b" in job:
        from .survey import minuscule_dominant

        b = _b(datum, job)
        mus = [_mu(datum, job)] if "mu" in job else minuscule_dominant(datum, -1, 1)
        return {"datum": datum.name, "rows": [_survey_row(datum, mu, b) for mu in mus]}, EXIT_OK
    bound = int(job["options"].get("bound", 1))
    if bound < 0:
        return {"datum": datum.name, "rows": []}, EXIT_OK
    rows = survey_rows(datum, bound)
    return {"datum": datum.name, "bound": bound, "rows": rows}, EXIT_OK


HANDLERS = {"classify": cmd_classify, "pi0": cmd_pi0, "iset": cmd_iset, "chain": cmd_chain,
            "oracle": cmd_oracle, "survey": cmd_survey}


# ---------------------------------------------------------------------------
# output


def render(doc: Any, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"
    lines = []
    if isinstance(doc, dict) and "rows" in doc:
        lines.append("mu\tlambda\tw\thn_class\tvariant")
        for r in doc["rows"]:
            lines.append(f"{r['mu']}\t{r['lambda']}\t{r['w_word']}\t{r['hn_class']}\t{r['variant']}")
    else:
        for k, v in sorted(doc.items()) if isinstance(doc, dict) else []:
            lines.append(f"{k}: {json.dumps(v, sort_keys=True, default=str)}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="adlv", description="Connected components of affine Deligne-Lusztig varieties")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--spec", help="JSON job file")
    p.add_argument("--out", help="write the report to this file")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--datum", help="preset name such as GL2, GU5, GSp4")
    p.add_argument("--mu", help="cocharacter, e.g. 1,0")
    p.add_argument("--lambda", dest="lam", help="lambda of b = p^lambda w")
    p.add_argument("--w", help="word in simple reflections, numbered from 1")
    p.add_argument("--levi", help="simple roots of the Levi, numbered from 1")
    p.add_argument("--pair", help="chain: indices i,j of two I-bar elements")
    p.add_argument("--bound", type=int, help="survey: |lambda_i| <= bound")
    p.add_argument("--n", type=int, help="oracle: rank of GL_n")
    p.add_argument("--q", type=int, help="oracle: prime field size")
    p.add_argument("--mmax", type=int, help="oracle: largest field degree")
    p.add_argument("--depth", type=int, help="oracle: lattice window depth")
    p.add_argument("--closure", action="store_true", help="oracle: use the closed variety")
    p.add_argument("--points", action="store_true", help="oracle: dump all points")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = load_job(args)
        doc, code = HANDLERS[args.command](job)
    except (InputError, DatumError, OSError) as exc:
        doc, code = {"error": "invalid input", "detail": str(exc)}, EXIT_INPUT
    except NotInBGmu as exc:
        doc, code = {"error": "empty variety", "detail": str(exc)}, EXIT_EMPTY
    except (PreconditionError, NotInLeviError, SuperbasicImpossible) as exc:
        doc, code = {"error": "precondition failed", "detail": str(exc)}, EXIT_PRECONDITION
    except ResourceExhausted as exc:
        doc, code = {"error": "resource limit", "detail": str(exc)}, EXIT_RESOURCE
    except AdlvError as exc:
        doc, code = {"error": type(exc).__name__, "detail": str(exc)}, EXIT_OTHER
    text = render(doc, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
