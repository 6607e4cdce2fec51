"""
Command-line front end.

Exit codes: 0 success, 1 a verification identity failed, 2 bad input.
Every JSON document has a schema under ``localfactors/schemas``.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from contextlib import nullcontext
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from . import factors as fx
from . import finitegl as fg
from . import hecke as hk
from . import pseries as ps
from .exactalg import ExactError, QuadExt, RatFunc
from .report import CheckResult
from .weyl import parse_weyl

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - Python 3.10
    import tomli as tomllib


WORKERS_ENV = "LOCALFACTORS_WORKERS"
EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class BadInput(Exception):
    pass


def load_config(path: str | None) -> dict:
    if not path:
        return {}
    p = Path(path)
    if not p.is_file():
        raise BadInput(f"config file not found: {path}")
    try:
        if p.suffix == ".json":
            return json.loads(p.read_text())
        with open(p, "rb") as fh:
            return tomllib.load(fh)
    except Exception as exc:  # parse errors from either reader
        raise BadInput(f"cannot parse {path}: {exc}") from exc


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def _quad_json(x) -> dict:
    if isinstance(x, QuadExt):
        return {"a": str(x.a), "b": str(x.b), "radicand": x.radicand}
    return {"a": str(Fraction(x)), "b": "0", "radicand": 1}


# ---------------------------------------------------------------------------
# pretty printing in s


def render_s(rf: RatFunc, q: int, qa: int, N: int) -> str:
    """Write a RatFunc in ``t = q^(-s/2)`` as an expression in ``s``."""

    def mono(k: int) -> str:
        if k == 0:
            return ""
        if k % (2 * N) == 0:
            j = -k // (2 * N)
            base = str(qa)
        else:
            j = Fraction(-k, 2)
            base = str(q)
        if j == 1:
            return f"{base}^s"
        if j == -1:
            return f"{base}^(-s)"
        return f"{base}^({j}s)"

    def poly(p) -> str:
        parts = []
        for (k,), c in p.items():
            m = mono(k)
            cs = str(c)
            if isinstance(c, QuadExt) and c.a != 0:
                cs = f"({cs})"
            if not m:
                parts.append(cs)
            elif c == 1:
                parts.append(m)
            elif c == -1:
                parts.append("-" + m)
            else:
                parts.append(f"{cs}·{m}")
        return " + ".join(parts).replace("+ -", "- ") or "0"

    n = poly(rf.num)
    if rf.den == 1:
        return n
    if len(list(rf.num.items())) > 1:
        n = f"({n})"
    return f"{n}/({poly(rf.den)})"


# ---------------------------------------------------------------------------
# factors


_FIELDS = ("n", "q", "d", "e", "m", "sign1", "sign2")


def _pair_from(args, cfg: dict) -> tuple[fx.PairTypeData, dict]:
    doc = dict(cfg)
    for k in _FIELDS + ("l1", "l2"):
        v = getattr(args, k, None)
        if v is not None:
            doc[k] = v
    if args.equal_case is not None:
        doc["equal_case"] = args.equal_case
    extra = {k: doc.pop(k) for k in ("l1", "l2") if k in doc}
    unknown = set(doc) - set(_FIELDS) - {"equal_case"}
    if unknown:
        raise BadInput(f"unknown config keys: {', '.join(sorted(unknown))}")
    try:
        return fx.PairTypeData.from_mapping(doc), extra
    except fx.InputError as exc:
        raise BadInput(str(exc)) from exc


def factor_document(data: fx.PairTypeData, gauss: fx.GaussData | None = None) -> dict:
    dp, vol = fx.derive(data)
    notes = []
    try:
        gamma, eps = fx.gamma_epsilon(data, gauss)
        C = fx.local_coeff_pair(data, gauss)
        g_json, e_json, c_json = gamma.to_json(), eps.to_json(), C.to_json()
    except fx.UnavailableError as exc:
        g_json = e_json = c_json = None
        notes.append(str(exc))
    if gauss is not None:
        notes.append(f"unit normalized by q^{gauss.nu}; exponent pinned by brute force")
    return {
        "input": {
            "n": data.n, "q": data.q, "d": data.d, "e": data.e, "m": data.m,
            "sign1": data.sign1, "sign2": data.sign2, "equal_case": data.equal_case,
        },
        "variable": "t = q^(-s/2)",
        "derived": {"qa": dp.qa, "qE": dp.qE, "f_equal": dp.f_equal, "f_unequal": dp.f_unequal},
        "L": fx.l_factor(data).to_json(),
        "gamma": g_json,
        "epsilon": e_json,
        "C": c_json,
        "mu": fx.plancherel(data).to_json(),
        "conductor": dp.f,
        "volumes": {
            "prod_split": str(vol.prod_split),
            "volN_times_v": _quad_json(vol.volN_times_v),
            "volNbar_over_v": _quad_json(vol.volNbar_over_v),
        },
        "discriminant": str(dp.disc),
        "gauss": None if gauss is None else {
            "unit_re": complex(gauss.unit).real,
            "unit_im": complex(gauss.unit).imag,
            "nu": str(gauss.nu),
            "source": gauss.source,
        },
        "notes": notes,
    }


def _round_unit(z) -> str:
    z = complex(z)
    return f"{complex(round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0):.12g}"


def _factor_pretty(data: fx.PairTypeData, gauss) -> str:
    dp, vol = fx.derive(data)
    r = lambda f: render_s(f, data.q, dp.qa, data.N)  # noqa: E731
    lines = [f"q_a = {dp.qa}, conductor f = {dp.f}, discriminant = {dp.disc}"]
    lines.append(f"L(s) = {r(fx.l_factor(data))}")
    try:
        gamma, eps = fx.gamma_epsilon(data, gauss)
        C = fx.local_coeff_pair(data, gauss)
        unit = "" if eps.exact else f"[unit {_round_unit(eps.unit)}] · "
        lines.append(f"epsilon(s) = {unit}{r(eps.rf)}")
        lines.append(f"gamma(s) = {unit}{r(gamma.rf)}")
        lines.append(f"C(s) = {unit}{r(C.rf)}")
    except fx.UnavailableError as exc:
        lines.append(f"gamma, epsilon, C: unavailable ({exc})")
    lines.append(f"mu(s) = {r(fx.plancherel(data))}")
    lines.append(
        f"volumes: prod = {vol.prod_split}, vol(N) v = {vol.volN_times_v}, "
        f"vol(Nbar)/v = {vol.volNbar_over_v}"
    )
    return "\n".join(lines)


def run_factors(args) -> int:
    cfg = load_config(args.config)
    data, extra = _pair_from(args, cfg)
    gauss = None
    if "l1" in extra or "l2" in extra:
        if not ("l1" in extra and "l2" in extra):
            raise BadInput("--l1 and --l2 go together")
        if not data.level_zero or data.equal_case or data.n not in (1, 2):
            raise BadInput("Gauss labels need an inequivalent level-zero pair with n in {1, 2}")
        try:
            lz, gauss = fx.level_zero_gauss(data.n, data.q, extra["l1"], extra["l2"])
        except (ValueError, fg.NormalizationError) as exc:
            raise BadInput(str(exc)) from exc
        data = lz
    if args.format == "pretty":
        print(_factor_pretty(data, gauss))
    else:
        print(_dump(factor_document(data, gauss)))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


SUITES: dict[str, Callable[[int, int], list[CheckResult]]] = {
    "hecke": lambda seed, w: hk.identity_suite(seed),
    "pseries": lambda seed, w: ps.identity_suite(seed),
    "factors": lambda seed, w: fx.grid_suite(workers=w),
    "levelzero": lambda seed, w: fx.level_zero_suite(),
    "dim": lambda seed, w: fx.dim_suite(),
    "finite": lambda seed, w: fg.bessel_suite(seed=seed),
    "gauss": lambda seed, w: fg.gauss_suite(),
    "determinism": lambda seed, w: fg.determinism_suite(),
}


def _workers(args) -> int:
    if args.workers is not None:
        return args.workers
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise BadInput(f"{WORKERS_ENV} must be an integer, got {raw!r}") from exc
    if n < 1:
        raise BadInput(f"{WORKERS_ENV} must be positive")
    return n


def verify_report(only: Sequence[str], seed: int, workers: int, fault: bool) -> tuple[list[str], bool]:
    lines, ok, first = [], True, None
    ctx = hk.structure_fault() if fault else nullcontext()
    with ctx:
        for name in only:
            results = SUITES[name](seed, workers)
            for r in results:
                lines.append(f"{name}: {r.line()}")
                if not r.ok and first is None:
                    first = f"{name}: {r.name}" + (f" [{r.key}]" if r.key else "")
            ok = ok and all(r.ok for r in results)
    counts = {s: 0 for s in ("pass", "fail", "skip")}
    for ln in lines:
        counts[ln.split(": ", 1)[1].split()[0].lower()] += 1
    lines.append(
        f"summary: {counts['pass']} passed, {counts['fail']} failed, {counts['skip']} skipped"
    )
    if first is not None:
        lines.append(f"first failure: {first}")
    return lines, ok


def run_verify(args) -> int:
    cfg = load_config(args.config)
    only = args.only if args.only is not None else cfg.get("only", ",".join(SUITES))
    if isinstance(only, str):
        only = [s.strip() for s in only.split(",") if s.strip()]
    unknown = [s for s in only if s not in SUITES]
    if unknown or not only:
        raise BadInput(f"unknown suites {unknown}; choose from {', '.join(SUITES)}")
    seed = args.seed if args.seed is not None else int(cfg.get("seed", 0))
    lines, ok = verify_report(only, seed, _workers(args), args.inject_fault)
    print("\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# hecke


def _parse_mu(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.strip("()").split(","))
    except ValueError as exc:
        raise BadInput(f"cocharacter must look like 1,0 (got {text!r})") from exc
    return a, b


def run_hecke(args) -> int:
    try:
        if args.op == "mul":
            x = hk.basis(parse_weyl(args.x), args.omega)
            y = hk.basis(parse_weyl(args.y), args.omega)
            res, expr = x * y, f"T[{parse_weyl(args.x)}]·T[{parse_weyl(args.y)}]"
        elif args.op == "theta":
            mu = _parse_mu(args.x)
            res, expr = hk.bernstein_theta(mu, args.omega), f"θ[({mu[0]},{mu[1]})]"
        elif args.op == "commutant":
            mu = _parse_mu(args.x)
            res, expr = hk.commutant_check(mu, args.omega), f"commutant[({mu[0]},{mu[1]})]"
        else:  # psi
            w = parse_weyl(args.x)
            res, expr = hk.psi_iso(hk.basis(w), args.omega), f"Ψ(T[{w}])"
    except ValueError as exc:
        raise BadInput(str(exc)) from exc
    if args.format == "pretty":
        print(f"{expr} = {res}")
    else:
        doc = res.to_json()
        doc["expression"] = expr
        print(_dump(doc))
    return EXIT_OK


# ---------------------------------------------------------------------------
# pseries


def _scalar_json(x):
    if isinstance(x, RatFunc):
        return x.to_json()
    return str(x)


def run_pseries(args) -> int:
    if args.qa < 2:
        raise BadInput("--qa must be at least 2")
    try:
        if args.symbolic:
            chi = ps.SatakeParams.symbolic(args.qa)
        else:
            if args.z1 is None or args.z2 is None:
                raise BadInput("numeric mode needs --z1 and --z2 (or use --symbolic)")
            chi = ps.SatakeParams.numeric(Fraction(args.z1), Fraction(args.z2), args.qa)
        mat = ps.intertwine(chi)
        om = ps.whittaker(chi)
        C = ps.local_coeff(chi)
        c = ps.c_w0(chi)
    except (ps.RegularityError, ValueError, ZeroDivisionError) as exc:
        raise BadInput(str(exc)) from exc
    if args.format == "pretty":
        print(f"q_a = {args.qa}, z = {chi.z}")
        print(f"A(chi, w0) = [[{mat[0][0]}, {mat[0][1]}], [{mat[1][0]}, {mat[1][1]}]]")
        print(f"Omega = ({om[0]}, {om[1]})")
        print(f"c_w0 = {c}")
        print(f"C = {C}")
        return EXIT_OK
    doc = {
        "qa": args.qa,
        "mode": "symbolic" if args.symbolic else "numeric",
        "intertwiner": [[_scalar_json(v) for v in row] for row in mat],
        "whittaker": [_scalar_json(v) for v in om],
        "local_coeff": _scalar_json(C),
        "c_w0": _scalar_json(c),
    }
    if not args.symbolic:
        doc["z1"], doc["z2"] = str(chi.z1), str(chi.z2)
    print(_dump(doc))
    return EXIT_OK


# ---------------------------------------------------------------------------
# finite


def run_finite(args) -> int:
    if args.q not in fg.SUPPORTED_Q:
        raise BadInput(f"unsupported q={args.q}; supported: {fg.SUPPORTED_Q}")
    try:
        if args.kind == "bessel":
            if args.label is None:
                raise BadInput("bessel needs --label")
            table = fg.bessel(args.q, args.label)
            w = csv.writer(sys.stdout, lineterminator="\n")
            w.writerow(["index", "a", "b", "c", "d", "re", "im"])
            for i, (g, v) in enumerate(zip(table.group, table.values)):
                w.writerow([i, *g, repr(round(v.real, 15) + 0.0), repr(round(v.imag, 15) + 0.0)])
            return EXIT_OK
        if args.l1 is None or args.l2 is None:
            raise BadInput("gauss needs --l1 and --l2")
        if args.n == 1:
            rec = fg.gl1_unit(args.q, args.l1, args.l2)
        else:
            rec = fg.level_zero_unit(args.q, args.l1, args.l2)
    except fg.NormalizationError as exc:
        print(f"normalization fault: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        raise BadInput(str(exc)) from exc
    print(_dump(rec.to_json()))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="localfactors",
        description="Exact local factors, Hecke identities and finite GL2 Bessel sums.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("factors", help="closed-form factors for one pair of type data")
    f.add_argument("--config", help="TOML or JSON file with n, q, d, e, m, sign1, sign2, equal_case")
    for k in _FIELDS:
        f.add_argument(f"--{k}", type=int)
    g = f.add_mutually_exclusive_group()
    g.add_argument("--equal", dest="equal_case", action="store_const", const=True)
    g.add_argument("--unequal", dest="equal_case", action="store_const", const=False)
    f.set_defaults(equal_case=None)
    f.add_argument("--l1", type=int, help="level-zero label of the first member")
    f.add_argument("--l2", type=int, help="level-zero label of the second member")
    f.add_argument("--format", choices=("json", "pretty"), default="json")
    f.set_defaults(func=run_factors)

    v = sub.add_parser("verify", help="run the identity suites")
    v.add_argument("--config")
    v.add_argument("--only", help=f"comma-separated subset of: {', '.join(SUITES)}")
    v.add_argument("--seed", type=int)
    v.add_argument("--workers", type=int, help=f"thread count (default ${WORKERS_ENV} or 1)")
    v.add_argument("--inject-fault", action="store_true",
                   help="corrupt a Hecke structure constant to test the harness")
    v.set_defaults(func=run_verify)

    h = sub.add_parser("hecke", help="Hecke algebra computations")
    h.add_argument("op", choices=("mul", "theta", "commutant", "psi"))
    h.add_argument("x", help="Weyl element like t.s0 or a cocharacter like 1,0")
    h.add_argument("y", nargs="?", default="1")
    h.add_argument("--omega", type=int, choices=(1, -1), default=1)
    h.add_argument("--format", choices=("json", "pretty"), default="pretty")
    h.set_defaults(func=run_hecke)

    s = sub.add_parser("pseries", help="Iwahori block of an unramified principal series")
    s.add_argument("--qa", type=int, required=True)
    s.add_argument("--z1")
    s.add_argument("--z2")
    s.add_argument("--symbolic", action="store_true")
    s.add_argument("--format", choices=("json", "pretty"), default="json")
    s.set_defaults(func=run_pseries)

    fin = sub.add_parser("finite", help="finite GL2 Bessel tables and Gauss sums")
    fin.add_argument("kind", choices=("bessel", "gauss"))
    fin.add_argument("--q", type=int, required=True)
    fin.add_argument("--label", type=int)
    fin.add_argument("--l1", type=int)
    fin.add_argument("--l2", type=int)
    fin.add_argument("--n", type=int, choices=(1, 2), default=2)
    fin.set_defaults(func=run_finite)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BadInput, ExactError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
