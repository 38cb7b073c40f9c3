"""Command-line front end.

Exit status: 0 success or property holds, 1 property fails (witness
printed) or a suite fails, 2 usage or input error, 3 budget exceeded.
Every flag can also be set through an environment variable named
``PARTSCAT_<FLAG>`` (upper case, dashes as underscores); explicit flags win.
"""

import argparse
import itertools
import json
import os
import sys
from dataclasses import dataclass

from .errors import BudgetExceeded, ParseError, PartScatError
from .families import (
    binomial_is_R_partial,
    enumerate_form11,
    form11_formula,
    lp_is_scattered,
    monomial_status,
    parse_family,
    trinomial_is_R_partial,
)
from .geometry import pseudoregulus_check
from .gf import format_element, parse_field
from .groups import aut_group_bruteforce, weak_equiv_family11
from .linpoly import normalize, parse_poly
from .scatter import criterion, exceptionality_probe, l_partial_via_curve, oracle
from .suites import SUITES, run_suite

ENV_PREFIX = "PARTSCAT_"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

DEFAULT_BUDGETS = {
    "oracle": 1 << 20,
    "gl": 64,
    "lines": 8,
    "enum": 1 << 20,
    "probe": 1 << 16,
}


@dataclass
class RunConfig:
    field: str
    tower: tuple
    budgets: dict
    fmt: str = "table"
    seed: int = 0

    def __post_init__(self):
        for name, val in self.budgets.items():
            if val <= 0:
                raise ParseError(f"budget {name} must be positive")
        if self.fmt not in ("table", "records"):
            raise ParseError(f"unknown format {self.fmt!r}")

    def context(self):
        if not self.field:
            raise ParseError("--field is required")
        return parse_field(self.field, self.tower)


def _parse_tower(text):
    if text is None:
        return None
    try:
        q, t, tp = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise ParseError(f"bad tower {text!r}, expected q,t,tprime") from exc
    return q, t, tp


def _env(name, default=None):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), default)


def _int_env(name, default):
    val = _env(name)
    if val is None:
        return default
    try:
        return int(val)
    except ValueError:
        return val


# ---------------------------------------------------------------------------
# output


class Output:
    def __init__(self, fmt, stream):
        self.fmt = fmt
        self.stream = stream

    def emit(self, rec):
        if self.fmt == "records":
            line = json.dumps(rec, separators=(",", ":"))
        else:
            line = "  ".join(f"{k}={_table_value(v)}" for k, v in rec.items())
        self.stream.write(line + "\n")


def _table_value(v):
    if isinstance(v, (list, tuple)):
        return "[" + " ".join(_table_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + " ".join(f"{k}:{_table_value(x)}" for k, x in v.items()) + "}"
    if v is None:
        return "-"
    return str(v)


# ---------------------------------------------------------------------------
# commands


def _poly(ctx, text):
    if text is None:
        raise ParseError("--poly is required")
    if "(" in text:
        return parse_family(ctx, text).build(ctx)
    return parse_poly(ctx, text)


def _t_arg(ctx, args):
    if args.t is not None:
        return args.t
    if ctx.t is not None:
        return ctx.t
    raise ParseError("--t is required without a --tower")


def _check_oracle_budget(ctx, cfg):
    if ctx.order > cfg.budgets["oracle"]:
        raise BudgetExceeded(f"field of order {ctx.order} exceeds the oracle budget")


def cmd_test(args, cfg, out):
    ctx = cfg.context()
    f = _poly(ctx, args.poly)
    prop = args.property
    t = None if prop in ("scattered", "s") else _t_arg(ctx, args)
    _check_oracle_budget(ctx, cfg)
    if args.method == "criterion":
        if args.ell:
            raise ParseError("the criterion method is for ell = 0")
        rep = criterion(f, prop, t)
    elif args.method == "curve":
        if prop not in ("L", "L-partial", "l"):
            raise ParseError("the curve method decides the L property only")
        rep = l_partial_via_curve(f, t, args.ell)
    else:
        rep = oracle(f, prop, t, args.ell, naive=args.method == "naive")
    out.emit({"poly": str(f), **rep.record()})
    return EXIT_OK if rep.holds else EXIT_FAIL


def _enum_members(ctx, args, cfg):
    kind = args.kind
    n = ctx.n
    if kind == "form11":
        t = _t_arg(ctx, args)
        for a, ok in enumerate_form11(ctx, t, cfg.budgets["enum"]):
            yield {"a": [format_element(ctx, x) for x in a]}, ok
    elif kind == "binomial":
        t = _t_arg(ctx, args)
        for alpha in ctx.nonzero():
            yield {"alpha": format_element(ctx, alpha)}, binomial_is_R_partial(ctx, alpha, args.k, args.s, t)[0]
    elif kind == "trinomial":
        t = _t_arg(ctx, args)
        if ctx.order**2 > cfg.budgets["enum"]:
            raise BudgetExceeded("trinomial pairs exceed the enumeration budget")
        for a, b in itertools.product(range(ctx.order), repeat=2):
            rec = {"alpha": format_element(ctx, a), "beta": format_element(ctx, b)}
            yield rec, trinomial_is_R_partial(ctx, a, b, args.s, t)
    elif kind == "LP":
        for delta in ctx.nonzero():
            yield {"delta": format_element(ctx, delta)}, lp_is_scattered(ctx, delta, args.s)
    elif kind == "monomial":
        t = _t_arg(ctx, args)
        for u in range(1, n):
            st = monomial_status(u, n, t)
            yield {"u": u, "L": st.L, "scattered": st.scattered}, st.R
    else:
        raise ParseError(f"unknown family kind {kind!r}")


def cmd_enumerate(args, cfg, out):
    ctx = cfg.context()
    verdict = "scattered" if args.kind == "LP" else "R"
    total = hits = 0
    for rec, ok in _enum_members(ctx, args, cfg):
        total += 1
        hits += ok
        if args.filter == "all" or (args.filter == "pass") == ok:
            if not args.summary_only:
                out.emit({**rec, verdict: ok})
    summary = {"summary": args.kind, "members": total, verdict: hits}
    if args.kind == "form11":
        summary["formula"] = form11_formula(ctx.q, _t_arg(ctx, args), ctx.n // _t_arg(ctx, args))
    out.emit(summary)
    return EXIT_OK


def cmd_verify(args, cfg, out):
    if args.suite == "list":
        for name, (_, title, target) in SUITES.items():
            out.emit({"suite": name, "title": title, "target_s": target})
        return EXIT_OK
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in SUITES:
            raise ParseError(f"unknown suite {name!r}; try 'verify list'")
    ok = True
    for name in names:
        res = run_suite(name, cfg.seed, check_time=not args.no_time_check)
        for c in res.checks:
            rec = {"suite": name, "check": c.label, "pass": c.passed}
            if c.detail and not c.label.startswith("runtime"):
                rec["detail"] = c.detail
            if args.timings and c.label.startswith("runtime"):
                rec["detail"] = c.detail
            out.emit(rec)
        out.emit(res.summary())
        ok &= res.passed
    return EXIT_OK if ok else EXIT_FAIL


def cmd_probe(args, cfg, out):
    ctx = cfg.context()
    f = _poly(ctx, args.poly)
    try:
        m_list = [int(x) for x in args.m_list.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad --m-list {args.m_list!r}") from exc
    res = exceptionality_probe(f, _t_arg(ctx, args), args.property, m_list, cfg.budgets["probe"])
    for m, holds in res:
        out.emit({"poly": str(f), "property": args.property, "m": m, "holds": holds, "verdict": "probe"})
    return EXIT_OK if all(h for _, h in res) else EXIT_FAIL


def cmd_normalize(args, cfg, out):
    ctx = cfg.context()
    g, ell = normalize(_poly(ctx, args.poly), args.ell)
    out.emit({"poly": str(g), "ell": ell})
    return EXIT_OK


def cmd_aut(args, cfg, out):
    ctx = cfg.context()
    f = _poly(ctx, args.poly)
    group = aut_group_bruteforce(f, cfg.budgets["gl"])
    if args.list_members:
        for m in group:
            out.emit({"matrix": [[format_element(ctx, x) for x in row] for row in m]})
    out.emit({"poly": str(f), "order": len(group)})
    return EXIT_OK


def cmd_pseudoregulus(args, cfg, out):
    ctx = cfg.context()
    f = _poly(ctx, args.poly)
    rep = pseudoregulus_check(f, _t_arg(ctx, args), cfg.budgets["lines"])
    out.emit({"poly": str(f), **rep.record()})
    return EXIT_OK if rep.positive else EXIT_FAIL


def _vector(ctx, text):
    from .gf import parse_element

    return [parse_element(ctx, x).value for x in text.split("|")]


def cmd_weak(args, cfg, out):
    ctx = cfg.context()
    t = _t_arg(ctx, args)
    res = weak_equiv_family11(ctx, _vector(ctx, args.a_f), args.s, _vector(ctx, args.a_g), args.s2, t)
    out.emit(res.record())
    return EXIT_OK if res.equivalent else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing


def _common_parser():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("common options")
    g.add_argument("--field", default=argparse.SUPPRESS, help="p^d or p^d/c0,c1,...,1")
    g.add_argument("--tower", default=argparse.SUPPRESS, help="q,t,tprime")
    g.add_argument("--format", choices=("table", "records"), default=argparse.SUPPRESS)
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    for name in DEFAULT_BUDGETS:
        g.add_argument(f"--budget-{name}", type=int, default=argparse.SUPPRESS)
    return p


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="partscat", parents=[common], description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(fn=fn)
        return sp

    props = ("scattered", "L", "R", "L-partial", "R-partial", "s", "l", "r")

    sp = add("test", cmd_test, "decide a property of one polynomial")
    sp.add_argument("--poly", default=_env("poly"))
    sp.add_argument("--property", choices=props, default=_env("property", "scattered"))
    sp.add_argument("--t", type=int, default=_int_env("t", None))
    sp.add_argument("--ell", type=int, default=_int_env("ell", 0))
    sp.add_argument(
        "--method", choices=("oracle", "criterion", "curve", "naive"), default=_env("method", "oracle")
    )

    sp = add("enumerate", cmd_enumerate, "run through a family and report verdicts")
    sp.add_argument("--kind", choices=("form11", "binomial", "trinomial", "LP", "monomial"), required=True)
    sp.add_argument("--t", type=int, default=_int_env("t", None))
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--s", type=int, default=1)
    sp.add_argument("--filter", choices=("all", "pass", "fail"), default="all")
    sp.add_argument("--summary-only", action="store_true")

    sp = add("verify", cmd_verify, "run an acceptance suite ('all', 'list' or a name)")
    sp.add_argument("suite")
    sp.add_argument("--timings", action="store_true", help="print elapsed times (breaks byte-identical output)")
    sp.add_argument("--no-time-check", action="store_true")

    sp = add("probe", cmd_probe, "test a property over extension fields")
    sp.add_argument("--poly", default=_env("poly"))
    sp.add_argument("--property", choices=props, default=_env("property", "R"))
    sp.add_argument("--t", type=int, default=_int_env("t", None))
    sp.add_argument("--m-list", default=_env("m_list", "1,2"))

    sp = add("normalize", cmd_normalize, "ell-normalize a polynomial")
    sp.add_argument("--poly", default=_env("poly"))
    sp.add_argument("--ell", type=int, default=_int_env("ell", 0))

    sp = add("aut", cmd_aut, "brute-force linear automorphism group")
    sp.add_argument("--poly", default=_env("poly"))
    sp.add_argument("--list-members", action="store_true")

    sp = add("pseudoregulus", cmd_pseudoregulus, "pseudoregulus test of the linear set L_f")
    sp.add_argument("--poly", default=_env("poly"))
    sp.add_argument("--t", type=int, default=_int_env("t", None))

    sp = add("weak", cmd_weak, "weak equivalence of two form11 polynomials")
    sp.add_argument("--a-f", required=True, help="coefficients g^i|g^j|...")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--a-g", required=True)
    sp.add_argument("--s2", type=int, required=True)
    sp.add_argument("--t", type=int, default=_int_env("t", None))
    return parser


def _config(args):
    ns = vars(args)
    budgets = {}
    for name, default in DEFAULT_BUDGETS.items():
        key = f"budget_{name}"
        val = ns.get(key, _int_env(key, default))
        if not isinstance(val, int):
            raise ParseError(f"budget {name} must be an integer")
        budgets[name] = val
    seed = ns.get("seed", _int_env("seed", 0))
    if not isinstance(seed, int):
        raise ParseError("seed must be an integer")
    return RunConfig(
        field=ns.get("field", _env("field")),
        tower=_parse_tower(ns.get("tower", _env("tower"))),
        budgets=budgets,
        fmt=ns.get("format", _env("format", "table")),
        seed=seed,
    )


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = _config(args)
        return args.fn(args, cfg, Output(cfg.fmt, stdout))
    except BudgetExceeded as exc:
        stderr.write(f"partscat: budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except (PartScatError, ValueError) as exc:
        stderr.write(f"partscat: error: {exc}\n")
        return EXIT_USAGE


def run():
    sys.exit(main())
