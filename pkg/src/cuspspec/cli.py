"""Command-line front end: deterministic CSV/JSON emission for all computations.

Exit codes: 0 success, 1 usage/parse failure, 2 domain precondition violated.
Identical configuration yields byte-identical output (fixed 15-significant-digit
rendering, no timestamps, stable ordering).
"""

from __future__ import annotations

import argparse
import io
import json
import math
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from .bianchi import BianchiContext, bianchi_spectrum_sample, c_I_estimate, real_spectrum_sample
from .contfrac import PrefixEstimate, approx_constant, parse_cfword, word_value
from .errors import DomainError, ParseError
from .heis import HeisContext, HeisPoint, c_prime_estimate, heis_penetration
from .hypgeo import excursion_limsup, geodesic_height, horoball_penetration, penetration_depth, Mobius
from .numkit import ExactComplex, OrderSpec, QuadInt, QuadSurd, parse_quadint, quad_xgcd
from .spectra import (
    EstimatorTrace,
    bound_check,
    closure_diagnostics,
    duality,
    duality_violations,
)

_FMT = "{:.15g}"


def _fmt(v: float) -> str:
    return _FMT.format(v)


@dataclass(frozen=True)
class RunConfig:
    """Validated bundle of one invocation's settings.

    All enumeration cutoffs must be positive; fields irrelevant to the chosen
    setting stay at their defaults.  There is no seed: every command here is
    fully deterministic (the randomized batteries live in the test suite with
    frozen seeds).
    """

    setting: str
    m: int
    ideal_gens: str
    norm_bound: int
    word_length: int
    depth: int
    format: str
    out: str | None

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        cfg = cls(
            setting=getattr(args, "setting", "rational"),
            m=getattr(args, "m", 1),
            ideal_gens=getattr(args, "ideal", ""),
            norm_bound=getattr(args, "norm_bound", 10000),
            word_length=getattr(args, "word_length", 8),
            depth=getattr(args, "depth", 40),
            format=getattr(args, "format", "csv"),
            out=getattr(args, "out", None),
        )
        if cfg.setting not in ("rational", "bianchi", "heisenberg"):
            raise ParseError(f"unknown setting {cfg.setting!r}")
        for name in ("norm_bound", "word_length", "depth"):
            if getattr(cfg, name) < 1:
                raise ParseError(f"{name.replace('_', '-')} must be positive")
        if cfg.setting != "rational" and cfg.m < 1:
            raise ParseError("m must be a positive squarefree integer")
        return cfg


# ---------------------------------------------------------------------------
# Exact complex expression parser: integers, fractions, i, sqrtN, + - * / ( )

_TOKEN_RE = re.compile(r"\s*(\d+|sqrt|i\b|[()+\-*/])")


def _tokenize(text: str) -> list[str]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"cannot tokenize {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _ExprParser:
    """Recursive descent over Q(sqrt(r)) + i*Q(sqrt(r)), one root per literal."""

    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression")
        self.pos += 1
        return tok

    def parse(self) -> ExactComplex:
        v = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input at {self.peek()!r}")
        return v

    def expr(self) -> ExactComplex:
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self) -> ExactComplex:
        v = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            w = self.factor()
            try:
                v = v * w if op == "*" else v / w
            except ZeroDivisionError as exc:
                raise ParseError("division by zero in expression") from exc
        return v

    def factor(self) -> ExactComplex:
        if self.peek() == "-":
            self.take()
            return -self.factor()
        if self.peek() == "+":
            self.take()
            return self.factor()
        return self.primary()

    def primary(self) -> ExactComplex:
        tok = self.take()
        if tok == "(":
            v = self.expr()
            if self.take() != ")":
                raise ParseError("unbalanced parenthesis")
            return v
        if tok == "i":
            return ExactComplex.make(0, 1)
        if tok == "sqrt":
            nxt = self.take()
            if nxt == "(":
                inner = self.take()
                if self.take() != ")":
                    raise ParseError("unbalanced parenthesis after sqrt")
                nxt = inner
            if not nxt.isdigit():
                raise ParseError("sqrt takes a nonnegative integer")
            return ExactComplex.make(QuadSurd.sqrt_int(int(nxt)))
        if tok.isdigit():
            return ExactComplex.make(Fraction(int(tok)))
        raise ParseError(f"unexpected token {tok!r}")


def parse_complex_expr(text: str) -> ExactComplex:
    """Parse expressions like '(1+i*sqrt3)/2', 'sqrt2', '1/2+i/3' exactly."""
    try:
        return _ExprParser(_tokenize(text)).parse()
    except ZeroDivisionError as exc:
        raise ParseError(str(exc)) from exc


def parse_real_expr(text: str) -> QuadSurd:
    v = parse_complex_expr(text)
    if not v.im.is_zero():
        raise ParseError(f"expected a real expression, got {text!r}")
    return v.re


def parse_heis_point(text: str) -> HeisPoint:
    """Parse 'z_re,z_im;w_re,w_im' with exact component expressions."""
    parts = text.split(";")
    if len(parts) != 2:
        raise ParseError("heisenberg point must be 'z_re,z_im;w_re,w_im'")
    zs, ws = parts[0].split(","), parts[1].split(",")
    if len(zs) != 2 or len(ws) != 2:
        raise ParseError("heisenberg point must have four components")
    vals = [parse_real_expr(t) for t in (*zs, *ws)]
    return HeisPoint(*vals)


def _parse_ideal_gens(text: str, order: OrderSpec) -> list[QuadInt]:
    return [parse_quadint(t, order) for t in text.split(",") if t.strip()]


# ---------------------------------------------------------------------------
# Emission helpers

def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _trace_rows(trace: EstimatorTrace) -> list[dict]:
    return [
        {
            "cutoff": _fmt(s.cutoff),
            "shell_extremum": _fmt(s.raw) if math.isfinite(s.raw) else "",
            "running_extremum": _fmt(s.extremum),
            "witness": s.witness,
            "certified": str(s.certified).lower(),
        }
        for s in trace.shells
    ]


def _render_table(rows: list[dict], header: list[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for r in rows:
        buf.write(",".join(str(r[h]) for h in header) + "\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Subcommands

def _cmd_approx_const(args) -> int:
    if args.setting == "rational":
        word = parse_cfword(args.cf)
        c = approx_constant(word)
        if isinstance(c, PrefixEstimate):
            rows = [
                {
                    "value": _fmt(c.value),
                    "kind": "estimate",
                    "window": c.window,
                    "certified": "false",
                }
            ]
        else:
            rows = [
                {
                    "value": _fmt(float(c)),
                    "kind": "exact",
                    "window": "",
                    "certified": "true",
                }
            ]
        _emit(_render_table(rows, ["value", "kind", "window", "certified"], args.format), args.out)
        return 0
    if args.setting == "bianchi":
        ctx = _bianchi_ctx(args)
        x = parse_complex_expr(args.x)
        res = c_I_estimate(ctx, x, args.norm_bound)
    elif args.setting == "heisenberg":
        ctx = _heis_ctx(args)
        x = parse_heis_point(args.x)
        res = c_prime_estimate(ctx, x, args.norm_bound)
    else:
        raise ParseError(f"unknown setting {args.setting!r}")
    rows = _trace_rows(res.trace)
    if args.format == "json":
        payload = {
            "value": _fmt(res.value),
            "witness": res.trace.best_witness(),
            "flagged": res.flagged,
            "setting": res.label,
            "shells": rows,
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
        return 0
    head = [
        {
            "cutoff": "value",
            "shell_extremum": _fmt(res.value),
            "running_extremum": "",
            "witness": res.trace.best_witness(),
            "certified": str(not res.flagged).lower(),
        }
    ]
    _emit(
        _render_table(
            head + rows,
            ["cutoff", "shell_extremum", "running_extremum", "witness", "certified"],
            args.format,
        ),
        args.out,
    )
    return 0


def _bianchi_ctx(args) -> BianchiContext:
    order = OrderSpec.maximal(args.m)
    gens = _parse_ideal_gens(args.ideal, order) if args.ideal else None
    return BianchiContext.for_m(args.m, gens)


def _heis_ctx(args) -> HeisContext:
    order = OrderSpec.maximal(args.m)
    gens = _parse_ideal_gens(args.ideal, order) if args.ideal else None
    return HeisContext.for_m(args.m, gens)


def _cmd_spectrum(args) -> int:
    if args.setting == "rational":
        sample = real_spectrum_sample(args.word_length, args.cutoff)
    elif args.setting == "bianchi":
        sample = bianchi_spectrum_sample(
            _bianchi_ctx(args), args.word_length, args.cutoff, args.row_cutoff
        )
    else:
        raise ParseError(f"spectrum does not support setting {args.setting!r}")
    rows = [
        {
            "value": _fmt(e.value),
            "height": _fmt(e.height),
            "witness": '"' + e.witness + '"',
            "certified": str(e.certified).lower(),
        }
        for e in sample.entries
    ]
    _emit(_render_table(rows, ["value", "height", "witness", "certified"], args.format), args.out)
    return 0


def _cmd_height(args) -> int:
    xi_plus = parse_real_expr(args.xi_plus)
    xi_minus = parse_real_expr(args.xi_minus)
    gh = geodesic_height(xi_plus, xi_minus, cutoff=args.cutoff)
    rows = [
        {
            "height": _fmt(gh.value),
            "value": _fmt(math.exp(-gh.value) / 2.0),
            "witness": '"' + gh.witness + '"',
            "certified": str(gh.certified).lower(),
        }
    ]
    _emit(_render_table(rows, ["height", "value", "witness", "certified"], args.format), args.out)
    return 0


def _cmd_penetration(args) -> int:
    if args.setting == "rational":
        q = int(args.q)
        depth = penetration_depth(q)
        gamma = Mobius(1, 0, q, 1)
        geo = horoball_penetration(gamma)
        rows = [{"denominator": args.q, "depth": _fmt(depth), "geometric": _fmt(geo), "gap": _fmt(abs(depth - geo))}]
        _emit(_render_table(rows, ["denominator", "depth", "geometric", "gap"], args.format), args.out)
        return 0
    order = OrderSpec.maximal(args.m)
    q = parse_quadint(args.q, order)
    if args.setting == "bianchi":
        depth = penetration_depth(q)
        g, s, t = quad_xgcd(order.one(), q)
        gamma = Mobius(order.one(), order.zero(), q, order.one())
        geo = horoball_penetration(gamma)
        rows = [{"denominator": str(q), "depth": _fmt(depth), "geometric": _fmt(geo), "gap": _fmt(abs(depth - geo))}]
        _emit(_render_table(rows, ["denominator", "depth", "geometric", "gap"], args.format), args.out)
        return 0
    if args.setting == "heisenberg":
        depth = heis_penetration(q, order)
        rows = [{"denominator": str(q), "depth": _fmt(depth), "geometric": "", "gap": ""}]
        _emit(_render_table(rows, ["denominator", "depth", "geometric", "gap"], args.format), args.out)
        return 0
    raise ParseError(f"unknown setting {args.setting!r}")


def _cmd_duality_check(args) -> int:
    word = parse_cfword(args.cf)
    if word.prefix or not word.period:
        raise DomainError("duality check needs a periodic word")
    c = float(approx_constant(word))
    dual = duality(c)
    res = excursion_limsup(word_value(word), depth=args.depth)
    rows = [
        {
            "constant": _fmt(c),
            "dual_height": _fmt(dual),
            "excursion_limsup": _fmt(res.estimate),
            "gap": _fmt(abs(res.estimate - dual)),
        }
    ]
    _emit(_render_table(rows, ["constant", "dual_height", "excursion_limsup", "gap"], args.format), args.out)
    return 0


def _cmd_closure_report(args) -> int:
    if args.setting != "rational":
        raise ParseError("closure-report supports the rational setting")
    sample = real_spectrum_sample(args.word_length, args.cutoff)
    estimates = []
    for spec_text in args.estimate or []:
        label, _, expr = spec_text.partition("=")
        if not expr:
            raise ParseError("estimate must be 'label=cf-word'")
        w = parse_cfword(expr)
        res = excursion_limsup(word_value(w), depth=args.depth)
        estimates.append((label, res.estimate))
    report = closure_diagnostics(sample, args.eps, estimates)
    bounds = bound_check(sample)
    payload = {
        "max_value": bounds.max_value,
        "min_height": bounds.min_height,
        "within_bound": bounds.within_bound,
        "accumulation_candidates": json.loads(report.to_json())["accumulation_candidates"],
        "duality_violations": duality_violations(sample),
        "nearest_gaps": json.loads(report.to_json())["nearest_gaps"],
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# Parser wiring

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors, per the CLI contract
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    p = _Parser(prog="cuspspec", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, norm=False, words=False):
        sp.add_argument("--setting", default="rational", choices=["rational", "bianchi", "heisenberg"])
        sp.add_argument("--m", type=int, default=1, help="squarefree m for Q(i*sqrt(m))")
        sp.add_argument("--ideal", default="", help="comma-separated ideal generators, e.g. '1+1*w'")
        sp.add_argument("--format", default="csv", choices=["csv", "json"])
        sp.add_argument("--out", default=None, help="output file (default stdout)")
        if norm:
            sp.add_argument("--norm-bound", type=int, default=10000)
        if words:
            sp.add_argument("--word-length", type=int, default=8)
            sp.add_argument("--cutoff", type=int, default=4)

    sp = sub.add_parser("approx-const", help="approximation constant of a point")
    common(sp, norm=True)
    sp.add_argument("--cf", default=None, help="continued-fraction word, e.g. '[1;(2)]'")
    sp.add_argument("--x", default=None, help="boundary/heisenberg point expression")
    sp.set_defaults(func=_cmd_approx_const)

    sp = sub.add_parser("spectrum", help="sample closed-geodesic heights and dual values")
    common(sp, words=True)
    sp.add_argument("--row-cutoff", type=int, default=60)
    sp.set_defaults(func=_cmd_spectrum)

    sp = sub.add_parser("height", help="height of the closed geodesic with given endpoints")
    common(sp)
    sp.add_argument("--xi-plus", required=True)
    sp.add_argument("--xi-minus", required=True)
    sp.add_argument("--cutoff", type=int, default=80)
    sp.set_defaults(func=_cmd_height)

    sp = sub.add_parser("penetration", help="horoball penetration depth of a denominator")
    common(sp)
    sp.add_argument("--q", required=True, help="denominator (integer or 'a+b*w')")
    sp.set_defaults(func=_cmd_penetration)

    sp = sub.add_parser("duality-check", help="constant vs excursion limsup for a periodic word")
    common(sp)
    sp.add_argument("--cf", required=True)
    sp.add_argument("--depth", type=int, default=40)
    sp.set_defaults(func=_cmd_duality_check)

    sp = sub.add_parser("closure-report", help="accumulation/bound diagnostics for a spectrum sample")
    common(sp, words=True)
    sp.add_argument("--eps", type=float, default=1e-3)
    sp.add_argument("--depth", type=int, default=40)
    sp.add_argument("--estimate", action="append", help="named excursion estimate 'label=[cf-word]'")
    sp.set_defaults(func=_cmd_closure_report)

    return p


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        RunConfig.from_args(args)  # validate the shared flag bundle up front
        if args.command == "approx-const" and args.setting == "rational" and not args.cf:
            raise ParseError("--cf is required for the rational setting")
        if args.command == "approx-const" and args.setting != "rational" and not args.x:
            raise ParseError("--x is required for this setting")
        return args.func(args)
    except ParseError as exc:
        print(f"cuspspec: parse error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"cuspspec: domain error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
