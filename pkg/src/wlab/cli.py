"""Command-line front end.

    wlab eval --fn geom3 --at 1 --precision 16
    wlab reduce count_le_cn --instance supp257
    wlab validate --name bump0 --depth 3

Exit codes: 0 success, 1 usage error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from decimal import ROUND_CEILING, ROUND_FLOOR, Context, Decimal
from fractions import Fraction
from typing import Any, Callable

import mpmath

from .analytic import (
    AnalyticName, GermName, InvalidGermError, diff_analytic, eval_analytic, gadget_fn, germ_from_coeffs,
    germ_from_json, germ_of, sum_germ,
)
from .bumps import BumpSum
from .intervals import Interval, IntervalC
from .names import Name, RationalComplex, index_of
from .polynomials import PolyName, TupleName, deg_via_min, monic_of, poly_from_json, zeros_monic
from .spaces import (
    EvaluationStall, MetricName, pi_name, point_of, rational_point, real_eval, snap_point, validity_report,
)
from .testfns import (
    BumpName, SchwartzName, bump_name, check_bump, check_schwartz, check_slices, eval_smooth_derivative,
    include_D_to_S, seminorm_E, seminorm_S,
)
from .weihrauch import (
    CATALOG, EQUIVALENCES, ConfigurationError, Tag, apply_reduction, instances_for, manifest, oracle, problem,
)
from .weihrauch.instances import KIND_OF, stream_instance
from .weihrauch.truths import Known

__all__ = ["main", "run", "GENERATORS", "FUNCTIONS", "FAMILIES", "name_from_literal"]

DEFAULT_PRECISION = 10


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# registries

# Name literals: {"values": [leading entries], "generator": tag, "arg": int}.
# The generator fills every index past the listed values.
GENERATORS: dict[str, Callable[[int, int], int]] = {
    "zero": lambda n, arg: 0,
    "const": lambda n, arg: arg,
}


def name_from_literal(data) -> tuple[Name, tuple[list[int], int]]:
    """A Name from a literal, plus (head, tail) when the tail is constant."""
    if isinstance(data, list):
        data = {"values": data}
    head = [int(v) for v in data.get("values", [])]
    gen = data.get("generator", "zero")
    if gen not in GENERATORS:
        raise UsageError(f"unknown generator tag {gen!r}; have {sorted(GENERATORS)}")
    arg = int(data.get("arg", 0))
    fill = GENERATORS[gen]
    name = Name(lambda n: head[n] if n < len(head) else fill(n, arg), label="literal")
    return name, (head, fill(len(head), arg))


def _geom(ratio: Fraction, scale: Fraction, advice: int) -> Callable[[], GermName]:
    return lambda: germ_from_coeffs(lambda k: RationalComplex(scale * ratio ** k), advice)


@dataclass(frozen=True)
class FnEntry:
    """A built-in analytic function: a germ to sum, or a ready analytic name."""

    germ: Callable[[], GermName] | None = None
    analytic: Callable[[], AnalyticName] | None = None
    closed_form: Callable[[Any], Any] | None = None

    def function(self) -> AnalyticName:
        return sum_germ(self.germ()) if self.germ else self.analytic()


FUNCTIONS: dict[str, FnEntry] = {
    "geom3": FnEntry(_geom(Fraction(1, 3), Fraction(1), 1), closed_form=lambda z: 1 / (1 - z / 3)),
    "geom2": FnEntry(_geom(Fraction(1, 2), Fraction(1, 2), 1), closed_form=lambda z: 1 / (2 - z)),
    "zero": FnEntry(_geom(Fraction(0), Fraction(0), 0), closed_form=lambda z: 0 * z),
    **{f"gadget{n}": FnEntry(analytic=lambda n=n: gadget_fn(n)) for n in range(4)},
}

FAMILIES: dict[str, BumpSum] = {
    "bump0": BumpSum.bump(0),
    "bump1": BumpSum.bump(1),
    "bump2": BumpSum.bump(2),
    "bump3/2": BumpSum.bump(Fraction(3, 2)),
    "pair": BumpSum((Fraction(-1), Fraction(2)), (Fraction(1), Fraction(-1, 2))),
}


# --------------------------------------------------------------------------
# output

def _dec(x: Fraction, digits: int, rounding: str) -> str:
    ctx = Context(prec=digits, rounding=rounding)
    return str(ctx.divide(Decimal(x.numerator), Decimal(x.denominator)))


@dataclass
class Result:
    headline: str = ""
    rows: list[tuple[int, IntervalC]] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    ok: bool = True


def _bounds(iv: Interval, digits: int) -> tuple[str, str]:
    return _dec(iv.lo, digits, ROUND_FLOOR), _dec(iv.hi, digits, ROUND_CEILING)


def _row_json(i: int, box: IntervalC, digits: int) -> dict:
    lo, hi = _bounds(box.re, digits)
    row = {"index": i, "lower": lo, "upper": hi}
    if box.im.lo != 0 or box.im.hi != 0:
        row["imag_lower"], row["imag_upper"] = _bounds(box.im, digits)
    return row


def _text_interval(box: IntervalC, digits: int) -> str:
    lo, hi = _bounds(box.re, digits)
    s = f"[{lo}, {hi}]"
    if box.im.lo != 0 or box.im.hi != 0:
        ilo, ihi = _bounds(box.im, digits)
        s += f" + i[{ilo}, {ihi}]"
    return s


def render(res: Result, fmt: str, precision: int) -> str:
    digits = max(6, precision * 3 // 10 + 4)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "lower", "upper"])
        for i, box in res.rows:
            w.writerow([i, *_bounds(box.re, digits)])
        return buf.getvalue().rstrip("\n")
    if fmt == "json":
        out = dict(res.data)
        if res.rows:
            out["series"] = [_row_json(i, box, digits) for i, box in res.rows]
        out["ok"] = res.ok
        return json.dumps(out, indent=2, sort_keys=True, default=str)
    lines = [res.headline] if res.headline else []
    if len(res.rows) > 1 or (res.rows and not res.headline):
        lines += [f"{i}: {_text_interval(box, digits)}" for i, box in res.rows]
    return "\n".join(lines)


# --------------------------------------------------------------------------
# argument helpers

def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"not a rational number: {text!r}") from e


def _point(text: str | None) -> RationalComplex:
    if text is None:
        raise UsageError("--at is required")
    parts = text.split(",")
    if len(parts) > 2:
        raise UsageError(f"--at takes 're' or 're,im', got {text!r}")
    return RationalComplex(*(_rational(p) for p in parts))


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e}") from e


def _function(args) -> tuple[AnalyticName, FnEntry | None]:
    if args.file:
        try:
            return sum_germ(germ_from_json(_read_json(args.file))), None
        except (KeyError, ValueError, InvalidGermError) as e:
            raise UsageError(f"bad germ literal: {e}") from e
    if args.fn not in FUNCTIONS:
        raise UsageError(f"unknown function {args.fn!r}; have {sorted(FUNCTIONS)}")
    entry = FUNCTIONS[args.fn]
    return entry.function(), entry


def _germ(args) -> GermName:
    if args.file:
        try:
            return germ_from_json(_read_json(args.file))
        except (KeyError, ValueError, InvalidGermError) as e:
            raise UsageError(f"bad germ literal: {e}") from e
    entry = FUNCTIONS.get(args.fn)
    if entry is None or entry.germ is None:
        have = sorted(k for k, v in FUNCTIONS.items() if v.germ)
        raise UsageError(f"{args.fn!r} is not a built-in germ; have {have}")
    return entry.germ()


def _family(args) -> BumpSum:
    if args.file:
        try:
            return BumpSum.from_json(_read_json(args.file))
        except (KeyError, ValueError, TypeError) as e:
            raise UsageError(f"bad family descriptor: {e}") from e
    key = args.fn or args.name
    if key not in FAMILIES:
        raise UsageError(f"unknown family {key!r}; have {sorted(FAMILIES)}")
    return FAMILIES[key]


def _poly(args):
    if not args.file:
        raise UsageError("--file with a polynomial literal is required")
    try:
        P, cs = poly_from_json(_read_json(args.file))
    except (KeyError, ValueError, TypeError) as e:
        raise UsageError(f"bad polynomial literal: {e}") from e
    nonzero = [k for k, c in enumerate(cs) if c]
    if not nonzero:
        raise UsageError("the zero polynomial has no degree")
    return P, max(nonzero)


# --------------------------------------------------------------------------
# verbs

def cmd_eval(args, n: int) -> Result:
    f, _ = _function(args)
    z = _point(args.at)
    box = eval_analytic(f, rational_point(z), n)
    return Result(_text_interval(box, max(6, n * 3 // 10 + 4)), [(n, box)], {"at": str(args.at), "precision": n})


def cmd_sum(args, n: int) -> Result:
    g = _germ(args)
    z = _point(args.at)
    box = eval_analytic(sum_germ(g), rational_point(z), n)
    return Result(_text_interval(box, max(6, n * 3 // 10 + 4)), [(n, box)],
                  {"at": str(args.at), "precision": n, "germ_advice": g.advice})


def cmd_germ(args, n: int) -> Result:
    f, _ = _function(args)
    seq = germ_of(f.cont)
    rows = [(k, real_eval(seq.element(k), n + 1)) for k in range(args.count)]
    return Result("", rows, {"precision": n, "count": args.count})


def cmd_diff(args, n: int) -> Result:
    f, _ = _function(args)
    z = _point(args.at)
    box = eval_analytic(diff_analytic(f), rational_point(z), n)
    return Result(_text_interval(box, max(6, n * 3 // 10 + 4)), [(n, box)], {"at": str(args.at), "precision": n})


def cmd_zeros(args, n: int) -> Result:
    P, d = _poly(args)
    T = zeros_monic(monic_of(P, d))
    rows = [(j, T.enclosure(j, n)) for j in range(T.length)]
    return Result(f"degree {d}, {len(rows)} zeros at precision 2^-{n}", rows, {"degree": d, "precision": n})


def cmd_deg(args, n: int) -> Result:
    P, d = _poly(args)
    if args.fuel is not None:
        g = oracle(Tag.MIN, fuel=args.fuel)
        got = deg_via_min(P, lambda q: g.answer(q, None))
    else:
        g = oracle(Tag.MIN)
        got = deg_via_min(P, lambda q: g.answer(q, Known(P.bound - d)))
    ok = got == d
    return Result(f"degree: {got}, {'verified' if ok else 'NOT verified (true degree ' + str(d) + ')'}",
                  [], {"degree": got, "true_degree": d, "fuel": args.fuel}, ok)


def cmd_bump(args, n: int) -> Result:
    fam = _family(args)
    x = _point(args.at)
    if x.im:
        raise UsageError("test functions take a real --at")
    f = bump_name(fam).smooth
    rows = [(m, eval_smooth_derivative(f, m, x.re, n)) for m in range(args.order + 1)]
    return Result("", rows, {"family": json.loads(fam.to_json()), "at": str(args.at), "precision": n})


def cmd_seminorm(args, n: int) -> Result:
    fam = _family(args)
    if args.N is None:
        iv = seminorm_S(fam, args.d, args.m, n)
        label = f"||f||_S(d={args.d}, m={args.m})"
    else:
        iv = seminorm_E(fam, args.N, args.m, n)
        label = f"||f||_E(N={args.N}, m={args.m})"
    box = IntervalC(iv, Interval.point(0))
    return Result(f"{label} in {_text_interval(box, max(6, n * 3 // 10 + 4))}", [(0, box)],
                  {"d": args.d, "m": args.m, "N": args.N, "precision": n})


def _closed_form_truth(fn: Callable, z: RationalComplex) -> Callable[[int], IntervalC]:
    def truth(k: int) -> IntervalC:
        with mpmath.workprec(k + 64):
            w = mpmath.mpc(fn(mpmath.mpc(mpmath.mpf(z.re.numerator) / z.re.denominator,
                                         mpmath.mpf(z.im.numerator) / z.im.denominator)))
            re, im = _mp_frac(w.real), _mp_frac(w.imag)
        return IntervalC.ball(RationalComplex(re, im), Fraction(1, 1 << k))
    return truth


def _mp_frac(x) -> Fraction:
    man, exp = mpmath.mpf(x).man_exp
    return Fraction(int(man)) * (Fraction(2) ** int(exp))


def cmd_validate(args, n: int) -> Result:
    depth = args.depth
    name = args.name or args.fn
    if name == "pi":
        truth = _closed_form_truth(lambda z: mpmath.pi + 0 * z, RationalComplex())
        rows = validity_report(pi_name(), truth, depth)
    elif name in FUNCTIONS or args.file and not name:
        f, entry = _function(argparse.Namespace(fn=name, file=args.file))
        if entry is None or entry.closed_form is None:
            raise UsageError(f"{name!r} has no closed form to validate against")
        z = _point(args.at or "1/2")
        point = MetricName("C", Name(lambda k: _point_index(f, z, k)))
        rows = validity_report(point, _closed_form_truth(entry.closed_form, z), depth)
    elif name in FAMILIES or args.file:
        fam = _family(argparse.Namespace(fn=name, name=name, file=args.file))
        f = bump_name(fam)
        rows = check_bump(f, fam)
        rows += check_slices(f.smooth, fam, depth, samples=args.samples)
        rows += check_schwartz(include_D_to_S(f), fam, depth, samples=args.samples)
    else:
        raise UsageError(f"unknown name {name!r}; have pi, {sorted(FUNCTIONS)}, {sorted(FAMILIES)}")
    ok = all(r["ok"] for r in rows)
    return Result(f"{sum(r['ok'] for r in rows)}/{len(rows)} checks pass", [], {"name": name, "rows": rows}, ok)


def _point_index(f: AnalyticName, z: RationalComplex, k: int) -> int:
    box = eval_analytic(f, rational_point(z), k + 2)
    return index_of(snap_point(box.mid, k + 1))


_NAT_TAGS = {Tag.CN, Tag.MAX, Tag.BOUND, Tag.MIN, Tag.LPO, Tag.COUNT, Tag.ADV_G, Tag.ADV_C, Tag.DEG,
             Tag.DBND_CW, Tag.DEG_CW}


def _describe(tag: Tag, a: Name, truth) -> Any:
    if tag in _NAT_TAGS:
        return a(0)
    if tag in (Tag.DIFF1, Tag.LIM):
        return str(point_of(a, 12))
    if tag == Tag.MONIC:
        P = PolyName.parse(a)
        return [str(P.approx(j, 12)) for j in range(P.bound + 1)]
    if tag == Tag.ZEROS:
        T = TupleName.parse(a)
        return [str(T.approx(j, 12)) for j in range(T.length)]
    if tag in (Tag.PROJ_SD, Tag.PROJ_ED):
        return f"support bound {BumpName.parse(a, truth.family).support_bound}"
    if tag == Tag.PROJ_ES:
        f = SchwartzName.parse(a, truth.family)
        return f"decay witnesses {[f.decay(k) for k in range(4)]}"
    if tag in (Tag.CN_SEQ, Tag.BOUND_SEQ):
        return [a(k) for k in range(4)]
    return "analytic name"


_STREAM_KINDS = {"cn", "fin", "min", "gad", "cn_small"}


def cmd_reduce(args, n: int) -> Result:
    rid = args.id
    if rid in EQUIVALENCES:
        raise UsageError(f"{rid} is an equivalence; run its parts {list(EQUIVALENCES[rid])}")
    if rid not in CATALOG:
        raise UsageError(f"unknown reduction {rid!r}; try 'wlab list'")
    r = CATALOG[rid]
    if args.file:
        if KIND_OF[rid] not in _STREAM_KINDS:
            raise UsageError(f"{rid} takes bundled instances only")
        _, (head, tail) = name_from_literal(_read_json(args.file))
        inst = stream_instance(head, tail, "file")
    else:
        insts = instances_for(rid)
        label = args.instance or next(iter(insts))
        if label not in insts:
            raise UsageError(f"unknown instance {label!r} for {rid}; have {sorted(insts)}")
        inst = insts[label]
    try:
        g = oracle(r.target, args.policy, args.fuel)
        a = apply_reduction(r, g, inst)
        ok = problem(r.source).verify(a, inst.truth)
    except ConfigurationError as e:
        raise UsageError(str(e)) from e
    answer = _describe(r.source, a, inst.truth)
    head = f"answer: {answer}, {'verified' if ok else 'NOT verified'}"
    return Result(head, [], {"reduction": rid, "instance": inst.label, "source": r.source.value,
                             "target": r.target.value, "anchor": r.anchor, "answer": answer,
                             "policy": args.policy, "fuel": args.fuel, "verified": ok}, ok)


def cmd_list(args, n: int) -> Result:
    rows = manifest()
    if args.format == "json":
        return Result("", [], {"catalog": rows})
    lines = []
    for row in rows:
        arrow = "==" if "equivalence" in row else "<="
        inst = row["instances"] if isinstance(row["instances"], list) else sorted(
            {i for v in row["instances"].values() for i in v})
        lines.append(f"{row['id']:24s} {row['source']} {arrow} {row['target']}  [{', '.join(inst)}]")
    return Result("\n".join(lines))


VERBS = {
    "eval": cmd_eval, "germ": cmd_germ, "sum": cmd_sum, "diff": cmd_diff, "zeros": cmd_zeros, "deg": cmd_deg,
    "bump": cmd_bump, "seminorm": cmd_seminorm, "validate": cmd_validate, "reduce": cmd_reduce, "list": cmd_list,
}


# --------------------------------------------------------------------------
# entry point

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wlab", description="Executable computable analysis: names, realizers, reductions.")
    p.add_argument("verb", choices=sorted(VERBS))
    p.add_argument("id", nargs="?", help="reduction id for 'reduce'")
    p.add_argument("--precision", type=int, default=None, help="output precision 2^-n")
    p.add_argument("--instance", help="bundled instance label for 'reduce'")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--fuel", type=int, default=None, help="answer with a prefix-reading oracle")
    p.add_argument("--policy", choices=["least", "alt"], default="least")
    p.add_argument("--file", help="JSON literal: germ, polynomial, family descriptor or name")
    p.add_argument("--fn", help="built-in function or family")
    p.add_argument("--name", help="built-in name to validate")
    p.add_argument("--at", help="point: 're' or 're,im' with rational parts")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--count", type=int, default=8, help="number of germ coefficients")
    p.add_argument("--order", type=int, default=0, help="highest derivative for 'bump'")
    p.add_argument("-d", type=int, default=0, help="seminorm weight power")
    p.add_argument("-m", type=int, default=0, help="seminorm derivative order")
    p.add_argument("-N", type=int, default=None, help="use the E seminorm on [-N, N]")
    return p


def _precision(value: int | None) -> int:
    if value is None:
        env = os.environ.get("WLAB_DEFAULT_PRECISION")
        if env is None:
            return DEFAULT_PRECISION
        try:
            value = int(env)
        except ValueError as e:
            raise UsageError(f"WLAB_DEFAULT_PRECISION must be an integer, got {env!r}") from e
    if value < 0:
        raise UsageError("precision must be >= 0")
    return value


def run(argv: list[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        n = _precision(args.precision)
        for flag in ("depth", "count", "order", "d", "m", "samples"):
            if getattr(args, flag) < 0:
                raise UsageError(f"--{flag} must be >= 0")
        if args.fuel is not None and args.fuel < 0:
            raise UsageError("--fuel must be >= 0")
        if args.verb == "reduce" and not args.id:
            raise UsageError("reduce needs a reduction id")
        res = VERBS[args.verb](args, n)
    except UsageError as e:
        print(f"usage error: {e}", file=err)
        return 1
    except (EvaluationStall, InvalidGermError) as e:
        print(f"evaluation failed: {e}", file=err)
        return 2
    text = render(res, args.format, n)
    if text:
        print(text, file=out)
    return 0 if res.ok else 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
