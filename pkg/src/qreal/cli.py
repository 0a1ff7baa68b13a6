"""Command-line front end.

Every capability of the library is reachable through a subcommand; output
is JSON by default (CSV where tabular), printed with 17 significant digits
and byte-identical across runs for fixed flags.  Domain failures exit 2
with a machine-readable error object on stderr; usage errors exit 64.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import analytic, jumps, series, special
from .cf import (
    CFStream,
    CFWord,
    cf_decode,
    cf_encode_rational,
    cf_encode_real,
    golden_stream,
    q_rational,
)
from .errors import QRealError
from .qcomplex import QComplexParams, boundary_check, q_complex_value
from .special import theta_lambda

USAGE_EXIT = 64
DOMAIN_EXIT = 2


def _fmt(x: float) -> float:
    """Round-trip a float through 17 significant digits for stable output."""
    return float(format(float(x), ".17g"))


def _parse_x(args) -> tuple[str, object]:
    """Digit source from --x: 'p/q', an integer, 'phi', 'arith:s,r', or a
    decimal string combined with --digits."""
    text = args.x
    if text == "phi":
        return text, golden_stream()
    if text.startswith("arith:"):
        s, r = (int(v) for v in text[len("arith:") :].split(","))
        return text, CFStream.arithmetic(s, r)
    if getattr(args, "digits", None):
        return text, cf_encode_real(text, args.digits)
    return text, cf_encode_rational(Fraction(text))


def _parse_q(text: str) -> complex:
    """Complex q from 'RE' or 'RE,IM'."""
    if "," in text:
        re_s, im_s = text.split(",", 1)
        return complex(float(re_s), float(im_s))
    return complex(float(text), 0.0)


def _emit(args, payload: str):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
            if not payload.endswith("\n"):
                fh.write("\n")
    else:
        sys.stdout.write(payload)
        if not payload.endswith("\n"):
            sys.stdout.write("\n")


def _json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


# -- subcommand handlers -----------------------------------------------------------


def _cmd_encode(args):
    if args.digits:
        word = cf_encode_real(args.x, args.digits)
    else:
        word = cf_encode_rational(Fraction(args.x))
    return _json({"x": args.x, "digits": list(word.digits)})


def _cmd_decode(args):
    word = CFWord([int(c) for c in args.cf.split(",")])
    value = cf_decode(word)
    return _json({"digits": list(word.digits), "num": value.numerator, "den": value.denominator})


def _cmd_qrational(args):
    word = cf_encode_rational(Fraction(args.x))
    f = q_rational(word)
    return _json({"num": [int(c) for c in f.num.coeffs], "den": [int(c) for c in f.den.coeffs]})


def _cmd_series(args):
    _, src = _parse_x(args)
    if args.reciprocal:
        ser = series.reciprocal_series(src, args.order)
    else:
        ser = series.q_real_series(src, args.order)
    if args.csv:
        rows = ["n,beta_n"] + [f"{n},{c}" for n, c in ser.csv_rows()]
        return "\n".join(rows)
    return _json(
        {
            "x": args.x,
            "order": ser.order,
            "offset": ser.offset,
            "coeffs": [str(c) for c in ser.coeffs],
        }
    )


def _cmd_eval(args):
    _, src = _parse_x(args)
    q = _parse_q(args.q)
    res = analytic.evaluate(src, q, args.tol)
    return _json(
        {
            "x": args.x,
            "q": {"re": _fmt(q.real), "im": _fmt(q.imag)},
            "value": {"re": _fmt(res.value.real), "im": _fmt(res.value.imag)},
            "err": _fmt(res.err),
            "flag": res.flag,
            "terms": res.terms,
        }
    )


def _cmd_jump(args):
    word = cf_encode_rational(Fraction(args.x))
    if args.q is None:
        rec = jumps.jump_at(word)
        return _json(
            {
                "x": args.x,
                "weight": rec.weight,
                "num": [int(c) for c in rec.value.num.coeffs],
                "den": [int(c) for c in rec.value.den.coeffs],
            }
        )
    q = _parse_q(args.q)
    rec = jumps.jump_at(word, q)
    v = complex(rec.value)
    return _json(
        {
            "x": args.x,
            "weight": rec.weight,
            "value": {"re": _fmt(v.real), "im": _fmt(v.imag)},
        }
    )


def _cmd_totaljump(args):
    q = _parse_q(args.q)
    if args.formal:
        ser = jumps.formal_total_jump(args.depth)
        return _json({"depth": args.depth, "coeffs": [str(c) for c in ser.coefficients(0, ser.order)]})
    res = jumps.numeric_total_jump(q, args.tol, budget=args.budget)
    qv = q.real if q.imag == 0 else q
    target = qv / (1 - qv)
    partial = complex(res.partial_sum)
    return _json(
        {
            "q": {"re": _fmt(q.real), "im": _fmt(q.imag)},
            "target": {"re": _fmt(complex(target).real), "im": _fmt(complex(target).imag)},
            "partial": {"re": _fmt(partial.real), "im": _fmt(partial.imag)},
            "depth": res.depth_used,
            "residual": _fmt(res.residual),
        }
    )


def _cmd_beta(args):
    value = jumps.beta_root(args.level, args.tol)
    return _json({"level": args.level, "value": _fmt(value), "tol": _fmt(args.tol)})


def _cmd_radius(args):
    _, src = _parse_x(args)
    ser = series.q_real_series(src, args.order + 1)
    est = series.radius_estimate(ser, args.window)
    return _json(
        {
            "x": args.x,
            "order": args.order,
            "window": args.window,
            "estimate": _fmt(est),
            "radius_estimate": _fmt(1.0 / est) if est > 0 else None,
        }
    )


def _cmd_counterexample(args):
    stream, sched = series.counterexample_stream(args.stages, budget=args.budget)
    verified = series.verify_schedule(stream, sched)
    return _json(
        {
            "stages": args.stages,
            "targets": sched.targets,
            "checks": [
                {"n": n, "achieved": _fmt(a), "bound": _fmt(b), "ok": a >= b}
                for n, a, b in verified
            ],
        }
    )


def _cmd_bessel(args):
    if args.q is not None:
        res = special.q_bessel(complex(args.c), _parse_q(args.q), complex(args.z), args.tol)
        return _json(
            {
                "kind": "q",
                "value": {"re": _fmt(res.value.real), "im": _fmt(res.value.imag)},
                "terms": res.terms_used,
                "err": _fmt(res.tail_bound),
            }
        )
    value = special.classical_bessel(args.nu, args.z, args.tol)
    return _json({"kind": "classical", "nu": _fmt(args.nu), "z": _fmt(args.z), "value": _fmt(value)})


def _cmd_qcomplex(args):
    tau = _parse_q(args.tau)
    params = QComplexParams(args.t)
    point = theta_lambda(tau, min(args.tol, 1e-13))
    value = q_complex_value(point, params, args.tol)
    return _json(
        {
            "tau": {"re": _fmt(tau.real), "im": _fmt(tau.imag)},
            "t": _fmt(args.t),
            "q": _fmt(params.q),
            "lambda": {"re": _fmt(point.lam.real), "im": _fmt(point.lam.imag)},
            "value": {"re": _fmt(value.real), "im": _fmt(value.imag)},
        }
    )


def _cmd_boundary(args):
    rep = boundary_check(Fraction(args.x), args.approach, args.steps, args.t, args.m_bound)
    return _json(
        {
            "x": args.x,
            "approach": args.approach,
            "t": _fmt(args.t),
            "target": {"re": _fmt(rep["target"].real), "im": _fmt(rep["target"].imag)},
            "residuals": [_fmt(r) for r in rep["residuals"]],
        }
    )


def _scan_row(re_val, im_vals):
    out = []
    for im in im_vals:
        q = complex(re_val, im)
        try:
            inside = abs(q) <= 1 and analytic.in_region_D(q)
        except QRealError:
            inside = False
        if inside and q != 0:
            a = analytic.solve_a(q).a
            in_dp = a**-2 < 1.0 - abs(q)
            out.append((re_val, im, 1, 1 if in_dp else 0, a))
        elif q == 0:
            out.append((re_val, im, 1, 1, None))
        else:
            out.append((re_val, im, 0, 0, None))
    return out


def _cmd_regionscan(args):
    n = args.n
    res = [args.re_min + (args.re_max - args.re_min) * i / (n - 1) for i in range(n)]
    ims = [args.im_min + (args.im_max - args.im_min) * i / (n - 1) for i in range(n)]
    workers = max(1, min(int(os.environ.get("QREAL_THREADS", "1")), 16))
    rows = []
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for chunk in pool.map(lambda r: _scan_row(r, ims), res):
                rows.extend(chunk)
    else:
        for r in res:
            rows.extend(_scan_row(r, ims))
    lines = ["re,im,in_D,in_Dprime,a"]
    for re_v, im_v, ind, indp, a in rows:
        a_txt = format(a, ".17g") if a is not None else ""
        lines.append(f"{format(re_v, '.17g')},{format(im_v, '.17g')},{ind},{indp},{a_txt}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qreal", description=__doc__)
    parser.add_argument("--seed", type=int, default=0, help="accepted for reproducibility; all computations are deterministic")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kn):
        p = sub.add_parser(name, **kn)
        p.set_defaults(handler=fn)
        p.add_argument("--out", help="write output to FILE instead of stdout")
        return p

    p = add("encode", _cmd_encode, help="continued-fraction digits of x")
    p.add_argument("--x", required=True)
    p.add_argument("--digits", type=int, default=0, help="digit count for decimal input")

    p = add("decode", _cmd_decode, help="rational value of a digit word")
    p.add_argument("--cf", required=True, help="comma-separated digits")

    p = add("qrational", _cmd_qrational, help="[x]_q as a rational function")
    p.add_argument("--x", required=True)

    p = add("series", _cmd_series, help="[x]_q as an integer power series")
    p.add_argument("--x", required=True)
    p.add_argument("--digits", type=int, default=0)
    p.add_argument("--order", type=int, default=32)
    p.add_argument("--reciprocal", action="store_true", help="expand 1/[x]_q instead")
    p.add_argument("--csv", action="store_true")

    p = add("eval", _cmd_eval, help="numeric [x]_q with error info")
    p.add_argument("--x", required=True)
    p.add_argument("--digits", type=int, default=0)
    p.add_argument("--q", required=True, help="RE or RE,IM")
    p.add_argument("--tol", type=float, default=1e-10)

    p = add("jump", _cmd_jump, help="jump of [.]_q at a rational")
    p.add_argument("--x", required=True)
    p.add_argument("--q", default=None)

    p = add("totaljump", _cmd_totaljump, help="total jump mass vs q/(1-q)")
    p.add_argument("--q", required=True)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--budget", type=int, default=2_000_000_000)
    p.add_argument("--formal", action="store_true", help="formal series over C_N <= depth")
    p.add_argument("--depth", type=int, default=12)

    p = add("beta", _cmd_beta, help="interaction-equation roots")
    p.add_argument("--level", type=int, required=True, choices=(0, 1, 2))
    p.add_argument("--tol", type=float, default=1e-4)

    p = add("radius", _cmd_radius, help="coefficient growth estimate")
    p.add_argument("--x", required=True)
    p.add_argument("--digits", type=int, default=0)
    p.add_argument("--order", type=int, default=400)
    p.add_argument("--window", type=int, default=50)

    p = add("counterexample", _cmd_counterexample, help="fast-growth word construction")
    p.add_argument("--stages", type=int, default=3)
    p.add_argument("--budget", type=int, default=5000)

    p = add("bessel", _cmd_bessel, help="classical or q-Bessel values")
    p.add_argument("--nu", type=float, default=0.0)
    p.add_argument("--z", type=float, default=0.0)
    p.add_argument("--c", type=float, default=None, help="q-Bessel parameter c")
    p.add_argument("--q", default=None)
    p.add_argument("--tol", type=float, default=1e-13)

    p = add("qcomplex", _cmd_qcomplex, help="[tau]_q in the upper half-plane")
    p.add_argument("--tau", required=True, help="RE,IM")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--json", action="store_true", help="JSON output (the default)")

    p = add("boundary", _cmd_boundary, help="boundary approach residuals")
    p.add_argument("--x", required=True)
    p.add_argument("--approach", choices=("right", "left"), default="right")
    p.add_argument("--steps", type=int, default=5)
    p.add_argument("--t", type=float, default=0.7)
    p.add_argument("--m-bound", type=float, default=2.0)

    p = add("regionscan", _cmd_regionscan, help="CSV grid of region membership")
    p.add_argument("--re-min", type=float, default=-0.5)
    p.add_argument("--re-max", type=float, default=0.5)
    p.add_argument("--im-min", type=float, default=-0.5)
    p.add_argument("--im-max", type=float, default=0.5)
    p.add_argument("--n", type=int, default=21)

    return parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # pragma: no cover - exercised via CLI tests
        self.exit(USAGE_EXIT, f"usage error: {message}\n")


def main(argv=None) -> int:
    parser = build_parser()
    parser.__class__ = _Parser
    for sp in parser._subparsers._group_actions[0].choices.values():
        sp.__class__ = _Parser
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_EXIT
    try:
        payload = args.handler(args)
    except QRealError as exc:
        sys.stderr.write(_json({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return DOMAIN_EXIT
    except ValueError as exc:
        sys.stderr.write(_json({"error": "ValueError", "message": str(exc)}) + "\n")
        return DOMAIN_EXIT
    _emit(args, payload)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
