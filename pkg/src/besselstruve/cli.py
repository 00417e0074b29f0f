"""Command-line front end.

Subcommands: eval, check, scan, critical, verify.  Exit codes are uniform
across subcommands: 0 success/holds, 1 fails (or a failed verify suite),
2 parameter or domain error, 3 inconclusive truncated comparison.

Defaults may come from an optional key-value config file (`--config`);
explicit flags always win.  There is no environment-variable configuration,
so identical invocations produce identical output.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from typing import Optional

from . import __version__
from ._backend import backend_name
from .criteria import (CONDITION_NAMES, ClassParams, ConditionForm,
                       DixitPalParams, convex_condition, critical_nu,
                       jnu_condition, l_condition, qnu_condition,
                       starlike_condition, t_condition)
from .errors import (BesselStruveError, BracketError, DomainError,
                     InconclusiveError, ParameterError)
from .operators import (Outcome, coefficient_sum_L, coefficient_sum_T,
                        read_series)
from .series import coefficient_sequence, eval_kernel, eval_normalized, eval_phi, moments
from .verifier import SUITE_NAMES, run_suites

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

_CONFIG_KEYS = {
    "tol": float,
    "radius": float,
    "points": int,
    "margin_tol": float,
    "nu_tol": float,
    "seed": int,
}

_DEFAULTS = {
    "tol": 1e-12,
    "radius": 0.99,
    "points": 512,
    "margin_tol": 1e-10,
    "nu_tol": 1e-10,
    "seed": 2024,
}


def _fmt(x: float) -> str:
    """17 significant digits: enough to round-trip any double."""
    return format(float(x), ".17g")


def _load_config(path: Optional[str]) -> dict:
    cfg = dict(_DEFAULTS)
    if path is None:
        return cfg
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                key, sep, val = line.partition("=")
                if not sep:
                    raise ParameterError(
                        f"{path}:{lineno}: expected 'key = value', got {line!r}")
                key = key.strip()
                if key not in _CONFIG_KEYS:
                    raise ParameterError(
                        f"{path}:{lineno}: unknown config key {key!r}")
                cfg[key] = _CONFIG_KEYS[key](val.strip())
    except OSError as exc:
        raise ParameterError(f"cannot read config {path}: {exc}") from exc
    return cfg


def _resolve(args, cfg: dict, key: str):
    val = getattr(args, key, None)
    return cfg[key] if val is None else val


def _parse_range(text: str, steps_required: bool = True):
    """Parse 'lo:hi:steps' (or a single value) into a list of grid points."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        if len(parts) == 3:
            lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
        else:
            raise ValueError("expected 'value' or 'lo:hi:steps'")
    except ValueError as exc:
        raise ParameterError(f"bad range {text!r}: {exc}") from exc
    if steps < 1:
        raise ParameterError(f"bad range {text!r}: steps must be >= 1")
    if steps == 1:
        return [lo]
    return [lo + i * (hi - lo) / (steps - 1) for i in range(steps)]


def _dixit_pal(args) -> Optional[DixitPalParams]:
    given = [args.A is not None, args.B is not None, args.tau_abs is not None]
    if not any(given):
        return None
    if not all(given):
        raise ParameterError("--A, --B and --tau-abs must be given together")
    return DixitPalParams(args.A, args.B, args.tau_abs)


def _run_condition(condition: str, nu: float, p: ClassParams,
                   extra: Optional[DixitPalParams], form: ConditionForm,
                   tol: float):
    if condition == "t":
        return t_condition(nu, p, form, tol)
    if condition == "l":
        return l_condition(nu, p, tol)
    if condition == "starlike":
        return starlike_condition(nu, p.alpha, tol)
    if condition == "convex":
        return convex_condition(nu, p.alpha, tol)
    if condition == "jnu":
        if extra is None:
            raise ParameterError("condition 'jnu' needs --A, --B and --tau-abs")
        return jnu_condition(nu, p, extra, tol)
    if condition == "qnu":
        return qnu_condition(nu, p, tol)
    raise ParameterError(f"unknown condition {condition!r}")


# ---------------------------------------------------------------- subcommands


def _cmd_eval(args) -> int:
    cfg = _load_config(args.config)
    tol = _resolve(args, cfg, "tol")
    z = complex(args.z)
    seq = coefficient_sequence(args.nu, tol)
    s = eval_kernel(args.nu, z, tol)
    print(f"nu = {_fmt(args.nu)}   z = {z}   tol = {_fmt(tol)}")
    print(f"S(z)        = {s}")
    print(f"z*S(z)      = {eval_normalized(args.nu, z, tol)}")
    print(f"z*(2-S(z))  = {eval_phi(args.nu, z, tol)}")
    m = moments(args.nu, tol)
    for k, val in enumerate((m.s0, m.s1, m.s2, m.s3)):
        label = "S" + "'" * k + "(1)"
        print(f"{label.ljust(12)}= {_fmt(val)}")
    print(f"truncation  : N = {seq.truncation_index}, "
          f"tail bound = {_fmt(seq.tail_bound)}")
    return EXIT_HOLDS


def _series_check(args, p: ClassParams, tol: float) -> int:
    if args.condition in ("jnu", "qnu"):
        raise ParameterError(
            f"--series-file applies the coefficient test; condition "
            f"{args.condition!r} is about a fixed operator, not a user series")
    f = read_series(args.series_file)
    if args.condition in ("t", "starlike"):
        ws = coefficient_sum_T(f, p)
        label = "starlike-type"
    else:
        ws = coefficient_sum_L(f, p)
        label = "convex-type"
    print(f"condition : {label} coefficient test (lambda={_fmt(p.lam)}, "
          f"alpha={_fmt(p.alpha)})")
    print(f"series    : {args.series_file} (N={f.truncation_index}, "
          f"sign={f.sign.value})")
    print(f"sum       = {_fmt(ws.value)}")
    print(f"threshold = {_fmt(ws.threshold)}")
    print(f"tail      <= {_fmt(ws.tail_bound) if math.isfinite(ws.tail_bound) else 'unknown'}")
    print(f"outcome   : {ws.outcome.value}")
    if ws.outcome is Outcome.HOLDS:
        return EXIT_HOLDS
    if ws.outcome is Outcome.FAILS:
        return EXIT_FAILS
    return EXIT_INCONCLUSIVE


def _cmd_check(args) -> int:
    cfg = _load_config(args.config)
    tol = _resolve(args, cfg, "tol")
    p = ClassParams(args.lam, args.alpha)
    if args.series_file is not None:
        return _series_check(args, p, tol)
    if args.nu is None:
        raise ParameterError("--nu is required unless --series-file is given")
    form = ConditionForm(args.form)
    verdict = _run_condition(args.condition, args.nu, p, _dixit_pal(args),
                             form, tol)
    print(f"condition : {args.condition} (form {verdict.condition_form.value})")
    print(f"nu        = {_fmt(args.nu)}")
    print(f"lambda    = {_fmt(p.lam)}   alpha = {_fmt(p.alpha)}")
    print(f"lhs       = {_fmt(verdict.lhs)}")
    print(f"rhs       = {_fmt(verdict.rhs)}")
    print(f"margin    = {_fmt(verdict.margin)}")
    print(f"holds     : {str(verdict.holds).lower()}")
    return EXIT_HOLDS if verdict.holds else EXIT_FAILS


def _cmd_scan(args) -> int:
    cfg = _load_config(args.config)
    tol = _resolve(args, cfg, "tol")
    form = ConditionForm(args.form)
    extra = _dixit_pal(args)
    nus = _parse_range(args.nu)
    alphas = _parse_range(args.alpha)
    lams = _parse_range(args.lam)
    if args.condition in ("starlike", "convex") and any(l != 0.0 for l in lams):
        raise ParameterError(
            f"condition {args.condition!r} fixes lambda = 0")
    rows = ["condition,form,nu,lambda,alpha,lhs,rhs,margin,holds"]
    for nu in nus:
        for lam in lams:
            for alpha in alphas:
                p = ClassParams(lam, alpha)
                v = _run_condition(args.condition, nu, p, extra, form, tol)
                rows.append(",".join((
                    args.condition, v.condition_form.value,
                    _fmt(nu), _fmt(lam), _fmt(alpha),
                    _fmt(v.lhs), _fmt(v.rhs), _fmt(v.margin),
                    str(v.holds).lower())))
    payload = "\n".join(rows) + "\n"
    tmp = f"{args.output}.tmp-{os.getpid()}"
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        fh.write(payload)
    os.replace(tmp, args.output)
    print(f"wrote {len(rows) - 1} rows to {args.output}")
    return EXIT_HOLDS


def _cmd_critical(args) -> int:
    cfg = _load_config(args.config)
    tol = _resolve(args, cfg, "tol")
    margin_tol = _resolve(args, cfg, "margin_tol")
    nu_tol = _resolve(args, cfg, "nu_tol")
    p = ClassParams(args.lam, args.alpha)
    lo, _, hi = args.bracket.partition(":")
    try:
        bracket = (float(lo), float(hi))
    except ValueError as exc:
        raise ParameterError(f"bad bracket {args.bracket!r}: {exc}") from exc
    form = ConditionForm(args.form)
    nu_star = critical_nu(args.condition, p, _dixit_pal(args), bracket,
                          margin_tol, nu_tol, form, tol)
    verdict = _run_condition(args.condition, nu_star, p, _dixit_pal(args),
                             form, tol)
    print(f"condition : {args.condition} (form {form.value})")
    print(f"lambda    = {_fmt(p.lam)}   alpha = {_fmt(p.alpha)}")
    print(f"nu*       = {_fmt(nu_star)}")
    print(f"margin    = {_fmt(verdict.margin)}")
    return EXIT_HOLDS


def _cmd_verify(args) -> int:
    cfg = _load_config(args.config)
    seed = _resolve(args, cfg, "seed")
    names = SUITE_NAMES if args.suite == "default" else (args.suite,)
    results = run_suites(names, seed)
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        if not r.passed:
            failed += 1
        print(f"{status}  {r.name.ljust(width)}  {r.detail}")
    print(f"{len(results) - failed}/{len(results)} checks passed "
          f"(seed {seed}, backend {backend_name()})")
    return EXIT_HOLDS if failed == 0 else EXIT_FAILS


# ------------------------------------------------------------------- parsing


def _add_common(sub, config=True):
    if config:
        sub.add_argument("--config", metavar="PATH",
                         help="key-value file with defaults (flags win)")
    sub.add_argument("--tol", type=float, default=None,
                     help="series truncation tolerance (default 1e-12)")


def _add_class_params(sub):
    sub.add_argument("--lambda", dest="lam", type=float, default=0.0,
                     help="interpolation parameter in [0, 1) (default 0)")
    sub.add_argument("--alpha", type=float, default=0.0,
                     help="order parameter in [0, 1) (default 0)")
    sub.add_argument("--A", type=float, default=None,
                     help="Dixit-Pal upper parameter (jnu only)")
    sub.add_argument("--B", type=float, default=None,
                     help="Dixit-Pal lower parameter (jnu only)")
    sub.add_argument("--tau-abs", dest="tau_abs", type=float, default=None,
                     help="Dixit-Pal |tau| (jnu only)")
    sub.add_argument("--form", choices=("proof", "stated"), default="proof",
                     help="variant of the starlike-type inequality")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="besselstruve",
        description="Bessel-Struve kernel evaluation and class-membership "
                    "criteria with independent verification.")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p_eval = subs.add_parser("eval", help="evaluate the kernel and its variants")
    p_eval.add_argument("--nu", type=float, required=True)
    p_eval.add_argument("--z", required=True,
                        help="evaluation point, e.g. '1', '0.3+0.4j'")
    _add_common(p_eval)
    p_eval.set_defaults(func=_cmd_eval)

    p_check = subs.add_parser("check", help="evaluate one membership criterion")
    p_check.add_argument("condition", choices=CONDITION_NAMES)
    p_check.add_argument("--nu", type=float, default=None)
    p_check.add_argument("--series-file", metavar="PATH", default=None,
                         help="apply the coefficient test to a user series")
    _add_class_params(p_check)
    _add_common(p_check)
    p_check.set_defaults(func=_cmd_check)

    p_scan = subs.add_parser("scan", help="grid scan to CSV")
    p_scan.add_argument("condition", choices=CONDITION_NAMES)
    p_scan.add_argument("--nu", required=True, metavar="LO:HI:STEPS",
                        help="nu grid (or a single value)")
    p_scan.add_argument("--lambda", dest="lam", default="0",
                        metavar="LO:HI:STEPS", help="lambda grid or value")
    p_scan.add_argument("--alpha", default="0", metavar="LO:HI:STEPS",
                        help="alpha grid or value")
    p_scan.add_argument("--A", type=float, default=None)
    p_scan.add_argument("--B", type=float, default=None)
    p_scan.add_argument("--tau-abs", dest="tau_abs", type=float, default=None)
    p_scan.add_argument("--form", choices=("proof", "stated"), default="proof")
    p_scan.add_argument("--output", required=True, metavar="PATH")
    _add_common(p_scan)
    p_scan.set_defaults(func=_cmd_scan)

    p_crit = subs.add_parser("critical",
                             help="bisect the critical order of a condition")
    p_crit.add_argument("condition", choices=CONDITION_NAMES)
    p_crit.add_argument("--bracket", default="0.6:30", metavar="LO:HI")
    p_crit.add_argument("--margin-tol", dest="margin_tol", type=float,
                        default=None)
    p_crit.add_argument("--nu-tol", dest="nu_tol", type=float, default=None)
    _add_class_params(p_crit)
    _add_common(p_crit)
    p_crit.set_defaults(func=_cmd_critical)

    p_verify = subs.add_parser("verify", help="run the consistency suites")
    p_verify.add_argument("--suite", choices=("default",) + SUITE_NAMES,
                          default="default")
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--config", metavar="PATH")
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InconclusiveError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (DomainError, ParameterError, BracketError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BesselStruveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILS


if __name__ == "__main__":
    sys.exit(main())
