"""Independent oracles that adjudicate the closed-form criteria.

Three unrelated routes cross-check the `criteria` module:

* direct sampling of the defining ratio inequalities on circles inside the
  unit disk (sufficiency evidence) and on the real segment approaching 1
  (necessity evidence for negative-coefficient series);
* the termwise differential-equation residual of the kernel;
* a 50-digit summation oracle that recomputes every left-hand side from the
  literal Gamma-quotient coefficients, sharing no code with the double
  precision path.

`run_suites` packages these as seeded pass/fail checks for the CLI.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import mpmath

from ._backend import kernels
from .criteria import (ClassParams, ConditionForm, DixitPalParams, jnu_condition,
                       l_condition, qnu_condition, t_condition)
from .errors import DenominatorDegeneracyError, DomainError, ParameterError
from .operators import (NormalizedSeries, Outcome, bessel_struve_transform,
                        coefficient_sum_L, coefficient_sum_T, kernel_series,
                        phi_series, q_operator, rtab_extremal_sequence)
from .series import _as_order, _cached_table, _check_tol, moments

__all__ = [
    "DiskSampling",
    "min_real_part_T",
    "min_real_part_L",
    "ratio_real_part",
    "ode_residual",
    "highprec_sum_oracle",
    "CheckResult",
    "run_suites",
    "SUITE_NAMES",
    "sample_sufficiency_tuples",
    "sample_necessity_tuples",
]

NU_GRID = (-0.49, -0.25, 0.0, 0.5, 1.0, 2.0, 10.0)
NECESSITY_RADII = (0.90, 0.99, 0.999, 0.9999)


@dataclass(frozen=True)
class DiskSampling:
    """Equally spaced angular samples on one circle |z| = radius < 1."""

    radius: float = 0.99
    num_points: int = 512
    denominator_floor: float = 1e-12

    def __post_init__(self):
        if not (0.0 < self.radius < 1.0):
            raise ParameterError(f"radius must lie in (0, 1), got {self.radius!r}")
        if self.num_points < 64:
            raise ParameterError(f"need at least 64 points, got {self.num_points!r}")
        if not (self.denominator_floor > 0.0):
            raise ParameterError("denominator floor must be positive")


def _ratio_arrays(f: NormalizedSeries, lam: float, kind: str):
    """Numerator/denominator coefficient arrays of the class-defining ratio.

    With u_n = n*lam - lam + 1 the starlike-type ratio is
    (z + sum n u_n a_n z^n) / (z + sum u_n a_n z^n) and the convex-type one
    is (z + sum n^2 u_n a_n z^n) / (z + sum n u_n a_n z^n).
    """
    if not (0.0 <= lam < 1.0):
        raise ParameterError(f"lambda must lie in [0, 1), got {lam!r}")
    signed = f.signed()
    e0 = [0.0, 1.0]
    e1 = [0.0, 1.0]
    e2 = [0.0, 1.0]
    for n, a in enumerate(signed, start=2):
        u = (n * lam - lam + 1.0) * a
        e0.append(u)
        e1.append(n * u)
        e2.append(n * n * u)
    if kind == "T":
        return e1, e0
    if kind == "L":
        return e2, e1
    raise ParameterError(f"kind must be 'T' or 'L', got {kind!r}")


def _circle_min(num, den, s: DiskSampling) -> float:
    min_re, _, viol, min_abs = kernels.min_real_ratio_on_circle(
        num, den, s.radius, s.num_points, s.denominator_floor)
    if viol >= 0:
        theta = 2.0 * math.pi * viol / s.num_points
        z = complex(s.radius * math.cos(theta), s.radius * math.sin(theta))
        raise DenominatorDegeneracyError(
            f"|denominator| = {min_abs:.3e} < floor {s.denominator_floor:.3e} "
            f"at z = {z}", z=z)
    return min_re


def min_real_part_T(f: NormalizedSeries, lam: float,
                    sampling: DiskSampling = DiskSampling()) -> float:
    """Minimum over the sampled circle of the starlike-type ratio's real part.

    A minimum above alpha at radii approaching 1 supports membership of f in
    the class of order alpha; this is sampling evidence, not a proof.
    """
    num, den = _ratio_arrays(f, lam, "T")
    return _circle_min(num, den, sampling)


def min_real_part_L(f: NormalizedSeries, lam: float,
                    sampling: DiskSampling = DiskSampling()) -> float:
    """Same as `min_real_part_T` for the convex-type ratio."""
    num, den = _ratio_arrays(f, lam, "L")
    return _circle_min(num, den, sampling)


def ratio_real_part(f: NormalizedSeries, lam: float, z, kind: str = "T",
                    floor: float = 1e-12) -> float:
    """Real part of the class-defining ratio at one point."""
    num, den = _ratio_arrays(f, lam, kind)
    z = complex(z)
    nr, ni = kernels.horner(num, z.real, z.imag)
    dr, di = kernels.horner(den, z.real, z.imag)
    d2 = dr * dr + di * di
    if math.sqrt(d2) < floor:
        raise DenominatorDegeneracyError(
            f"|denominator| = {math.sqrt(d2):.3e} < floor {floor:.3e} at z = {z}",
            z=z)
    return (nr * dr + ni * di) / d2


def ode_residual(nu, z, tol: float = 1e-12) -> float:
    """|S''(z) + (2nu+1)(S'(z) - S'(0))/z - S(z)| from the truncated series.

    The kernel satisfies this identity termwise, so the residual measures
    truncation plus rounding only; it stays below 10*tol.  At z = 0 the
    removable singularity is replaced by the lowest-order coefficient
    identity |(4nu+4)c_2 - c_0|.  The boundary nu = -1/2 is accepted: the
    singular factor 2nu+1 vanishes there.
    """
    order = _as_order(nu)
    if order.nu < -0.5:
        raise DomainError(f"residual check requires nu >= -1/2, got {order.nu}")
    tol = _check_tol(tol)
    vals, _, _ = _cached_table(order.nu, tol, 2)
    z = complex(z)
    if z == 0:
        return abs((4.0 * order.nu + 4.0) * vals[2] - vals[0])
    d1 = [(k + 1) * vals[k + 1] for k in range(len(vals) - 1)]
    d2 = [(k + 2) * (k + 1) * vals[k + 2] for k in range(len(vals) - 2)]
    s0 = complex(*kernels.horner(vals, z.real, z.imag))
    s1 = complex(*kernels.horner(d1, z.real, z.imag))
    s2 = complex(*kernels.horner(d2, z.real, z.imag))
    return abs(s2 + (2.0 * order.nu + 1.0) * (s1 - vals[1]) / z - s0)


# ----------------------------------------------------------------------------
# 50-digit summation oracle.  Deliberately naive and self-contained: the
# coefficients come from the literal Gamma-quotient formula and every sum is
# a plain termwise loop with an explicit geometric remainder bound.

_ORACLE_DPS = 50

SELECTORS = ("c", "m0", "m1", "m2", "m3", "s0", "s1", "s2", "s3",
             "t_proof", "t_stated", "l", "jnu", "qnu", "starlike", "convex")


def _oracle_coefficient(nu, n):
    return (mpmath.gamma(nu + 1) * mpmath.gamma(mpmath.mpf(n + 1) / 2)
            / (mpmath.sqrt(mpmath.pi) * mpmath.factorial(n)
               * mpmath.gamma(mpmath.mpf(n) / 2 + nu + 1)))


def _oracle_sum(termfn, start: int):
    """sum_{n>=start} termfn(n) for positive factorially decaying terms.

    Stops once the term is below 1e-40 and certifies the remainder by the
    geometric bound term*r/(1-r) < 1e-30.
    """
    total = mpmath.mpf(0)
    prev = None
    n = start
    while True:
        term = termfn(n)
        total += term
        if prev is not None and n - start > 8 and term < mpmath.mpf("1e-40"):
            r = term / prev
            if r < 1:
                rem = term * r / (1 - r)
                if rem < mpmath.mpf("1e-30"):
                    return total
        if n - start > 100_000:
            raise RuntimeError("oracle summation failed to converge")
        prev = term
        n += 1


def highprec_sum_oracle(selector: str, nu, n: Optional[int] = None,
                        lam: float = 0.0, alpha: float = 0.0,
                        a: float = 1.0, b: float = -1.0, tau_abs: float = 1.0):
    """Recompute a coefficient, moment, or criterion lhs at 50 digits.

    Every criterion lhs is summed termwise through the coefficient-inequality
    weights (not through the derivative closed forms the fast path uses), so
    agreement is a genuine two-route check.  Returns an mpmath float.
    """
    if selector not in SELECTORS:
        raise ParameterError(f"unknown selector {selector!r}; one of {SELECTORS}")
    nu_val = nu.nu if hasattr(nu, "nu") else float(nu)
    with mpmath.workdps(_ORACLE_DPS):
        nu_mp = mpmath.mpf(nu_val)
        lam_mp = mpmath.mpf(lam)
        alpha_mp = mpmath.mpf(alpha)
        c = lambda k: _oracle_coefficient(nu_mp, k)
        if selector == "c":
            if n is None:
                raise ParameterError("selector 'c' needs the index n")
            return c(n)
        if selector.startswith("m"):
            k = int(selector[1])
            return _oracle_sum(lambda i: mpmath.mpf(i) ** k * c(i - 1), 2)
        if selector.startswith("s"):
            k = int(selector[1])
            return _oracle_sum(lambda i: mpmath.ff(i, k) * c(i), k)
        if selector in ("t_proof", "starlike"):
            if selector == "starlike":
                lam_mp = mpmath.mpf(0)
            w = lambda i: (i * lam_mp - lam_mp + 1) * (i - alpha_mp) * c(i - 1)
            return _oracle_sum(w, 2) + (1 - alpha_mp)
        if selector == "t_stated":
            # stated variant differs only in the S'(1) weight; summed through
            # the derivative values to keep the route distinct from criteria
            s0 = _oracle_sum(lambda i: c(i), 0)
            s1 = _oracle_sum(lambda i: i * c(i), 1)
            s2 = _oracle_sum(lambda i: i * (i - 1) * c(i), 2)
            return (lam_mp * s2 + (1 - lam_mp * alpha_mp) * s1
                    + (1 - alpha_mp) * s0)
        if selector in ("l", "convex"):
            if selector == "convex":
                lam_mp = mpmath.mpf(0)
            w = lambda i: i * (i * lam_mp - lam_mp + 1) * (i - alpha_mp) * c(i - 1)
            return _oracle_sum(w, 2) + (1 - alpha_mp)
        if selector == "jnu":
            scale = (mpmath.mpf(a) - mpmath.mpf(b)) * mpmath.mpf(tau_abs)
            w = lambda i: (i * (i * lam_mp - lam_mp + 1) * (i - alpha_mp)
                           * (c(i - 1) * scale / i))
            return _oracle_sum(w, 2)
        # qnu: through the integral variant's own coefficients c_{n-1}/n
        w = lambda i: (i * (i * lam_mp - lam_mp + 1) * (i - alpha_mp)
                       * (c(i - 1) / i))
        return _oracle_sum(w, 2) + (1 - alpha_mp)


# ----------------------------------------------------------------------------
# Seeded consistency suites (the CLI `verify` command).


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def sample_sufficiency_tuples(condition: str, count: int, seed: int,
                              gate: float = 0.05):
    """Seeded (nu, params...) tuples whose margin clears the gate.

    Rejection-samples nu upward of the critical region so the disk checks
    stay away from equality cases.
    """
    rng = random.Random((seed, condition, "sufficiency").__repr__())
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 400 * count:
            raise RuntimeError(f"sampler starved for condition {condition}")
        lam = rng.uniform(0.0, 0.8)
        alpha = rng.uniform(0.0, 0.8)
        p = ClassParams(lam, alpha)
        nu = rng.uniform(2.0, 40.0)
        if condition == "t":
            margin = t_condition(nu, p).margin
            item = (nu, p, None)
        elif condition == "l":
            margin = l_condition(nu, p).margin
            item = (nu, p, None)
        elif condition == "jnu":
            bb = rng.uniform(-1.0, 0.9)
            aa = rng.uniform(bb + 0.05, 1.0)
            d = DixitPalParams(aa, bb, rng.uniform(0.1, 1.0))
            margin = jnu_condition(nu, p, d).margin
            item = (nu, p, d)
        elif condition == "qnu":
            margin = qnu_condition(nu, p).margin
            item = (nu, p, None)
        else:
            raise ParameterError(f"unknown condition {condition!r}")
        if margin >= gate:
            out.append(item)
    return out


def sample_necessity_tuples(count: int, seed: int, excess: float = 0.05):
    """Seeded (nu, params) tuples where the truncated T-sum of the
    negative-coefficient variant exceeds its threshold by at least `excess`.

    Tuples are additionally required to keep the ratio denominator positive
    on the whole real segment (sum of its weighted coefficients < 0.95):
    past the denominator's first zero the sampled real-part check says
    nothing (the ratio flips sign twice), while with a positive denominator
    the threshold excess forces a drop below alpha near 1.
    """
    rng = random.Random((seed, "necessity").__repr__())
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 400 * count:
            raise RuntimeError("necessity sampler starved")
        lam = rng.uniform(0.0, 0.8)
        alpha = rng.uniform(0.0, 0.8)
        nu = rng.uniform(-0.49, 2.0)
        p = ClassParams(lam, alpha)
        ws = coefficient_sum_T(phi_series(nu), p)
        if ws.value < (1.0 + excess) * ws.threshold:
            continue
        s = moments(nu)
        den_sum = (1.0 - lam) * s.m0 + lam * s.m1
        if den_sum < 0.95:
            out.append((nu, p))
    return out


def _suite_moments(seed: int) -> list[CheckResult]:
    results = []
    for nu in NU_GRID:
        s = moments(nu, 1e-12)
        worst = max(abs(r) for r in s.identity_residuals())
        results.append(CheckResult(
            f"moment identities nu={nu}", worst <= 1e-11,
            f"max residual {worst:.3e}"))
        positive = min(s.m0, s.m1, s.m2, s.m3, s.s0, s.s1, s.s2, s.s3) > 0.0
        results.append(CheckResult(
            f"moment positivity nu={nu}", positive, "all eight values > 0"))
    return results


def _suite_ode(seed: int) -> list[CheckResult]:
    rng = random.Random(seed)
    results = []
    for nu in (-0.5,) + NU_GRID:
        worst = 0.0
        for _ in range(25):
            r = rng.uniform(0.0, 1.0)
            th = rng.uniform(0.0, 2.0 * math.pi)
            z = complex(r * math.cos(th), r * math.sin(th))
            worst = max(worst, ode_residual(nu, z, 1e-12))
        worst = max(worst, ode_residual(nu, 0.0, 1e-12))
        results.append(CheckResult(
            f"ode residual nu={nu}", worst <= 1e-10, f"max residual {worst:.3e}"))
    return results


def _suite_sufficiency(seed: int) -> list[CheckResult]:
    s = DiskSampling(radius=0.99, num_points=512)
    results = []
    for cond, checker in (("t", min_real_part_T), ("l", min_real_part_L)):
        tuples = sample_sufficiency_tuples(cond, 30, seed)
        failures = []
        for nu, p, _ in tuples:
            m = checker(kernel_series(nu), p.lam, s)
            if m <= p.alpha:
                failures.append((nu, p.lam, p.alpha, m))
        results.append(CheckResult(
            f"disk minimum exceeds alpha ({cond} condition, 30 tuples)",
            not failures, f"failures: {failures!r}" if failures else
            "min real part > alpha at r=0.99 for all tuples"))
    for cond in ("jnu", "qnu"):
        tuples = sample_sufficiency_tuples(cond, 30, seed)
        failures = []
        for nu, p, d in tuples:
            if cond == "jnu":
                f = rtab_extremal_sequence(d, 80)
                ws = coefficient_sum_L(bessel_struve_transform(nu, f), p)
            else:
                ws = coefficient_sum_L(q_operator(nu, 80), p)
            if ws.outcome is not Outcome.HOLDS:
                failures.append((nu, p.lam, p.alpha, ws.value, ws.threshold))
        results.append(CheckResult(
            f"weighted sum below threshold ({cond} condition, 30 tuples)",
            not failures, f"failures: {failures!r}" if failures else
            "sum_L <= 1 - alpha for all tuples"))
    return results


def _suite_necessity(seed: int) -> list[CheckResult]:
    tuples = sample_necessity_tuples(10, seed)
    failures = []
    degenerate = 0
    for nu, p in tuples:
        f = phi_series(nu)
        drops = []
        for r in NECESSITY_RADII:
            try:
                drops.append(ratio_real_part(f, p.lam, r, "T"))
            except DenominatorDegeneracyError:
                degenerate += 1
        if not drops or min(drops) >= p.alpha:
            failures.append((nu, p.lam, p.alpha, drops))
    detail = f"degenerate denominators skipped: {degenerate}" if degenerate else \
        "ratio drops below alpha on the real segment for all tuples"
    results = [CheckResult(
        "real-axis drop below alpha (negative-coefficient variant, 10 tuples)",
        not failures, f"failures: {failures!r}" if failures else detail)]
    return results


def _suite_highprec(seed: int) -> list[CheckResult]:
    rng = random.Random(seed)
    results = []
    worst = 0.0
    worst_at = None
    for _ in range(8):
        nu = rng.uniform(-0.45, 10.0)
        p = ClassParams(rng.uniform(0.0, 0.95), rng.uniform(0.0, 0.95))
        pairs = (
            ("t_proof", t_condition(nu, p).lhs),
            ("t_stated", t_condition(nu, p, ConditionForm.STATED).lhs),
            ("l", l_condition(nu, p).lhs),
            ("qnu", qnu_condition(nu, p).lhs),
        )
        for sel, fast in pairs:
            ref = highprec_sum_oracle(sel, nu, lam=p.lam, alpha=p.alpha)
            err = abs(fast - float(ref))
            if err > worst:
                worst, worst_at = err, (sel, nu, p.lam, p.alpha)
    results.append(CheckResult(
        "criterion lhs vs 50-digit oracle (8 random tuples)",
        worst <= 1e-10, f"max abs diff {worst:.3e} at {worst_at}"))
    return results


SUITE_NAMES = ("moments", "ode", "sufficiency", "necessity", "highprec")

_SUITES: dict[str, Callable[[int], list[CheckResult]]] = {
    "moments": _suite_moments,
    "ode": _suite_ode,
    "sufficiency": _suite_sufficiency,
    "necessity": _suite_necessity,
    "highprec": _suite_highprec,
}


def run_suites(names: Sequence[str], seed: int = 2024) -> list[CheckResult]:
    """Run the named consistency suites with a fixed sampling seed."""
    results = []
    for name in names:
        if name not in _SUITES:
            raise ParameterError(f"unknown suite {name!r}; one of {SUITE_NAMES}")
        results.extend(_SUITES[name](seed))
    return results
