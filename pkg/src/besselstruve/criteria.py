"""Closed-form membership criteria and parameter-boundary bisection.

Each criterion is a linear inequality in the kernel derivative values at
z = 1 (see `series.moments`).  All of them take the form lhs <= rhs with
nonnegative sides, so a single verdict record with the signed margin
rhs - lhs covers every case:

* ``t_condition``   -- sufficient for z*S_nu to lie in the lambda-interpolated
  starlike-type class of order alpha (lambda = 0: starlike of order alpha).
* ``l_condition``   -- same for the convex-type class (lambda = 0: convex).
* ``jnu_condition`` -- sufficient for the kernel convolution of any function
  in the Dixit-Pal class R^tau(A,B) to lie in the convex-type class.
* ``qnu_condition`` -- necessary and sufficient for the negative-coefficient
  integral variant Q_nu.

The starlike-type criterion circulates in two variants that differ in the
coefficient multiplying S'_nu(1): re-deriving the bound from the coefficient
inequality gives (1 - lambda*alpha + 2*lambda) ("proof" form), while the
printed inequality carries (1 - lambda*alpha) ("stated" form).  The derived
form is corroborated independently by ``qnu_condition`` (algebraically the
same linear form) and by the lambda = 0 specialization, so it is canonical
here; the stated form stays available for comparison only.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import BracketError, DomainError, MonotonicityError, ParameterError
from .series import KernelOrder, MomentSet, _as_order, moments

__all__ = [
    "ClassParams",
    "DixitPalParams",
    "ConditionForm",
    "MembershipVerdict",
    "t_condition",
    "l_condition",
    "starlike_condition",
    "convex_condition",
    "jnu_condition",
    "qnu_condition",
    "critical_nu",
    "CONDITION_NAMES",
]


class ConditionForm(enum.Enum):
    PROOF = "proof"
    STATED = "stated"


@dataclass(frozen=True)
class ClassParams:
    """Pair (lambda, alpha) of the interpolated class, both in [0, 1)."""

    lam: float
    alpha: float

    def __post_init__(self):
        lam = float(self.lam)
        alpha = float(self.alpha)
        if not (0.0 <= lam < 1.0):
            raise ParameterError(f"lambda must lie in [0, 1), got {self.lam!r}")
        if not (0.0 <= alpha < 1.0):
            raise ParameterError(f"alpha must lie in [0, 1), got {self.alpha!r}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "alpha", alpha)


@dataclass(frozen=True)
class DixitPalParams:
    """Dixit-Pal class parameters: -1 <= B < A <= 1 and |tau| > 0.

    Only the modulus of tau enters any computed bound, so just ``tau_abs``
    is stored.
    """

    a: float
    b: float
    tau_abs: float

    def __post_init__(self):
        a = float(self.a)
        b = float(self.b)
        tau_abs = float(self.tau_abs)
        if not (-1.0 <= b < a <= 1.0):
            raise ParameterError(
                f"need -1 <= B < A <= 1, got A={self.a!r}, B={self.b!r}"
            )
        if not (tau_abs > 0.0 and math.isfinite(tau_abs)):
            raise ParameterError(f"|tau| must be positive, got {self.tau_abs!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "tau_abs", tau_abs)


@dataclass(frozen=True)
class MembershipVerdict:
    """One evaluated inequality: lhs <= rhs holds iff margin >= 0."""

    lhs: float
    rhs: float
    margin: float
    holds: bool
    condition_form: ConditionForm


def _verdict(lhs: float, rhs: float, form: ConditionForm) -> MembershipVerdict:
    margin = rhs - lhs
    return MembershipVerdict(lhs, rhs, margin, margin >= 0.0, form)


def _operator_order(nu) -> KernelOrder:
    order = _as_order(nu)
    if not order.operator_valid:
        raise DomainError(
            f"criterion requires nu > -1/2, got nu={order.nu}"
        )
    return order


def t_condition(nu, p: ClassParams, form: ConditionForm = ConditionForm.PROOF,
                tol: float = 1e-12) -> MembershipVerdict:
    """Starlike-type sufficiency test for z*S_nu.

    Proof form (canonical):
        lambda*s2 + (1 + 2*lambda - lambda*alpha)*s1 + (1-alpha)*s0
            <= 2*(1-alpha).
    Stated form replaces the s1 coefficient by (1 - lambda*alpha); it is
    weaker-looking (never larger lhs) and is provided only for comparison.
    """
    order = _operator_order(nu)
    p = _check_params(p)
    s = moments(order, tol)
    if form is ConditionForm.PROOF:
        s1_coeff = 1.0 + 2.0 * p.lam - p.lam * p.alpha
    elif form is ConditionForm.STATED:
        s1_coeff = 1.0 - p.lam * p.alpha
    else:
        raise ParameterError(f"unknown condition form {form!r}")
    lhs = p.lam * s.s2 + s1_coeff * s.s1 + (1.0 - p.alpha) * s.s0
    return _verdict(lhs, 2.0 * (1.0 - p.alpha), form)


def l_condition(nu, p: ClassParams, tol: float = 1e-12) -> MembershipVerdict:
    """Convex-type sufficiency test for z*S_nu:

    lambda*s3 + (5*lambda + 1 - lambda*alpha)*s2
        + (4*lambda - 2*lambda*alpha - alpha + 3)*s1 + (1-alpha)*s0
            <= 2*(1-alpha).
    """
    order = _operator_order(nu)
    p = _check_params(p)
    s = moments(order, tol)
    lhs = (p.lam * s.s3
           + (5.0 * p.lam + 1.0 - p.lam * p.alpha) * s.s2
           + (4.0 * p.lam - 2.0 * p.lam * p.alpha - p.alpha + 3.0) * s.s1
           + (1.0 - p.alpha) * s.s0)
    return _verdict(lhs, 2.0 * (1.0 - p.alpha), ConditionForm.PROOF)


def _check_params(p) -> ClassParams:
    if not isinstance(p, ClassParams):
        raise ParameterError(f"expected ClassParams, got {p!r}")
    return p


def starlike_condition(nu, alpha: float, tol: float = 1e-12) -> MembershipVerdict:
    """Starlikeness of order alpha for z*S_nu: `t_condition` at lambda = 0."""
    return t_condition(nu, ClassParams(0.0, alpha), ConditionForm.PROOF, tol)


def convex_condition(nu, alpha: float, tol: float = 1e-12) -> MembershipVerdict:
    """Convexity of order alpha for z*S_nu: `l_condition` at lambda = 0."""
    return l_condition(nu, ClassParams(0.0, alpha), tol)


def jnu_condition(nu, p: ClassParams, d: DixitPalParams,
                  tol: float = 1e-12) -> MembershipVerdict:
    """Convex-type sufficiency for the kernel convolution on R^tau(A,B):

    (A-B)*|tau| * (lambda*s2 + (1 + 2*lambda - lambda*alpha)*s1
                   + (1-alpha)*(s0 - 1))  <=  1 - alpha.

    A nonnegative margin guarantees membership for *every* function of the
    class, via the sharp coefficient envelope |a_n| <= (A-B)|tau|/n.
    """
    order = _operator_order(nu)
    p = _check_params(p)
    if not isinstance(d, DixitPalParams):
        raise ParameterError(f"expected DixitPalParams, got {d!r}")
    s = moments(order, tol)
    scale = (d.a - d.b) * d.tau_abs
    lhs = scale * (p.lam * s.s2
                   + (1.0 + 2.0 * p.lam - p.lam * p.alpha) * s.s1
                   + (1.0 - p.alpha) * (s.s0 - 1.0))
    return _verdict(lhs, 1.0 - p.alpha, ConditionForm.PROOF)


def qnu_condition(nu, p: ClassParams, tol: float = 1e-12) -> MembershipVerdict:
    """Convex-type membership of the integral variant Q_nu (iff condition):

    lambda*s2 + (2*lambda - lambda*alpha + 1)*s1 + (1-alpha)*s0
        <= 2*(1-alpha).

    The n-weights cancel against the 1/n coefficients of Q_nu, which makes
    this the same linear form as the proof-form `t_condition`; because Q_nu
    has negative coefficients the condition is necessary as well.
    """
    order = _operator_order(nu)
    p = _check_params(p)
    s = moments(order, tol)
    lhs = (p.lam * s.s2
           + (2.0 * p.lam - p.lam * p.alpha + 1.0) * s.s1
           + (1.0 - p.alpha) * s.s0)
    return _verdict(lhs, 2.0 * (1.0 - p.alpha), ConditionForm.PROOF)


CONDITION_NAMES = ("t", "l", "starlike", "convex", "jnu", "qnu")


def margin_function(condition: str, p: ClassParams,
                    extra: Optional[DixitPalParams] = None,
                    form: ConditionForm = ConditionForm.PROOF,
                    tol: float = 1e-12) -> Callable[[float], float]:
    """margin(nu) for a named condition with all other parameters fixed."""
    cond = condition.lower()
    if cond not in CONDITION_NAMES:
        raise ParameterError(
            f"unknown condition {condition!r}; expected one of {CONDITION_NAMES}"
        )
    if cond == "jnu":
        if extra is None:
            raise ParameterError("jnu condition needs DixitPalParams")
    elif extra is not None:
        raise ParameterError(f"condition {cond!r} takes no DixitPalParams")
    if cond in ("starlike", "convex"):
        p = ClassParams(0.0, p.alpha)

    def margin(nu: float) -> float:
        if cond in ("t", "starlike"):
            return t_condition(nu, p, form, tol).margin
        if cond in ("l", "convex"):
            return l_condition(nu, p, tol).margin
        if cond == "jnu":
            return jnu_condition(nu, p, extra, tol).margin
        return qnu_condition(nu, p, tol).margin

    return margin


def critical_nu(condition: str, p: ClassParams,
                extra: Optional[DixitPalParams] = None,
                bracket: tuple[float, float] = (0.6, 30.0),
                margin_tol: float = 1e-10, nu_tol: float = 1e-10,
                form: ConditionForm = ConditionForm.PROOF,
                tol: float = 1e-12) -> float:
    """Boundary order nu* where the condition's margin crosses zero.

    Bisection on the (empirically increasing) margin; stops once
    |margin(nu*)| <= margin_tol, which takes about
    log2((hi-lo)/nu_tol) iterations.  Raises `BracketError` when the
    endpoint margins do not straddle zero and `MonotonicityError` when a
    midpoint margin escapes the [margin(lo), margin(hi)] envelope by more
    than rounding slack.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not (lo < hi):
        raise BracketError(f"bracket must satisfy lo < hi, got ({lo}, {hi})")
    margin = margin_function(condition, p, extra, form, tol)
    return _bisect_margin(margin, lo, hi, margin_tol, nu_tol)


def _bisect_margin(margin: Callable[[float], float], lo: float, hi: float,
                   margin_tol: float, nu_tol: float) -> float:
    m_lo = margin(lo)
    m_hi = margin(hi)
    if not (m_lo < 0.0 < m_hi):
        raise BracketError(
            f"margins do not straddle zero: margin({lo}) = {m_lo:.6e}, "
            f"margin({hi}) = {m_hi:.6e}"
        )
    slack = 1e-12 * (1.0 + abs(m_lo) + abs(m_hi))
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        m_mid = margin(mid)
        if m_mid < m_lo - slack or m_mid > m_hi + slack:
            raise MonotonicityError(
                f"margin not monotone on [{lo}, {hi}]: "
                f"margin({mid}) = {m_mid:.6e} outside "
                f"[{m_lo:.6e}, {m_hi:.6e}]"
            )
        if abs(m_mid) <= margin_tol:
            return mid
        if m_mid < 0.0:
            lo, m_lo = mid, m_mid
        else:
            hi, m_hi = mid, m_mid
        if hi - lo <= max(nu_tol, 4.0 * math.ulp(hi)) and min(-m_lo, m_hi) <= margin_tol:
            return lo if -m_lo <= m_hi else hi
    raise RuntimeError(
        f"bisection failed to reach margin tolerance {margin_tol} "
        f"(final bracket [{lo}, {hi}], margins [{m_lo:.3e}, {m_hi:.3e}])"
    )
