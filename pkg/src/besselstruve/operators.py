"""Normalized power-series machinery: convolution, operators, coefficient sums.

Series are truncated representations of f(z) = z + sum_{n>=2} a_n z^n.
Under the negative-coefficient convention the stored values are the
magnitudes b_n >= 0 of f(z) = z - sum b_n z^n.  Alongside the coefficients a
series carries an optional tail certificate: ``tail_bound`` bounds
sum_{n>N} |a_n| and ``tail_ratio`` is a geometric envelope ratio q with
|a_{n+1}| <= q*|a_n| past the truncation, which is what lets weighted
comparisons of truncated sums stay honest (conclusive or explicitly not).
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from typing import Optional

from ._backend import kernels
from .criteria import ClassParams, DixitPalParams
from .errors import DomainError, InconclusiveError, ParameterError, SeriesFormatError
from .series import _as_order, coefficient_sequence

__all__ = [
    "SignConvention",
    "NormalizedSeries",
    "Outcome",
    "WeightedSum",
    "hadamard",
    "kernel_series",
    "phi_series",
    "bessel_struve_transform",
    "q_operator",
    "coefficient_sum_T",
    "coefficient_sum_L",
    "rtab_extremal_sequence",
    "write_series",
    "read_series",
]


class SignConvention(enum.Enum):
    GENERAL = "general"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class NormalizedSeries:
    """Truncated normalized series; ``coeffs`` holds a_2..a_N.

    f(0) = 0 and f'(0) = 1 are implicit (a_1 = 1 is not stored).  With the
    NEGATIVE convention the stored values are magnitudes b_n >= 0.
    """

    coeffs: tuple[float, ...]
    sign: SignConvention = SignConvention.GENERAL
    tail_bound: float = 0.0
    tail_ratio: Optional[float] = None

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if self.sign is SignConvention.NEGATIVE and any(c < 0.0 for c in coeffs):
            raise ParameterError(
                "negative-coefficient series stores magnitudes, got a value < 0"
            )
        if self.tail_bound < 0.0:
            raise ParameterError("tail_bound must be >= 0")
        if self.tail_ratio is not None and not (0.0 <= self.tail_ratio < 1.0):
            raise ParameterError("tail_ratio must lie in [0, 1) when given")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def truncation_index(self) -> int:
        """Highest represented power N (1 when no coefficients are stored)."""
        return len(self.coeffs) + 1

    def signed(self) -> tuple[float, ...]:
        """a_2..a_N with the sign convention applied."""
        if self.sign is SignConvention.NEGATIVE:
            return tuple(-c for c in self.coeffs)
        return self.coeffs

    def poly_coeffs(self) -> list[float]:
        """Full ascending coefficient list [0, 1, a_2, ..., a_N]."""
        return [0.0, 1.0, *self.signed()]

    def evaluate(self, z) -> complex:
        z = complex(z)
        re, im = kernels.horner(self.poly_coeffs(), z.real, z.imag)
        return complex(re, im)


def hadamard(f: NormalizedSeries, g: NormalizedSeries) -> NormalizedSeries:
    """Coefficient-wise product, truncated at the shorter input.

    The all-ones series z/(1-z) acts as identity.  Tail certificates multiply:
    sum_{n>N} |a_n b_n| <= (max |b_n|) * sum |a_n| <= tail(f)*tail(g), and the
    envelope ratio of the product is the product of envelopes.
    """
    fa = f.signed()
    ga = g.signed()
    m = min(len(fa), len(ga))
    prod = tuple(fa[k] * ga[k] for k in range(m))
    tail = f.tail_bound * g.tail_bound
    ratio = None
    if f.tail_ratio is not None and g.tail_ratio is not None:
        ratio = f.tail_ratio * g.tail_ratio
    # keep the magnitude representation when exactly one factor is negative
    if (f.sign is SignConvention.NEGATIVE) != (g.sign is SignConvention.NEGATIVE) \
            and all(c <= 0.0 for c in prod):
        return NormalizedSeries(tuple(-c for c in prod), SignConvention.NEGATIVE,
                                tail, ratio)
    return NormalizedSeries(prod, SignConvention.GENERAL, tail, ratio)


def kernel_series(nu, tol: float = 1e-12) -> NormalizedSeries:
    """z*S_nu(z) as a normalized series: a_n = c_{n-1}(nu) for n >= 2."""
    seq = coefficient_sequence(nu, tol)
    return NormalizedSeries(seq.values[1:], SignConvention.GENERAL,
                            seq.tail_bound, seq.tail_ratio)


def phi_series(nu, tol: float = 1e-12) -> NormalizedSeries:
    """z*(2 - S_nu(z)): the same coefficients under the negative convention."""
    seq = coefficient_sequence(nu, tol)
    return NormalizedSeries(seq.values[1:], SignConvention.NEGATIVE,
                            seq.tail_bound, seq.tail_ratio)


def _operator_order(nu):
    order = _as_order(nu)
    if not order.operator_valid:
        raise DomainError(f"operator requires nu > -1/2, got nu={order.nu}")
    return order


def bessel_struve_transform(nu, f: NormalizedSeries,
                            tol: float = 1e-12) -> NormalizedSeries:
    """Convolution with z*S_nu: multiplies a_n by c_{n-1}(nu).

    Preserves the sign convention of ``f`` (the kernel coefficients are
    positive).  Truncation is the shorter of the two operands.
    """
    order = _operator_order(nu)
    out = hadamard(kernel_series(order, tol), f)
    # positive kernel coefficients: hadamard restores f's convention already
    assert out.sign is f.sign
    return out


def q_operator(nu, n_terms: int) -> NormalizedSeries:
    """Integral variant Q_nu(z) = z - sum_{n>=2} c_{n-1}(nu) z^n / n.

    Termwise antiderivative of 2 - S_nu; always a negative-coefficient
    series.  ``n_terms`` is the highest power kept.
    """
    order = _operator_order(nu)
    if n_terms < 1:
        raise ParameterError(f"n_terms must be >= 1, got {n_terms}")
    top = max(n_terms + 2, 8)
    vals = kernels.coefficient_table(order.nu, top)
    coeffs = tuple(vals[n - 1] / n for n in range(2, n_terms + 1))
    # envelope for b_n = c_{n-1}/n: ratio <= c-ratio, and
    # sum_{n>N} c_{n-1}/n <= (1/(N+1)) * c_{N-1} * q/(1-q) + handled below
    cn = vals[n_terms - 1]
    q = 0.0
    if cn > 0.0 and vals[n_terms] > 0.0:
        q = max(vals[n_terms] / vals[n_terms - 1], vals[n_terms + 1] / vals[n_terms])
    if q >= 1.0:
        raise ParameterError(
            f"n_terms={n_terms} truncates before geometric decay at nu={order.nu}"
        )
    tail = cn * q / (1.0 - q) / (n_terms + 1) if q > 0.0 else 0.0
    return NormalizedSeries(coeffs, SignConvention.NEGATIVE, tail,
                            q if q > 0.0 else None)


class Outcome(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class WeightedSum:
    """A truncated weighted coefficient sum compared against a threshold.

    ``value`` is the sum over the stored coefficients, ``tail_bound`` bounds
    the dropped weighted tail (may be inf when no envelope is available), and
    the comparison value <= threshold is decided three-ways.
    """

    value: float
    tail_bound: float
    threshold: float

    @property
    def outcome(self) -> Outcome:
        if self.value + self.tail_bound <= self.threshold:
            return Outcome.HOLDS
        if self.value > self.threshold:
            return Outcome.FAILS
        return Outcome.INCONCLUSIVE

    def require_verdict(self) -> bool:
        out = self.outcome
        if out is Outcome.INCONCLUSIVE:
            raise InconclusiveError(
                f"sum {self.value} vs threshold {self.threshold}: dropped tail "
                f"(<= {self.tail_bound}) straddles the comparison"
            )
        return out is Outcome.HOLDS


def _weighted_tail_bound(f: NormalizedSeries, weight) -> float:
    if f.tail_bound == 0.0:
        return 0.0
    if f.tail_ratio is None or not f.coeffs:
        return math.inf
    base = abs(f.coeffs[-1])
    if base == 0.0:
        return math.inf
    n = f.truncation_index
    q = f.tail_ratio
    total = 0.0
    term = base
    for k in range(1, 100_000):
        term *= q
        inc = term * weight(n + k)
        total += inc
        if inc <= total * 1e-18 + 5e-324:
            break
    return total


def _coefficient_sum(f: NormalizedSeries, p: ClassParams, weight) -> WeightedSum:
    if not isinstance(f, NormalizedSeries):
        raise ParameterError(f"expected NormalizedSeries, got {f!r}")
    if not isinstance(p, ClassParams):
        raise ParameterError(f"expected ClassParams, got {p!r}")
    total = math.fsum(weight(n) * abs(c)
                      for n, c in enumerate(f.coeffs, start=2))
    tail = _weighted_tail_bound(f, weight)
    return WeightedSum(total, tail, 1.0 - p.alpha)


def coefficient_sum_T(f: NormalizedSeries, p: ClassParams) -> WeightedSum:
    """sum_{n>=2} (n*lambda - lambda + 1)(n - alpha) |a_n| vs 1 - alpha.

    ``outcome`` HOLDS certifies membership in the starlike-type class; for
    negative-coefficient series the comparison is necessary as well, so
    FAILS certifies non-membership there.
    """
    w = lambda n: (n * p.lam - p.lam + 1.0) * (n - p.alpha)
    return _coefficient_sum(f, p, w)


def coefficient_sum_L(f: NormalizedSeries, p: ClassParams) -> WeightedSum:
    """sum_{n>=2} n (n*lambda - lambda + 1)(n - alpha) |a_n| vs 1 - alpha."""
    w = lambda n: n * (n * p.lam - p.lam + 1.0) * (n - p.alpha)
    return _coefficient_sum(f, p, w)


def rtab_extremal_sequence(d: DixitPalParams, n_terms: int) -> NormalizedSeries:
    """Coefficient envelope of the Dixit-Pal class: a_n = (A-B)|tau|/n.

    This is the sharp magnitude bound, taken with positive sign; it is the
    worst case for every implemented coefficient sum.  The returned object
    is the truncation itself (tail_bound 0), so stress tests control the
    dropped mass explicitly through ``n_terms``.
    """
    if not isinstance(d, DixitPalParams):
        raise ParameterError(f"expected DixitPalParams, got {d!r}")
    if n_terms < 1:
        raise ParameterError(f"n_terms must be >= 1, got {n_terms}")
    scale = (d.a - d.b) * d.tau_abs
    return NormalizedSeries(tuple(scale / n for n in range(2, n_terms + 1)))


_SIGN_TOKENS = {c.value: c for c in SignConvention}


def write_series(path, f: NormalizedSeries) -> None:
    """Write a series as an annotated coefficient list (one per line)."""
    lines = ["# normalized series, coefficients of z^n for n >= 2",
             f"# sign: {f.sign.value}",
             f"# tail_bound: {f.tail_bound!r}"]
    if f.tail_ratio is not None:
        lines.append(f"# tail_ratio: {f.tail_ratio!r}")
    for n, c in enumerate(f.coeffs, start=2):
        lines.append(f"{n} {c!r}")
    tmp = f"{path}.tmp-{os.getpid()}"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def read_series(path) -> NormalizedSeries:
    """Parse a coefficient list written by `write_series` (or by hand).

    Data lines are "<index> <coefficient>" with indices >= 2 strictly
    increasing; gaps are filled with zeros.  Header comments may set
    ``sign``, ``tail_bound`` and ``tail_ratio``.
    """
    sign = SignConvention.GENERAL
    tail_bound = 0.0
    tail_ratio = None
    coeffs: list[float] = []
    last_n = 1
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if ":" in body:
                    key, _, val = body.partition(":")
                    key = key.strip().lower()
                    val = val.strip()
                    if key == "sign":
                        if val not in _SIGN_TOKENS:
                            raise SeriesFormatError(
                                f"{path}:{lineno}: unknown sign convention {val!r}"
                            )
                        sign = _SIGN_TOKENS[val]
                    elif key == "tail_bound":
                        tail_bound = float(val)
                    elif key == "tail_ratio":
                        tail_ratio = None if val == "none" else float(val)
                continue
            parts = line.split()
            if len(parts) != 2:
                raise SeriesFormatError(
                    f"{path}:{lineno}: expected '<index> <value>', got {line!r}"
                )
            try:
                n = int(parts[0])
                value = float(parts[1])
            except ValueError as exc:
                raise SeriesFormatError(f"{path}:{lineno}: {exc}") from exc
            if n <= last_n:
                raise SeriesFormatError(
                    f"{path}:{lineno}: indices must be strictly increasing "
                    f"and >= 2, got {n} after {last_n}"
                )
            coeffs.extend(0.0 for _ in range(n - last_n - 1))
            coeffs.append(value)
            last_n = n
    return NormalizedSeries(tuple(coeffs), sign, tail_bound, tail_ratio)
