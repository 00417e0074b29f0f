"""Pure-Python numeric inner loops.

Twin of ``_fastkernels`` (the optional compiled extension): both modules
expose the same three primitives with the same operation order, so results
agree to a few ulp and callers never need to know which one is active.
"""

import math

NAME = "python"

# Direct log-gamma evaluation up to this index; the exact two-term recurrence
# beyond it.  Repeated lgamma calls drift past 1e-13 relative error once the
# lgamma arguments reach the hundreds, while the recurrence stays at a few ulp.
LGAMMA_CUTOFF = 32

_LN2 = 0.6931471805599453
_TWO_PI = 6.283185307179586


def coefficient_table(nu, n_max):
    """Kernel coefficients c_0..c_n_max for order nu.

    c_n = Gamma(nu+1) / (2^n * Gamma(n/2 + 1) * Gamma(n/2 + nu + 1)),
    evaluated through log-gamma differences for n <= LGAMMA_CUTOFF and via
    c_n = c_{n-2} / (n * (n + 2*nu)) above it.  Values that fall below the
    normal double range underflow gradually to 0.0.
    """
    lg_nu1 = math.lgamma(nu + 1.0)
    top = min(n_max, LGAMMA_CUTOFF)
    vals = [0.0] * (n_max + 1)
    vals[0] = 1.0
    for n in range(1, top + 1):
        h = 0.5 * n
        vals[n] = math.exp(lg_nu1 - n * _LN2 - math.lgamma(h + 1.0)
                           - math.lgamma(h + nu + 1.0))
    for n in range(top + 1, n_max + 1):
        vals[n] = vals[n - 2] / (n * (n + 2.0 * nu))
    return vals


def horner(coeffs, zr, zi):
    """Evaluate sum(coeffs[k] * z^k) at z = zr + i*zi; coeffs real, ascending."""
    acc_r = 0.0
    acc_i = 0.0
    for k in range(len(coeffs) - 1, -1, -1):
        t = acc_r * zr - acc_i * zi + coeffs[k]
        acc_i = acc_r * zi + acc_i * zr
        acc_r = t
    return acc_r, acc_i


def min_real_ratio_on_circle(num, den, radius, n_points, floor):
    """Minimum of Re(num(z)/den(z)) over z_j = radius*exp(2*pi*i*j/n_points).

    Returns (min_re, argmin_index, violation_index, min_abs_den).  The scan
    stops at the first point with |den(z_j)| < floor; violation_index is that
    j (or -1), and min_re then covers only the scanned prefix.
    """
    min_re = math.inf
    argmin = -1
    min_abs = math.inf
    for j in range(n_points):
        theta = _TWO_PI * j / n_points
        zr = radius * math.cos(theta)
        zi = radius * math.sin(theta)
        nr, ni = horner(num, zr, zi)
        dr, di = horner(den, zr, zi)
        d2 = dr * dr + di * di
        ad = math.sqrt(d2)
        if ad < min_abs:
            min_abs = ad
        if ad < floor:
            return min_re, argmin, j, min_abs
        re = (nr * dr + ni * di) / d2
        if re < min_re:
            min_re = re
            argmin = j
    return min_re, argmin, -1, min_abs
