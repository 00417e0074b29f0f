# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric inner loops.

Twin of ``_pykernels``: same primitives, same operation order, so the two
backends agree to a few ulp (the only divergence source is libm vs CPython
lgamma/cos/sin rounding).
"""

from libc.math cimport lgamma, exp, cos, sin, sqrt, INFINITY
from libc.stdlib cimport malloc, free

NAME = "cython"

LGAMMA_CUTOFF = 32

cdef double _LN2 = 0.6931471805599453
cdef double _TWO_PI = 6.283185307179586
cdef int _LG_CUT = 32


def coefficient_table(double nu, int n_max):
    """Kernel coefficients c_0..c_n_max for order nu.

    c_n = Gamma(nu+1) / (2^n * Gamma(n/2 + 1) * Gamma(n/2 + nu + 1)),
    evaluated through log-gamma differences for n <= LGAMMA_CUTOFF and via
    c_n = c_{n-2} / (n * (n + 2*nu)) above it.  Values that fall below the
    normal double range underflow gradually to 0.0.
    """
    cdef double lg_nu1 = lgamma(nu + 1.0)
    cdef int top = n_max if n_max < _LG_CUT else _LG_CUT
    cdef list vals = [0.0] * (n_max + 1)
    cdef int n
    cdef double h
    vals[0] = 1.0
    for n in range(1, top + 1):
        h = 0.5 * n
        vals[n] = exp(lg_nu1 - n * _LN2 - lgamma(h + 1.0) - lgamma(h + nu + 1.0))
    for n in range(top + 1, n_max + 1):
        vals[n] = (<double> vals[n - 2]) / (n * (n + 2.0 * nu))
    return vals


cdef inline void _horner_c(double* coeffs, Py_ssize_t m, double zr, double zi,
                           double* out_r, double* out_i) noexcept nogil:
    cdef double acc_r = 0.0
    cdef double acc_i = 0.0
    cdef double t
    cdef Py_ssize_t k
    for k in range(m - 1, -1, -1):
        t = acc_r * zr - acc_i * zi + coeffs[k]
        acc_i = acc_r * zi + acc_i * zr
        acc_r = t
    out_r[0] = acc_r
    out_i[0] = acc_i


cdef double* _to_buf(object coeffs, Py_ssize_t* m) except NULL:
    cdef Py_ssize_t n = len(coeffs)
    cdef double* buf = <double*> malloc(n * sizeof(double) if n > 0 else sizeof(double))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t k
    try:
        for k in range(n):
            buf[k] = coeffs[k]
    except BaseException:
        free(buf)
        raise
    m[0] = n
    return buf


def horner(coeffs, double zr, double zi):
    """Evaluate sum(coeffs[k] * z^k) at z = zr + i*zi; coeffs real, ascending."""
    cdef Py_ssize_t m
    cdef double* buf = _to_buf(coeffs, &m)
    cdef double out_r, out_i
    try:
        _horner_c(buf, m, zr, zi, &out_r, &out_i)
    finally:
        free(buf)
    return out_r, out_i


def min_real_ratio_on_circle(num, den, double radius, int n_points, double floor):
    """Minimum of Re(num(z)/den(z)) over z_j = radius*exp(2*pi*i*j/n_points).

    Returns (min_re, argmin_index, violation_index, min_abs_den).  The scan
    stops at the first point with |den(z_j)| < floor; violation_index is that
    j (or -1), and min_re then covers only the scanned prefix.
    """
    cdef Py_ssize_t mn, md
    cdef double* nbuf = _to_buf(num, &mn)
    cdef double* dbuf
    try:
        dbuf = _to_buf(den, &md)
    except BaseException:
        free(nbuf)
        raise
    cdef double min_re = INFINITY
    cdef double min_abs = INFINITY
    cdef int argmin = -1
    cdef int viol = -1
    cdef int j
    cdef double theta, zr, zi, nr, ni, dr, di, d2, ad, re
    try:
        for j in range(n_points):
            theta = _TWO_PI * j / n_points
            zr = radius * cos(theta)
            zi = radius * sin(theta)
            _horner_c(nbuf, mn, zr, zi, &nr, &ni)
            _horner_c(dbuf, md, zr, zi, &dr, &di)
            d2 = dr * dr + di * di
            ad = sqrt(d2)
            if ad < min_abs:
                min_abs = ad
            if ad < floor:
                viol = j
                break
            re = (nr * dr + ni * di) / d2
            if re < min_re:
                min_re = re
                argmin = j
    finally:
        free(nbuf)
        free(dbuf)
    return min_re, argmin, viol, min_abs
