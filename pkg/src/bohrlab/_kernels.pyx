# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Signatures mirror :mod:`bohrlab._kernels_py` exactly."""

import numpy as np
cimport numpy as cnp
from libc.math cimport pow

cnp.import_array()


def taylor_at(const double complex[::1] coeffs, double complex z, Py_ssize_t kmax):
    """Return f^(k)(z)/k! for k = 0..kmax by repeated synthetic division."""
    cdef Py_ssize_t n = coeffs.shape[0] - 1
    cdef Py_ssize_t k, j
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(kmax + 1, dtype=np.complex128)
    cdef double complex[::1] b = np.array(coeffs, dtype=np.complex128)
    cdef double complex[::1] o = out
    for k in range(kmax + 1):
        if k > n:
            break
        j = n - 1
        while j >= k:
            b[j] = b[j] + z * b[j + 1]
            j -= 1
        o[k] = b[k]
    return out


def power_sum(const double[::1] values, double x, Py_ssize_t start, int weight):
    """Sum of n**weight * values[n] * x**n over start <= n <= len(values) - 1."""
    cdef Py_ssize_t n = values.shape[0] - 1
    cdef Py_ssize_t i
    cdef double acc = 0.0
    cdef double w
    if start > n:
        return 0.0
    i = n
    while i >= start:
        if weight == 0:
            w = 1.0
        else:
            w = pow(<double>i, weight)
        acc = acc * x + w * values[i]
        i -= 1
    if start == 0:
        return acc
    return acc * pow(x, <double>start)


def blaschke_expand(const double complex[::1] zeros, double complex c, Py_ssize_t order):
    """Taylor coefficients 0..order of c * prod (alpha - z)/(1 - conj(alpha) z)."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(order + 1, dtype=np.complex128)
    cdef double complex[::1] s = out
    cdef double complex alpha, alpha_bar, prev_s, cur, prev_u
    cdef Py_ssize_t m, i
    s[0] = c
    for m in range(zeros.shape[0]):
        alpha = zeros[m]
        alpha_bar = alpha.conjugate()
        prev_s = 0.0
        prev_u = 0.0
        for i in range(order + 1):
            cur = s[i]
            s[i] = alpha * cur - prev_s + alpha_bar * prev_u
            prev_s = cur
            prev_u = s[i]
    return out


cdef inline double _ipow(double x, int k) nogil:
    cdef double out = 1.0
    while k > 0:
        if k & 1:
            out *= x
        x *= x
        k >>= 1
    return out


def weighted_phi_sum(double r, double shift, double power, Py_ssize_t nterms, bint alternating):
    """Sum over 2 <= n <= nterms of sign_n * (n + shift)**power * r**n / (n (n - 1))."""
    cdef double acc = 0.0
    cdef double rn = r
    cdef double sign = 1.0
    cdef double dn, w
    cdef Py_ssize_t n
    # integer exponents (all built-in bases) avoid libc pow
    cdef bint small_int = power >= 0.0 and power <= 16.0 and power == <int>power
    cdef int ip = <int>power
    for n in range(2, nterms + 1):
        rn *= r
        # later terms are below double resolution and slow subnormal arithmetic
        if rn < 1e-280:
            break
        if alternating:
            sign = -sign
        dn = <double>n
        w = _ipow(dn + shift, ip) if small_int else pow(dn + shift, power)
        acc += sign * w * rn / (dn * (dn - 1.0))
    return acc
