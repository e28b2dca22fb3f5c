"""Pure-Python/numpy versions of the compiled kernels in ``_kernels.pyx``."""

import numpy as np


def taylor_at(coeffs, z, kmax):
    """Return f^(k)(z)/k! for k = 0..kmax."""
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    n = coeffs.shape[0] - 1
    out = np.zeros(kmax + 1, dtype=np.complex128)
    idx = np.arange(n + 1, dtype=np.float64)
    zpow = np.power(complex(z), np.arange(n + 1))
    binom = np.ones(n + 1)
    for k in range(min(kmax, n) + 1):
        if k > 0:
            # C(j, k) = C(j, k-1) * (j - k + 1) / k
            binom = binom * (idx - k + 1) / k
        out[k] = np.dot(binom[k:] * coeffs[k:], zpow[: n + 1 - k])
    return out


def power_sum(values, x, start, weight):
    """Sum of n**weight * values[n] * x**n over start <= n <= len(values) - 1."""
    values = np.asarray(values, dtype=np.float64)
    n = values.shape[0] - 1
    if start > n:
        return 0.0
    idx = np.arange(start, n + 1, dtype=np.float64)
    terms = values[start:] * np.power(x, idx)
    if weight:
        terms = terms * idx**weight
    return float(terms.sum())


def blaschke_expand(zeros, c, order):
    """Taylor coefficients 0..order of c * prod (alpha - z)/(1 - conj(alpha) z)."""
    s = [0j] * (order + 1)
    s[0] = complex(c)
    for alpha in zeros:
        alpha = complex(alpha)
        alpha_bar = alpha.conjugate()
        prev_s = 0j
        prev_u = 0j
        for i in range(order + 1):
            cur = s[i]
            s[i] = alpha * cur - prev_s + alpha_bar * prev_u
            prev_s = cur
            prev_u = s[i]
    return np.array(s, dtype=np.complex128)


def weighted_phi_sum(r, shift, power, nterms, alternating):
    """Sum over 2 <= n <= nterms of sign_n * (n + shift)**power * r**n / (n (n - 1))."""
    if nterms < 2:
        return 0.0
    n = np.arange(2, nterms + 1, dtype=np.float64)
    terms = (n + shift) ** power * np.power(r, n) / (n * (n - 1.0))
    if alternating:
        terms[::2] *= -1.0
    return float(terms.sum())
