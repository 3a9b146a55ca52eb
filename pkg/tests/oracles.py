"""Independent reference computations used to pin test values.

Nothing here calls into qrelations or numpy.linalg.
"""
import math

import numpy as np


def charpoly(a):
    """Monic characteristic polynomial coefficients by Faddeev-LeVerrier.

    Returns ``c`` with det(x I - a) = sum_k c[k] x^(n-k), ``c[0] = 1``.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    c = [1.0 + 0j]
    m = np.zeros_like(a)
    eye = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        m = a @ m + c[-1] * eye
        c.append(-np.trace(a @ m) / k)
    return np.array(c)


def _horner(c, x):
    acc = 0.0
    for ck in c:
        acc = acc * x + ck
    return acc


def bisect_roots(c, lo, hi, grid=20001, iters=200):
    """Real roots of a real polynomial in [lo, hi] by sign scan plus bisection."""
    c = np.real(np.asarray(c))
    xs = np.linspace(lo, hi, grid)
    fs = [_horner(c, x) for x in xs]
    roots = []
    for x0, x1, f0, f1 in zip(xs[:-1], xs[1:], fs[:-1], fs[1:]):
        if f0 == 0.0:
            roots.append(float(x0))
            continue
        if f0 * f1 > 0:
            continue
        a, b, fa = x0, x1, f0
        for _ in range(iters):
            mid = 0.5 * (a + b)
            fm = _horner(c, mid)
            if fm == 0.0 or b - a < 1e-15:
                a = b = mid
                break
            if fa * fm < 0:
                b = mid
            else:
                a, fa = mid, fm
        roots.append(0.5 * (a + b))
    return roots


def hermitian_eigs_oracle(h):
    h = np.asarray(h, dtype=complex)
    radius = max(sum(abs(x) for x in row) for row in h)  # Gershgorin bound
    return bisect_roots(charpoly(h), -radius - 1.0, radius + 1.0)


def x_state_concurrence(rho):
    """Two-qubit X-state concurrence, 2 max(0, |r23| - sqrt(r11 r44), |r14| - sqrt(r22 r33))."""
    r = np.asarray(rho)
    a = abs(r[1, 2]) - math.sqrt(max(r[0, 0].real * r[3, 3].real, 0.0))
    b = abs(r[0, 3]) - math.sqrt(max(r[1, 1].real * r[2, 2].real, 0.0))
    return 2.0 * max(0.0, a, b)


def pure_concurrence(psi):
    """|<psi| sy x sy |psi*>| = 2 |a00 a11 - a01 a10| for a two-qubit ket."""
    p = np.asarray(psi, dtype=complex)
    return 2.0 * abs(p[0] * p[3] - p[1] * p[2])


def random_unitary_2(rng):
    """Haar-ish 2x2 unitary from Euler angles."""
    a, b, c = rng.uniform(0, 2 * math.pi, 3)
    t = math.acos(math.sqrt(rng.uniform()))
    return np.array(
        [[np.exp(1j * a) * math.cos(t), np.exp(1j * b) * math.sin(t)],
         [-np.exp(-1j * b) * math.sin(t), np.exp(-1j * a) * math.cos(t)]]
    ) * np.exp(1j * c)
