"""Dense complex-matrix kernel for qubit states of at most three qubits.

Everything here accepts either a single matrix of shape ``(n, n)`` or a stack
of matrices of shape ``(..., n, n)``; stacked inputs are processed in one
vectorized pass, which is what makes ensemble scans over 1e5 states cheap.

Qubit ordering: index 0 is the leftmost (most significant) tensor factor, so
``|q0 q1 q2>`` maps to row ``4*q0 + 2*q1 + q2``.
"""
from __future__ import annotations

from functools import reduce

import numpy as np

from .errors import ConvergenceError, PSDError, ShapeError, SizeError, SymmetryError

HERMITIAN_TOL = 1e-12
OFFDIAG_TOL = 1e-13
MAX_SWEEPS = 100
MAX_DIM = 64

# eigenvalues in [-PSD_FAIL_TOL, ZERO_TOL] are exact zeros before any sqrt
ZERO_TOL = 1e-14
PSD_FAIL_TOL = 1e-8
# off-diagonal magnitudes below the smallest normal double count as zero;
# dividing subnormal complex numbers can produce nan
_TINY = np.finfo(float).tiny
_EPS = np.finfo(float).eps

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)


def _check_finite(a: np.ndarray) -> None:
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")


def kron(*mats) -> np.ndarray:
    """Kronecker product of one or more matrices, left factor most significant."""
    if not mats:
        raise ValueError("kron needs at least one matrix")
    arrs = [np.asarray(m, dtype=complex) for m in mats]
    rows = cols = 1
    for a in arrs:
        if a.ndim != 2:
            raise ShapeError(f"kron expects 2-D matrices, got shape {a.shape}")
        _check_finite(a)
        rows *= a.shape[0]
        cols *= a.shape[1]
    if rows > MAX_DIM or cols > MAX_DIM:
        raise SizeError(f"kron result {rows}x{cols} exceeds {MAX_DIM}x{MAX_DIM}")
    return reduce(np.kron, arrs)


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def _square(h) -> np.ndarray:
    a = np.asarray(h)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise ShapeError(f"expected square matrix, got shape {a.shape}")
    return a


def hermitize(h, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``(h + h^dagger)/2`` after checking ``max|h - h^dagger| <= tol``."""
    a = _square(h).astype(complex)
    _check_finite(a)
    asym = np.max(np.abs(a - dagger(a))) if a.size else 0.0
    if asym > tol:
        raise SymmetryError(f"matrix is not Hermitian (max |h - h^dagger| = {asym:.3e})")
    return 0.5 * (a + dagger(a))


def _rotate(a: np.ndarray, v, p: int, q: int) -> None:
    """Zero ``a[:, p, q]`` in place; accumulate the rotation into ``v``."""
    apq = a[:, p, q]
    r = np.abs(apq)
    active = r > _TINY
    if not active.any():
        return
    safe_r = np.where(active, r, 1.0)
    phase = np.where(active, apq / safe_r, 1.0)
    tau = (a[:, q, q].real - a[:, p, p].real) / (2.0 * safe_r)
    sgn = np.where(tau >= 0.0, 1.0, -1.0)
    t = np.where(active, sgn / (np.abs(tau) + np.hypot(1.0, tau)), 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    cb = c[:, None]
    sb = s[:, None]
    eb = phase[:, None]
    ebc = np.conj(eb)

    col_p = a[:, :, p].copy()
    col_q = a[:, :, q].copy()
    a[:, :, p] = cb * col_p - sb * ebc * col_q
    a[:, :, q] = sb * col_p + cb * ebc * col_q
    row_p = a[:, p, :].copy()
    row_q = a[:, q, :].copy()
    a[:, p, :] = cb * row_p - sb * eb * row_q
    a[:, q, :] = sb * row_p + cb * eb * row_q
    a[:, p, q] = 0.0
    a[:, q, p] = 0.0
    a[:, p, p] = a[:, p, p].real
    a[:, q, q] = a[:, q, q].real

    if v is not None:
        vp = v[:, :, p].copy()
        vq = v[:, :, q].copy()
        v[:, :, p] = cb * vp - sb * ebc * vq
        v[:, :, q] = sb * vp + cb * ebc * vq


def _jacobi(a: np.ndarray, want_vectors: bool):
    """Cyclic complex Jacobi on a stack ``(B, n, n)`` of Hermitian matrices.

    Each (p, q) rotation is a phase rotation on column q followed by a real
    Givens rotation. Pairs whose off-diagonal entry is exactly zero get the
    identity rotation, so exact block structure of the input survives.
    """
    a = a.copy()
    nb, n, _ = a.shape
    v = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy() if want_vectors else None
    if n == 1:
        return a[:, 0, :].real.copy(), v

    scale = np.maximum(1.0, np.sqrt(np.sum(np.abs(a) ** 2, axis=(-1, -2))))
    offmask = ~np.eye(n, dtype=bool)
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]

    todo = np.arange(nb)
    for _ in range(MAX_SWEEPS + 1):
        off = np.sqrt(np.sum(np.abs(a[todo][:, offmask]) ** 2, axis=-1))
        todo = todo[off > OFFDIAG_TOL * scale[todo]]
        if todo.size == 0:
            break
        if _ == MAX_SWEEPS:
            raise ConvergenceError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
        sub = a[todo]
        vsub = v[todo] if want_vectors else None
        for p, q in pairs:
            _rotate(sub, vsub, p, q)
        a[todo] = sub
        if want_vectors:
            v[todo] = vsub

    w = np.diagonal(a, axis1=-2, axis2=-1).real.copy()
    return w, v


def eig_hermitian(h, vectors: bool = False):
    """Eigen-decomposition of a Hermitian matrix (or stack) by cyclic Jacobi.

    Parameters
    ----------
    h : array_like, shape (..., n, n)
        Hermitian within ``HERMITIAN_TOL`` entrywise; symmetrized before use.
    vectors : bool
        Also return the unitary whose columns are the eigenvectors.

    Returns
    -------
    w : ndarray, shape (..., n)
        Real eigenvalues in ascending order.
    v : ndarray, shape (..., n, n)
        Only if ``vectors``; ``h = v @ diag(w) @ v^dagger``.
    """
    a = hermitize(h)
    batch = a.shape[:-2]
    n = a.shape[-1]
    flat = a.reshape((-1, n, n))
    w, v = _jacobi(flat, vectors)
    order = np.argsort(w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1).reshape(batch + (n,))
    if not vectors:
        return w
    v = np.take_along_axis(v, order[:, None, :], axis=-1).reshape(batch + (n, n))
    return w, v


def _orthogonalize(a: np.ndarray, p: int, q: int) -> None:
    """One-sided Jacobi step: make columns p and q of each ``a`` orthogonal."""
    cp = a[:, :, p]
    cq = a[:, :, q]
    alpha = np.sum(np.abs(cp) ** 2, axis=-1)
    beta = np.sum(np.abs(cq) ** 2, axis=-1)
    g = np.sum(np.conj(cp) * cq, axis=-1)
    r = np.abs(g)
    active = r > _TINY
    if not active.any():
        return
    safe_r = np.where(active, r, 1.0)
    phase = np.where(active, np.conj(g) / safe_r, 1.0)
    zeta = (beta - alpha) / (2.0 * safe_r)
    sgn = np.where(zeta >= 0.0, 1.0, -1.0)
    t = np.where(active, sgn / (np.abs(zeta) + np.hypot(1.0, zeta)), 0.0)
    c = (1.0 / np.sqrt(1.0 + t * t))[:, None]
    s = t[:, None] * c
    bq = cq * phase[:, None]  # cp^H bq is real and non-negative
    new_p = c * cp - s * bq
    new_q = s * cp + c * bq
    a[:, :, p] = new_p
    a[:, :, q] = new_q


def singular_values(a) -> np.ndarray:
    """Singular values of a square matrix (or stack), descending.

    One-sided (Hestenes) Jacobi: columns are rotated until mutually
    orthogonal and their norms are the singular values. Small singular
    values come out with absolute error near ``eps * ||a||``, unlike square
    roots of the eigenvalues of ``a^dagger a``.
    """
    arr = _square(a).astype(complex)
    _check_finite(arr)
    batch = arr.shape[:-2]
    n = arr.shape[-1]
    work = arr.reshape((-1, n, n)).copy()
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]
    todo = np.arange(work.shape[0])
    for sweep in range(MAX_SWEEPS + 1):
        sub = work[todo]
        norms = np.sum(np.abs(sub) ** 2, axis=-2)
        gram = np.abs(np.einsum("bki,bkj->bij", np.conj(sub), sub))
        # relative orthogonality, with an absolute floor for round-off-sized columns
        bound = np.maximum(
            OFFDIAG_TOL * np.sqrt(norms[:, :, None] * norms[:, None, :]),
            _EPS * np.sum(norms, axis=-1)[:, None, None],
        )
        off = np.where(np.eye(n, dtype=bool), 0.0, gram - bound)
        todo = todo[np.any(off > 0.0, axis=(-1, -2))]
        if todo.size == 0:
            break
        if sweep == MAX_SWEEPS:
            raise ConvergenceError(f"one-sided Jacobi did not converge in {MAX_SWEEPS} sweeps")
        sub = work[todo]
        for p, q in pairs:
            _orthogonalize(sub, p, q)
        work[todo] = sub
    sv = np.sqrt(np.sum(np.abs(work) ** 2, axis=-2))
    return (-np.sort(-sv, axis=-1)).reshape(batch + (n,))


def clamp_eigenvalues(w: np.ndarray) -> np.ndarray:
    """Snap numerically-zero eigenvalues to 0 and reject clearly negative ones."""
    w = np.asarray(w, dtype=float)
    if np.any(w < -PSD_FAIL_TOL):
        raise PSDError(f"matrix is not positive semidefinite (min eigenvalue {w.min():.3e})")
    return np.where(w <= ZERO_TOL, 0.0, w)


def psd_sqrt(h) -> np.ndarray:
    """Hermitian square root ``S`` of a PSD matrix, ``S @ S == h``."""
    w, v = eig_hermitian(h, vectors=True)
    root = np.sqrt(clamp_eigenvalues(w))
    s = (v * root[..., None, :]) @ dagger(v)
    return 0.5 * (s + dagger(s))


def partial_trace(rho, qubit_count: int, keep) -> np.ndarray:
    """Reduced matrix on the qubits in ``keep`` (ascending tensor order).

    ``rho`` may carry leading batch dimensions.
    """
    a = np.asarray(rho, dtype=complex)
    n = int(qubit_count)
    dim = 2 ** n
    if a.ndim < 2 or a.shape[-2:] != (dim, dim):
        raise ShapeError(f"expected {dim}x{dim} matrix for {n} qubits, got {a.shape[-2:]}")
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise IndexError("keep must name at least one qubit")
    if keep[0] < 0 or keep[-1] >= n:
        raise IndexError(f"qubit index out of range for {n} qubits: {keep}")

    batch = a.shape[:-2]
    t = a.reshape(batch + (2,) * (2 * n))
    nb = len(batch)
    # einsum labels: batch, row qubits, column qubits; traced qubits share a label
    letters = "abcdefghijklmnopqrstuvwxyz"
    b_lab = letters[:nb]
    r_lab = list(letters[nb:nb + n])
    c_lab = list(letters[nb + n:nb + 2 * n])
    for k in range(n):
        if k not in keep:
            c_lab[k] = r_lab[k]
    out = b_lab + "".join(r_lab[k] for k in keep) + "".join(c_lab[k] for k in keep)
    red = np.einsum(f"{b_lab}{''.join(r_lab)}{''.join(c_lab)}->{out}", t)
    m = 2 ** len(keep)
    return red.reshape(batch + (m, m))
