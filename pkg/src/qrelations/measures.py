"""Resource measures for one- and two-qubit states.

All functions accept a :class:`~qrelations.states.DensityMatrix` or a raw
array; raw arrays may be stacks of shape ``(..., d, d)`` and then give array
results. A single matrix gives a Python float.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import linalg
from .errors import InvariantError, ShapeError
from .states import DensityMatrix

BELL_TOL = 1e-12
RADICAND_TOL = 1e-8
N_MAX = 2 * math.sqrt(2) - 2

_YY = linalg.kron(linalg.SY, linalg.SY)
# Pauli products sigma_i (x) sigma_j, i, j in (x, y, z)
_PAULI_PAIRS = np.array([[linalg.kron(a, b) for b in linalg.PAULIS] for a in linalg.PAULIS])


@dataclass(frozen=True)
class ResourceProfile:
    d2: float
    concurrence: float
    m: float
    n: float
    purity: float

    @property
    def is_bell_nonlocal(self) -> bool:
        return self.n > BELL_TOL

    def to_dict(self) -> dict:
        return asdict(self)


def _raw(rho, dim: int) -> tuple[np.ndarray, bool]:
    a = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if a.ndim < 2 or a.shape[-2:] != (dim, dim):
        raise ShapeError(f"expected {dim}x{dim} matrix, got shape {a.shape}")
    return a, a.ndim == 2


def _result(x, single: bool):
    x = np.asarray(x, dtype=float)
    return float(x) if single else x


def _purity(a: np.ndarray) -> np.ndarray:
    return np.sum(np.abs(a) ** 2, axis=(-1, -2))


def _sq_degree(a1: np.ndarray) -> np.ndarray:
    """2 Tr(rho^2) - 1 for single-qubit marginals, clamped at 0."""
    rad = 2.0 * _purity(a1) - 1.0
    if np.any(rad < -RADICAND_TOL):
        raise InvariantError(f"2 Tr(rho^2) - 1 = {np.min(rad):.3e} < 0: not a valid qubit state")
    return np.clip(rad, 0.0, None)


def coherence_degree_single(rho1) -> float | np.ndarray:
    """Degree of first-order coherence sqrt(2 Tr rho^2 - 1) of one qubit."""
    a, single = _raw(rho1, 2)
    return _result(np.sqrt(_sq_degree(a)), single)


def marginals(rho2) -> tuple[np.ndarray, np.ndarray]:
    a, _ = _raw(rho2, 4)
    return linalg.partial_trace(a, 2, [0]), linalg.partial_trace(a, 2, [1])


def coherence_degree_pair(rho2) -> float | np.ndarray:
    """Squared two-qubit degree of coherence, the mean of both marginals' D^2."""
    a, single = _raw(rho2, 4)
    ra, rb = marginals(a)
    return _result(0.5 * (_sq_degree(ra) + _sq_degree(rb)), single)


def purity(rho) -> float | np.ndarray:
    a = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    return _result(_purity(a), a.ndim == 2)


def spin_flip(rho2) -> np.ndarray:
    a, _ = _raw(rho2, 4)
    return _YY @ a.conj() @ _YY


def concurrence(rho2) -> float | np.ndarray:
    """Wootters concurrence lambda1 - lambda2 - lambda3 - lambda4.

    The lambdas are the square roots of the eigenvalues of rho rho~, equal to
    the singular values of sqrt(rho) sqrt(rho~). Taking them as singular
    values keeps small lambdas accurate to round-off; square roots of tiny
    eigenvalues would turn 1e-16 noise into 1e-8 errors.
    """
    a, single = _raw(rho2, 4)
    s = linalg.psd_sqrt(a)
    sv = linalg.singular_values(s @ spin_flip(s))
    c = sv[..., 0] - sv[..., 1] - sv[..., 2] - sv[..., 3]
    return _result(np.clip(c, 0.0, None), single)


def correlation_matrix(rho2) -> np.ndarray:
    """T_ij = Tr(rho sigma_i (x) sigma_j), Pauli order (x, y, z)."""
    a, _ = _raw(rho2, 4)
    # Tr(rho P) = sum_kl rho_kl P_lk
    return np.einsum("...kl,ijlk->...ij", a, _PAULI_PAIRS).real


def bell_m(rho2) -> float | np.ndarray:
    """Sum of the two largest eigenvalues of T^T T (Horodecki criterion)."""
    a, single = _raw(rho2, 4)
    t = correlation_matrix(a)
    u = linalg.eig_hermitian(np.swapaxes(t, -1, -2) @ t)
    return _result(u[..., -1] + u[..., -2], single)


def n_from_m(m) -> float | np.ndarray:
    m = np.asarray(m, dtype=float)
    n = np.clip(2.0 * np.sqrt(np.clip(m, 0.0, None)) - 2.0, 0.0, None)
    return float(n) if n.ndim == 0 else n


def bell_n(rho2) -> float | np.ndarray:
    """Bell nonlocality max(0, 2 sqrt(M) - 2)."""
    return n_from_m(bell_m(rho2))


def _require_x(a: np.ndarray, tol: float = 1e-12) -> None:
    mask = np.ones((4, 4), dtype=bool)
    idx = np.arange(4)
    mask[idx, idx] = False
    mask[idx, 3 - idx] = False
    worst = np.max(np.abs(a[..., mask])) if a.size else 0.0
    if worst >= tol:
        raise ShapeError(f"not an X state: off-X entry of modulus {worst:.3e}")


def x_state_mu(rho2):
    """Eigenvalues (mu1, mu2, mu3) of T^T T for an X-shaped state."""
    a, single = _raw(rho2, 4)
    _require_x(a)
    r14 = np.abs(a[..., 0, 3])
    r23 = np.abs(a[..., 1, 2])
    mu1 = 4.0 * (r14 + r23) ** 2
    mu2 = 4.0 * (r14 - r23) ** 2
    mu3 = (a[..., 0, 0] - a[..., 1, 1] - a[..., 2, 2] + a[..., 3, 3]).real ** 2
    if single:
        return float(mu1), float(mu2), float(mu3)
    return mu1, mu2, mu3


def x_state_bell_n(rho2) -> float | np.ndarray:
    """max(0, B1, B2) with B1 = 2 sqrt(mu1 + mu2) - 2, B2 = 2 sqrt(mu1 + mu3) - 2."""
    mu1, mu2, mu3 = (np.asarray(x) for x in x_state_mu(rho2))
    b1 = 2.0 * np.sqrt(mu1 + mu2) - 2.0
    b2 = 2.0 * np.sqrt(mu1 + mu3) - 2.0
    n = np.maximum(0.0, np.maximum(b1, b2))
    return float(n) if n.ndim == 0 else n


def x_state_concurrence(rho2) -> float | np.ndarray:
    """2 max(0, |rho23| - sqrt(rho11 rho44), |rho14| - sqrt(rho22 rho33))."""
    a, single = _raw(rho2, 4)
    _require_x(a)
    d = np.clip(np.diagonal(a, axis1=-2, axis2=-1).real, 0.0, None)
    c1 = np.abs(a[..., 1, 2]) - np.sqrt(d[..., 0] * d[..., 3])
    c2 = np.abs(a[..., 0, 3]) - np.sqrt(d[..., 1] * d[..., 2])
    return _result(2.0 * np.maximum(0.0, np.maximum(c1, c2)), single)


def profile_arrays(rho2) -> dict[str, np.ndarray]:
    """All five measures for a stack of two-qubit matrices."""
    a, _ = _raw(rho2, 4)
    m = np.asarray(bell_m(a), dtype=float)
    return {
        "d2": np.asarray(coherence_degree_pair(a), dtype=float),
        "concurrence": np.asarray(concurrence(a), dtype=float),
        "m": m,
        "n": np.asarray(n_from_m(m), dtype=float),
        "purity": np.asarray(purity(a), dtype=float),
    }


def profile(rho2) -> ResourceProfile:
    a, single = _raw(rho2, 4)
    if not single:
        raise ShapeError("profile takes one state; use profile_arrays for stacks")
    vals = profile_arrays(a)
    return ResourceProfile(**{k: float(v) for k, v in vals.items()})
