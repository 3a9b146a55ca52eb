"""Phase-flip decoherence acting on every qubit of a tripartite state."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ParameterError
from .measures import ResourceProfile, profile
from .states import PAIRS, DensityMatrix, Pair, WParams, reduce_pair, w_state


@dataclass(frozen=True)
class PFParams:
    p: float

    def __post_init__(self):
        _check_p(self.p)

    @classmethod
    def from_decay(cls, eta: float, t: float) -> "PFParams":
        """p = 1 - exp(-eta t)."""
        if eta < 0 or t < 0:
            raise ParameterError(f"decay rate and time must be non-negative, got eta={eta}, t={t}")
        return cls(-math.expm1(-eta * t))

    @property
    def y(self) -> float:
        return y_factor(self.p)


def _check_p(p) -> None:
    if not (0.0 <= p <= 1.0):
        raise ParameterError(f"p must lie in [0, 1], got {p!r}")


def y_factor(p: float) -> float:
    """Attenuation (1 - 2p)^2 of two-site coherences."""
    _check_p(p)
    return (1.0 - 2.0 * p) ** 2


def pf_kraus(p: float) -> tuple[np.ndarray, np.ndarray]:
    """Kraus pair (sqrt(p) I, sqrt(1 - p) sigma_z)."""
    _check_p(p)
    return math.sqrt(p) * linalg.I2, math.sqrt(1.0 - p) * linalg.SZ


def _raw3(rho3) -> np.ndarray:
    a = rho3.matrix if isinstance(rho3, DensityMatrix) else np.asarray(rho3, dtype=complex)
    if a.shape[-2:] != (8, 8):
        raise ParameterError(f"expected a 3-qubit state, got shape {a.shape}")
    return a


def apply_pf_each_qubit(rho3, p: float):
    """Independent phase-flip channel on each of the three qubits (8 Kraus terms).

    Accepts a DensityMatrix (returns one) or a raw stack ``(..., 8, 8)``.
    """
    ks = pf_kraus(p)
    a = _raw3(rho3)
    out = np.zeros_like(a)
    for e1, e2, e3 in itertools.product(ks, repeat=3):
        k = linalg.kron(e1, e2, e3)
        out = out + k @ a @ k.conj().T
    if isinstance(rho3, DensityMatrix):
        return DensityMatrix(out, 3)
    return out


def apply_pf_correlated(rho3, p: float) -> np.ndarray:
    """Diagnostic: the shared-index sum  sum_i (E_i x E_i x E_i) rho (...)^dagger.

    This map is not trace preserving (its weight is p^3 + (1-p)^3) and it does
    not attenuate W-family coherences; it is exposed only for comparison with
    :func:`apply_pf_each_qubit`. Returns a raw matrix.
    """
    a = _raw3(rho3)
    out = np.zeros_like(a)
    for e in pf_kraus(p):
        k = linalg.kron(e, e, e)
        out = out + k @ a @ k.conj().T
    return out


def pf_pair_profiles(w: WParams, p: float) -> dict[Pair, ResourceProfile]:
    """Profiles of the three reduced pairs of the PF-evolved W state."""
    rho = apply_pf_each_qubit(w_state(w), p)
    return {pair: profile(reduce_pair(rho, pair)) for pair in PAIRS}
