"""Three-site-block renormalization of the spin-1/2 Heisenberg XXZ chain.

Spins map to qubits as up -> |0>, down -> |1>.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DomainError, ParameterError
from .measures import ResourceProfile
from .states import DensityMatrix, Pair, projector


@dataclass(frozen=True)
class XXZParams:
    delta: float
    j: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.delta) and self.delta >= 0.0):
            raise ParameterError(f"anisotropy delta must be >= 0, got {self.delta!r}")
        if not (math.isfinite(self.j) and self.j > 0.0):
            raise ParameterError(f"exchange constant J must be > 0, got {self.j!r}")


@dataclass(frozen=True)
class RGStep:
    j: float
    delta: float
    q: float
    e0: float


def q_of_delta(delta: float) -> float:
    """q = -(delta + sqrt(8 + delta^2)) / 2."""
    if not delta >= 0.0:
        raise ParameterError(f"anisotropy delta must be >= 0, got {delta!r}")
    return -(delta + math.hypot(math.sqrt(8.0), delta)) / 2.0


def ground_energy(params: XXZParams) -> float:
    """E0 = J q / 2 of the three-site block."""
    return params.j * q_of_delta(params.delta) / 2.0


def ground_ket(delta: float, primed: bool = False) -> np.ndarray:
    q = q_of_delta(delta)
    psi = np.zeros(8, dtype=complex)
    if primed:
        # |up dn dn> + q|dn up dn> + |dn dn up>
        psi[3], psi[5], psi[6] = 1.0, q, 1.0
    else:
        # |up up dn> + q|up dn up> + |dn up up>
        psi[1], psi[2], psi[4] = 1.0, q, 1.0
    return psi / math.hypot(1.0, q, 1.0)


def ground_state(delta: float, primed: bool = False) -> DensityMatrix:
    return DensityMatrix(projector(ground_ket(delta, primed)), 3)


def block_hamiltonian(params: XXZParams) -> np.ndarray:
    """Open three-site block (J/4) sum_k (XX + YY + delta ZZ) on bonds (1,2), (2,3)."""
    ops = [linalg.I2] * 3
    h = np.zeros((8, 8), dtype=complex)
    for k in range(2):
        for pauli, weight in zip(linalg.PAULIS, (1.0, 1.0, params.delta)):
            term = list(ops)
            term[k] = pauli
            term[k + 1] = pauli
            h += weight * linalg.kron(*term)
    return params.j / 4.0 * h


def rg_step(params: XXZParams) -> XXZParams:
    """J' = J (2q / (2 + q^2))^2,  delta' = delta q^2 / 4."""
    q = q_of_delta(params.delta)
    # for delta >> 1 the flow goes like delta^3 / 4 and leaves the double range
    try:
        delta = params.delta * (q / 2.0) ** 2
        j = params.j * (2.0 * q / (2.0 + q * q)) ** 2
    except OverflowError:
        delta, j = math.inf, 0.0
    if not (math.isfinite(delta) and j > 0.0):
        raise DomainError(f"RG step from delta={params.delta!r}, J={params.j!r} overflows double precision")
    return XXZParams(delta=delta, j=j)


def rg_flow(params: XXZParams, n_steps: int) -> list[RGStep]:
    if n_steps < 1:
        raise ParameterError(f"n_steps must be >= 1, got {n_steps}")
    trace = []
    cur = params
    for i in range(n_steps + 1):
        trace.append(RGStep(cur.j, cur.delta, q_of_delta(cur.delta), ground_energy(cur)))
        if i < n_steps:
            cur = rg_step(cur)
    return trace


def xxz_pair_profile(delta: float, sel) -> ResourceProfile:
    """Closed-form profile of a reduced pair of the block ground state."""
    sel = Pair.parse(sel)
    q = q_of_delta(delta)
    q2 = q * q
    den = 2.0 + q2
    if sel is Pair.P13:
        c = 2.0 / den
        d2 = q2 * q2 / den ** 2
        n = max(0.0, 2.0 * math.sqrt(q2 * q2 - 4.0 * q2 + 8.0) / den - 2.0, 4.0 * math.sqrt(2.0) / den - 2.0)
        p = (4.0 + q2 * q2) / den ** 2
        # mu1 = mu2 = 4/den^2, mu3 = (q^2 - 2)^2/den^2
        m = 4.0 / den ** 2 + max(4.0, (q2 - 2.0) ** 2) / den ** 2
    else:
        c = 2.0 * math.sqrt(q2) / den
        d2 = (2.0 - 2.0 * q2 + q2 * q2) / den ** 2
        n = max(0.0, 4.0 * math.sqrt(2.0 * q2) / den - 2.0, 2.0 * math.sqrt(q2 * q2 + 4.0 * q2) / den - 2.0)
        p = (2.0 + 2.0 * q2 + q2 * q2) / den ** 2
        # mu1 = mu2 = 4 q^2/den^2, mu3 = q^4/den^2
        m = 4.0 * q2 / den ** 2 + max(4.0 * q2, q2 * q2) / den ** 2
    return ResourceProfile(d2=d2, concurrence=c, m=m, n=n, purity=p)
