"""Coherence, concurrence, Bell nonlocality and purity of two-qubit states.

Dense numerics for reduced W-type states, the Horodecki and minimal-coherence
families, phase-flip noise and the renormalized XXZ chain.
"""
from .channels import PFParams, apply_pf_each_qubit, pf_pair_profiles, y_factor
from .errors import (
    ConvergenceError,
    DomainError,
    InvariantError,
    ParameterError,
    PSDError,
    QRelationsError,
    ShapeError,
    SizeError,
    SymmetryError,
)
from .measures import (
    ResourceProfile,
    bell_m,
    bell_n,
    coherence_degree_pair,
    concurrence,
    correlation_matrix,
    profile,
    purity,
)
from .relations import BoundaryKind, RegionLabel, boundary_d2, classify_region, identity_defect
from .states import (
    PAIRS,
    DensityMatrix,
    Pair,
    WParams,
    bell_state,
    horodecki_state,
    min_coherence_state,
    reduce_pair,
    w_state,
)
from .xxz import XXZParams, ground_state, rg_flow, rg_step

__version__ = "0.1.0"

__all__ = [
    "PFParams",
    "apply_pf_each_qubit",
    "pf_pair_profiles",
    "y_factor",
    "ConvergenceError",
    "DomainError",
    "InvariantError",
    "ParameterError",
    "PSDError",
    "QRelationsError",
    "ShapeError",
    "SizeError",
    "SymmetryError",
    "ResourceProfile",
    "bell_m",
    "bell_n",
    "coherence_degree_pair",
    "concurrence",
    "correlation_matrix",
    "profile",
    "purity",
    "BoundaryKind",
    "RegionLabel",
    "boundary_d2",
    "classify_region",
    "identity_defect",
    "PAIRS",
    "DensityMatrix",
    "Pair",
    "WParams",
    "bell_state",
    "horodecki_state",
    "min_coherence_state",
    "reduce_pair",
    "w_state",
    "XXZParams",
    "ground_state",
    "rg_flow",
    "rg_step",
]
