"""Closed-form relations between coherence, concurrence, Bell nonlocality and
purity: boundary curves in the (C, D^2) plane, pure-state relations, the
D^2 + C^2 = P identity and the region table."""
from __future__ import annotations

import enum
import math

import numpy as np

from .errors import DomainError
from .measures import ResourceProfile
from .states import Pair

EDGE_TOL = 1e-12


class BoundaryKind(enum.Enum):
    BNBS_LOWER = "bnbs_lower"
    PURE_UPPER = "pure_upper"
    BLBS_HORODECKI = "blbs_horodecki"
    BLBS_LOWER_HALF = "blbs_lower_half"
    PF_BNBS_LOWER = "pf_bnbs_lower"
    PF_PURE_UPPER = "pf_pure_upper"
    PF_BLBS_HORODECKI = "pf_blbs_horodecki"
    PF_BLBS_LOWER_HALF = "pf_blbs_lower_half"
    XXZ_13 = "xxz_13"
    XXZ_12 = "xxz_12"

    @property
    def uses_y(self) -> bool:
        return self.name.startswith("PF_")

    @property
    def noiseless(self) -> "BoundaryKind | None":
        """The Y = 1 counterpart of a PF curve."""
        if not self.uses_y:
            return None
        return BoundaryKind[self.name[3:]]


class RegionLabel(enum.Enum):
    BNBS_ONLY = "BNBS_ONLY"
    BLBS_ONLY = "BLBS_ONLY"
    OUTSIDE = "OUTSIDE"

    def __str__(self):
        return self.value


def boundary_d2(kind: BoundaryKind, c, y: float = 1.0):
    """D^2 on the named boundary curve at concurrence ``c``.

    ``y`` is the phase-flip attenuation (1 - 2p)^2 and only matters for the
    PF_* kinds. ``c`` may be an array.
    """
    kind = BoundaryKind(kind)
    c_arr = np.asarray(c, dtype=float)
    if kind.uses_y and not (0.0 < y <= 1.0):
        raise DomainError(f"y must lie in (0, 1], got {y!r}")
    lo_open = kind in (BoundaryKind.XXZ_13, BoundaryKind.XXZ_12)
    if np.any(c_arr > 1.0) or np.any(c_arr <= 0.0 if lo_open else c_arr < 0.0):
        raise DomainError(f"concurrence outside the domain of {kind.name}: {c!r}")
    if kind is BoundaryKind.PF_BLBS_HORODECKI and np.any(c_arr > y):
        raise DomainError(f"{kind.name} requires c <= y = {y!r}")

    c2 = c_arr * c_arr
    y2 = y * y
    if kind is BoundaryKind.BNBS_LOWER:
        d2 = 1.0 - 1.5 * c2
    elif kind is BoundaryKind.PURE_UPPER:
        d2 = 1.0 - c2
    elif kind is BoundaryKind.BLBS_HORODECKI:
        d2 = (1.0 - c_arr) ** 2
    elif kind is BoundaryKind.BLBS_LOWER_HALF:
        d2 = 0.5 - c2
    elif kind is BoundaryKind.PF_BNBS_LOWER:
        # (2 + Y^2) / (2 Y^2) written so that Y = 1 reproduces 1.5 bit for bit
        d2 = 1.0 - c2 * (1.0 / y2 + 0.5)
    elif kind is BoundaryKind.PF_PURE_UPPER:
        d2 = 1.0 - c2 / y2
    elif kind is BoundaryKind.PF_BLBS_HORODECKI:
        d2 = (1.0 - c_arr / y) ** 2
    elif kind is BoundaryKind.PF_BLBS_LOWER_HALF:
        d2 = 0.5 - c2 / y2
    elif kind is BoundaryKind.XXZ_13:
        root = np.sqrt(np.clip(c2 - c2 * c2, 0.0, None))
        d2 = ((c2 + root) / (2.0 * c2 + root)) ** 2
    else:
        d2 = (13.0 * c2 * c2 - 20.0 * c2 + 8.0) / (2.0 * (c2 - 2.0) ** 2)
    return float(d2) if d2.ndim == 0 else d2


def pure_state_relations(c):
    """(N, D^2) of a two-qubit pure state with concurrence ``c``."""
    c_arr = np.asarray(c, dtype=float)
    if np.any(c_arr < 0.0) or np.any(c_arr > 1.0):
        raise DomainError(f"concurrence must lie in [0, 1], got {c!r}")
    n = 2.0 * np.sqrt(1.0 + c_arr * c_arr) - 2.0
    d2 = 1.0 - c_arr * c_arr
    if n.ndim == 0:
        return float(n), float(d2)
    return n, d2


def pure_n_from_d2(d2):
    """N = 2 sqrt(2 - D^2) - 2 on the pure-state curve."""
    return 2.0 * np.sqrt(2.0 - np.asarray(d2, dtype=float)) - 2.0


def pure_relation_residual(n, d2):
    """D^2 + 2((N + 2)/(2 sqrt 2))^2 - 2, zero on the pure-state curve."""
    n = np.asarray(n, dtype=float)
    return np.asarray(d2, dtype=float) + 2.0 * ((n + 2.0) / (2.0 * math.sqrt(2.0))) ** 2 - 2.0


def identity_defect(pr) -> float:
    """Signed D^2 + C^2 - P; zero on W-family pairs."""
    if isinstance(pr, ResourceProfile):
        return pr.d2 + pr.concurrence ** 2 - pr.purity
    return np.asarray(pr["d2"]) + np.asarray(pr["concurrence"]) ** 2 - np.asarray(pr["purity"])


def _classify(c: float, d2: float) -> RegionLabel:
    tol = EDGE_TOL
    if not (tol < c <= 1.0 + tol):
        return RegionLabel.OUTSIDE
    c2 = c * c
    bnbs_lo = 1.0 - 1.5 * c2
    upper = 1.0 - c2
    if bnbs_lo + tol < d2 <= upper + tol:
        return RegionLabel.BNBS_ONLY
    if c <= 0.8 + tol:
        floor = 0.5 - c2 if c <= 0.5 + tol else (1.0 - c) ** 2
        if floor - tol <= d2 <= bnbs_lo + tol:
            return RegionLabel.BLBS_ONLY
    return RegionLabel.OUTSIDE


def classify_region(c, d2):
    """Region of the (C, D^2) plane per the BNBS/BLBS table.

    Bands are half-open as tabulated (strict lower edge, inclusive upper edge)
    with ``EDGE_TOL`` slack. Points in no band, including C = 0, are OUTSIDE.
    Array inputs give an object array of labels.
    """
    if isinstance(c, float) and isinstance(d2, float):
        return _classify(c, d2)
    if np.ndim(c) == 0 and np.ndim(d2) == 0:
        return _classify(float(c), float(d2))
    cb, db = np.broadcast_arrays(np.asarray(c, dtype=float), np.asarray(d2, dtype=float))
    out = np.empty(cb.shape, dtype=object)
    for idx in np.ndindex(cb.shape):
        out[idx] = _classify(float(cb[idx]), float(db[idx]))
    return out


# ----------------------------------------------------------------------------
# closed forms on the W family, optionally after the phase-flip channel


def _pair_squares(squares, pair):
    sq = np.asarray(squares, dtype=float)
    a, b, g = sq[..., 0], sq[..., 1], sq[..., 2]
    pair = Pair.parse(pair)
    if pair is Pair.P13:
        return a, g, b
    if pair is Pair.P12:
        return b, g, a
    return a, b, g


def w_pair_closed_form(squares, pair, y: float = 1.0) -> dict:
    """Closed-form (d2, concurrence, n, purity) for a reduced W pair.

    ``squares`` holds (alpha^2, beta^2, gamma^2), possibly stacked as
    ``(..., 3)``; ``y`` is the phase-flip attenuation (1 for no noise).
    """
    s, u, o = _pair_squares(squares, pair)
    y2 = y * y
    d2 = 2.0 * (s * s - s + u * u - u) + 1.0
    conc = 2.0 * np.sqrt(y2 * s * u)
    b1 = 4.0 * np.sqrt(2.0 * y2 * s * u) - 2.0
    b2 = 2.0 * np.sqrt(4.0 * y2 * s * u + (2.0 * s + 2.0 * u - 1.0) ** 2) - 2.0
    n = np.maximum(0.0, np.maximum(b1, b2))
    pur = s * s + u * u + o * o + 2.0 * y2 * s * u
    return {"d2": d2, "concurrence": conc, "n": n, "purity": pur}


def pf_defect(squares, pair, y: float):
    """D^2 + C^2 - P = 2 s u (Y^2 - 1) for the phase-flipped W pair."""
    s, u, _ = _pair_squares(squares, pair)
    return 2.0 * s * u * (y * y - 1.0)
