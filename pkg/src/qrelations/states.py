"""State families: W-type tripartite states, Horodecki states, the
minimal-coherence family, and the text format used to exchange matrices."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import InvariantError, ParameterError, ShapeError

TRACE_TOL = 1e-12
PSD_TOL = 1e-10
NORM_TOL = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    """Validated density matrix of one to three qubits.

    The stored array is a read-only copy, symmetrized to be exactly Hermitian.
    """

    matrix: np.ndarray = field(repr=False)
    qubit_count: int

    def __post_init__(self):
        a = np.asarray(self.matrix, dtype=complex)
        n = self.qubit_count
        if n not in (1, 2, 3):
            raise ShapeError(f"qubit_count must be 1..3, got {n}")
        if a.shape != (2 ** n, 2 ** n):
            raise ShapeError(f"expected {2 ** n}x{2 ** n} matrix, got {a.shape}")
        if not np.all(np.isfinite(a)):
            raise InvariantError("density matrix has non-finite entries")
        asym = np.max(np.abs(a - a.conj().T))
        if asym > linalg.HERMITIAN_TOL:
            raise InvariantError(f"not Hermitian: max |rho - rho^dagger| = {asym:.3e}")
        a = 0.5 * (a + a.conj().T)
        tr = np.trace(a).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvariantError(f"trace is {tr!r}, expected 1")
        wmin = linalg.eig_hermitian(a)[0]
        if wmin < -PSD_TOL:
            raise InvariantError(f"not positive semidefinite: min eigenvalue {wmin:.3e}")
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)

    @classmethod
    def from_matrix(cls, m) -> "DensityMatrix":
        a = np.asarray(m, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ShapeError(f"expected a square matrix, got shape {a.shape}")
        n = int(round(math.log2(a.shape[0]))) if a.shape[0] > 0 else 0
        if 2 ** n != a.shape[0]:
            raise ShapeError(f"dimension {a.shape[0]} is not a power of two")
        return cls(a, n)

    @classmethod
    def from_ket(cls, ket) -> "DensityMatrix":
        psi = np.asarray(ket, dtype=complex).ravel()
        return cls.from_matrix(np.outer(psi, psi.conj()))

    @property
    def dim(self) -> int:
        return 2 ** self.qubit_count

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


@dataclass(frozen=True)
class WParams:
    """Real non-negative amplitudes on |001>, |010>, |100>."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        amps = (self.alpha, self.beta, self.gamma)
        if not all(math.isfinite(x) for x in amps):
            raise ParameterError(f"non-finite amplitude in {amps}")
        if min(amps) < 0:
            raise ParameterError(f"amplitudes must be non-negative, got {amps}")
        norm = sum(x * x for x in amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ParameterError(f"alpha^2 + beta^2 + gamma^2 = {norm!r}, expected 1")

    @classmethod
    def from_squares(cls, s_alpha: float, s_beta: float, s_gamma: float) -> "WParams":
        return cls(math.sqrt(s_alpha), math.sqrt(s_beta), math.sqrt(s_gamma))

    def squares(self) -> tuple[float, float, float]:
        return self.alpha ** 2, self.beta ** 2, self.gamma ** 2


class Pair(enum.Enum):
    """Qubit pair, labelled 1..3 as in the ket |q1 q2 q3>."""

    P12 = 12
    P13 = 13
    P23 = 23

    @classmethod
    def parse(cls, value) -> "Pair":
        if isinstance(value, Pair):
            return value
        try:
            return cls(int(str(value).strip()))
        except ValueError:
            raise ParameterError(f"pair must be one of 12, 13, 23; got {value!r}") from None

    @property
    def keep(self) -> tuple[int, int]:
        """Zero-based qubit indices retained by the partial trace."""
        return {12: (0, 1), 13: (0, 2), 23: (1, 2)}[self.value]

    def __str__(self):
        return str(self.value)


PAIRS = (Pair.P12, Pair.P13, Pair.P23)

# basis indices of |001>, |010>, |100>
_W_INDEX = (1, 2, 4)


def w_ket(alpha, beta, gamma) -> np.ndarray:
    """State vector(s) alpha|001> + beta|010> + gamma|100>; broadcasts over arrays."""
    alpha, beta, gamma = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (alpha, beta, gamma)))
    psi = np.zeros(alpha.shape + (8,), dtype=complex)
    psi[..., 1] = alpha
    psi[..., 2] = beta
    psi[..., 4] = gamma
    return psi


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return psi[..., :, None] * psi[..., None, :].conj()


def w_state(p: WParams) -> DensityMatrix:
    """Rank-one projector onto the W-type state with amplitudes ``p``."""
    if not isinstance(p, WParams):
        p = WParams(*p)
    return DensityMatrix(projector(w_ket(p.alpha, p.beta, p.gamma)), 3)


def w_states(squares: np.ndarray) -> np.ndarray:
    """Stack of W projectors from an ``(m, 3)`` array of squared amplitudes.

    No validation; used by the ensemble scans.
    """
    amps = np.sqrt(np.clip(np.asarray(squares, dtype=float), 0.0, None))
    return projector(w_ket(amps[:, 0], amps[:, 1], amps[:, 2]))


def _raw(rho) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)


def reduce_pair(rho3, sel) -> DensityMatrix | np.ndarray:
    """Two-qubit marginal on the selected pair, lower label first.

    Returns a DensityMatrix for DensityMatrix input, a raw stack otherwise.
    """
    sel = Pair.parse(sel)
    if isinstance(rho3, DensityMatrix):
        if rho3.qubit_count != 3:
            raise ShapeError(f"reduce_pair needs a 3-qubit state, got {rho3.qubit_count}")
        return DensityMatrix(linalg.partial_trace(rho3.matrix, 3, sel.keep), 2)
    return linalg.partial_trace(rho3, 3, sel.keep)


PHI_PLUS = np.array([0, 1, 1, 0], dtype=complex) / math.sqrt(2)  # (|01> + |10>)/sqrt2


def bell_state() -> DensityMatrix:
    """|phi+><phi+| with |phi+> = (|01> + |10>)/sqrt2, the convention used throughout."""
    return DensityMatrix(projector(PHI_PLUS), 2)


def horodecki_matrix(eps) -> np.ndarray:
    eps = np.asarray(eps, dtype=float)
    rho = np.zeros(eps.shape + (4, 4), dtype=complex)
    rho[..., 0, 0] = 1.0 - eps
    rho[..., 1, 1] = eps / 2
    rho[..., 2, 2] = eps / 2
    rho[..., 1, 2] = eps / 2
    rho[..., 2, 1] = eps / 2
    return rho


def horodecki_state(eps: float) -> DensityMatrix:
    """eps |phi+><phi+| + (1 - eps) |00><00|."""
    if not 0.0 <= eps <= 1.0:
        raise ParameterError(f"eps must lie in [0, 1], got {eps!r}")
    return DensityMatrix(horodecki_matrix(eps), 2)


def min_coherence_matrix(a, y=1.0) -> np.ndarray:
    a, y = np.broadcast_arrays(np.asarray(a, dtype=float), np.asarray(y, dtype=float))
    off = y * np.sqrt(np.clip(a / 2 - a * a, 0.0, None))
    rho = np.zeros(a.shape + (4, 4), dtype=complex)
    rho[..., 0, 0] = 0.5
    rho[..., 1, 1] = 0.5 - a
    rho[..., 2, 2] = a
    rho[..., 1, 2] = off
    rho[..., 2, 1] = off
    return rho


def min_coherence_state(a: float, y: float = 1.0) -> DensityMatrix:
    """Family sitting on the D^2 + C^2 = 1/2 floor; ``y`` scales the coherence."""
    if not 0.0 <= a <= 0.5:
        raise ParameterError(f"a must lie in [0, 1/2], got {a!r}")
    if not 0.0 <= y <= 1.0:
        raise ParameterError(f"y must lie in [0, 1], got {y!r}")
    return DensityMatrix(min_coherence_matrix(a, y), 2)


def is_x_shaped(rho, tol: float = 1e-12) -> bool:
    a = _raw(rho)
    mask = np.ones((4, 4), dtype=bool)
    mask[np.arange(4), np.arange(4)] = False
    mask[np.arange(4), 3 - np.arange(4)] = False
    return bool(np.all(np.abs(a[..., mask]) < tol))


# ----------------------------------------------------------------------------
# text format: one row per line, entries ``re+imj`` separated by single spaces


def _fmt_complex(z: complex) -> str:
    re, im = float(z.real), float(z.imag)
    sign = "-" if math.copysign(1.0, im) < 0 else "+"
    return f"{re!r}{sign}{abs(im)!r}j"


def format_matrix(m) -> str:
    a = _raw(m)
    return "".join(" ".join(_fmt_complex(z) for z in row) + "\n" for row in a)


def parse_matrix(text: str) -> np.ndarray:
    """Parse the matrix text format; raises ValueError on malformed input."""
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows:
        raise ValueError("empty matrix")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError(f"matrix is not square: row lengths {[len(r) for r in rows]}")
    if n & (n - 1):
        raise ValueError(f"row count {n} is not a power of two")
    out = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        for j, tok in enumerate(row):
            try:
                z = complex(tok)
            except ValueError:
                raise ValueError(f"bad entry {tok!r} at row {i + 1}, column {j + 1}") from None
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise ValueError(f"non-finite entry {tok!r} at row {i + 1}, column {j + 1}")
            out[i, j] = z
    return out


def read_matrix(path) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def write_matrix(path, m) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_matrix(m))
