"""Family scans: parameter ensembles -> rows of measured resources."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import sampling
from .channels import apply_pf_each_qubit, y_factor
from .errors import ParameterError
from .measures import profile_arrays
from .relations import classify_region
from .states import PAIRS, Pair, horodecki_matrix, min_coherence_matrix, projector, reduce_pair, w_states
from .xxz import ground_ket, q_of_delta

CHUNK = 8192
COLUMNS = ("family", "pair", "p1", "p2", "p3", "noise", "C", "D2", "N", "P", "region")


class Family(enum.Enum):
    W = "W"
    W_PF = "W_PF"
    HORODECKI = "HORODECKI"
    MIN_COH = "MIN_COH"
    XXZ = "XXZ"

    @classmethod
    def parse(cls, value: str) -> "Family":
        key = value.strip().upper().replace("-", "_")
        aliases = {"WPF": "W_PF", "MINCOH": "MIN_COH", "H": "HORODECKI"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ParameterError(f"unknown family {value!r}") from None


DEFAULT_RANGE = {
    Family.HORODECKI: (0.0, 1.0),
    Family.MIN_COH: (0.0, 0.5),
    Family.XXZ: (0.0, 10.0),
}


@dataclass(frozen=True)
class ScanSpec:
    family: Family
    samples: int
    seed: int = 0
    pair: Pair | None = None
    p: float = 0.0
    lo: float | None = None
    hi: float | None = None
    grid: bool = False

    def __post_init__(self):
        if self.samples < 1:
            raise ParameterError(f"sample count must be >= 1, got {self.samples}")
        if not 0 <= self.seed <= sampling.SEED_MAX:
            raise ParameterError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not 0.0 <= self.p <= 1.0:
            raise ParameterError(f"noise strength p must lie in [0, 1], got {self.p}")
        if self.family in DEFAULT_RANGE:
            lo, hi = self.param_range
            dlo, dhi = DEFAULT_RANGE[self.family]
            if self.family is Family.XXZ:
                dhi = float("inf")
            if not (dlo <= lo <= hi <= dhi):
                raise ParameterError(f"range [{lo}, {hi}] outside the {self.family.value} domain")

    @property
    def param_range(self) -> tuple[float, float]:
        dlo, dhi = DEFAULT_RANGE.get(self.family, (0.0, 1.0))
        return (dlo if self.lo is None else self.lo, dhi if self.hi is None else self.hi)

    @property
    def pairs(self) -> tuple[Pair, ...]:
        return PAIRS if self.pair is None else (self.pair,)


def _fmt(x) -> str:
    if x is None:
        return ""
    return repr(float(x))


def _one_param(spec: ScanSpec, rng) -> np.ndarray:
    lo, hi = spec.param_range
    if spec.grid:
        return sampling.grid(lo, hi, spec.samples)
    return sampling.uniform(rng, lo, hi, spec.samples)


def _measure_rows(family, pair_label, params, noise, stack):
    prof = profile_arrays(stack)
    cols = [prof[k].tolist() for k in ("concurrence", "d2", "n", "purity")]
    noise_s = _fmt(noise)
    rows = []
    for k, (c, d2, n, pur) in enumerate(zip(*cols)):
        rows.append((
            family,
            pair_label,
            *(_fmt(v) for v in params[k]),
            noise_s,
            repr(c),
            repr(d2),
            repr(n),
            repr(pur),
            str(classify_region(c, d2)),
        ))
    return rows


def iter_rows(spec: ScanSpec):
    """Yield CSV rows (tuples of strings) in sample-index order.

    Three-qubit families yield one row per selected pair for each sample.
    """
    rng = sampling.make_rng(spec.seed)
    fam = spec.family
    if fam in (Family.W, Family.W_PF):
        squares = sampling.simplex_squares(rng, spec.samples)
        noise = spec.p if fam is Family.W_PF else 0.0
        for start in range(0, spec.samples, CHUNK):
            sq = squares[start:start + CHUNK]
            amps = np.sqrt(sq).tolist()
            rho = w_states(sq)
            if fam is Family.W_PF:
                rho = apply_pf_each_qubit(rho, spec.p)
            per_pair = [
                _measure_rows(fam.value, str(pair), amps, noise, reduce_pair(rho, pair)) for pair in spec.pairs
            ]
            for k in range(sq.shape[0]):
                for rows in per_pair:
                    yield rows[k]
        return

    values = _one_param(spec, rng)
    for start in range(0, spec.samples, CHUNK):
        v = values[start:start + CHUNK]
        if fam is Family.HORODECKI:
            params = [(x, None, None) for x in v]
            yield from _measure_rows(fam.value, "", params, 0.0, horodecki_matrix(v))
        elif fam is Family.MIN_COH:
            y = y_factor(spec.p)
            params = [(x, y, None) for x in v]
            yield from _measure_rows(fam.value, "", params, spec.p, min_coherence_matrix(v, y))
        else:
            kets = np.array([ground_ket(float(d)) for d in v])
            rho = projector(kets)
            params = [(float(d), q_of_delta(float(d)), None) for d in v]
            per_pair = [
                _measure_rows(fam.value, str(pair), params, None, reduce_pair(rho, pair)) for pair in spec.pairs
            ]
            for k in range(len(v)):
                for rows in per_pair:
                    yield rows[k]
