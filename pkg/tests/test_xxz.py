import math

import numpy as np
import pytest

from qrelations import linalg
from qrelations.errors import DomainError, ParameterError
from qrelations.measures import profile
from qrelations.states import PAIRS, Pair, reduce_pair
from qrelations.xxz import (
    XXZParams,
    block_hamiltonian,
    ground_energy,
    ground_ket,
    ground_state,
    q_of_delta,
    rg_flow,
    rg_step,
    xxz_pair_profile,
)

DELTAS = np.linspace(0.0, 10.0, 101)


def test_q_examples():
    assert q_of_delta(0.0) == pytest.approx(-math.sqrt(2), abs=1e-15)
    assert q_of_delta(1.0) == -2.0
    assert q_of_delta(7.0) == pytest.approx(-(7 + math.sqrt(57)) / 2, abs=1e-15)
    assert q_of_delta(7.0) == pytest.approx(-7.2749, abs=1e-4)
    with pytest.raises(ParameterError):
        q_of_delta(-0.1)


def test_ground_energy_examples():
    assert ground_energy(XXZParams(1.0)) == -1.0
    assert ground_energy(XXZParams(0.0, 2.0)) == pytest.approx(-math.sqrt(2), abs=1e-15)
    assert ground_energy(XXZParams(7.0)) == pytest.approx(-(7 + math.sqrt(57)) / 4, abs=1e-15)


def test_ground_ket_amplitudes():
    psi = ground_ket(1.0)
    assert psi[[1, 2, 4]] == pytest.approx(np.array([1, -2, 1]) / math.sqrt(6), abs=1e-15)
    psi = ground_ket(0.0)
    assert psi[[1, 2, 4]] == pytest.approx(np.array([1, -math.sqrt(2), 1]) / 2, abs=1e-15)


@pytest.mark.parametrize("delta", [0.0, 0.5, 1.0, 2.5, 7.0])
@pytest.mark.parametrize("primed", [False, True])
def test_ground_state_eigen_check(delta, primed):
    params = XXZParams(delta, 1.3)
    h = block_hamiltonian(params)
    psi = ground_ket(delta, primed)
    assert np.max(np.abs(h @ psi - ground_energy(params) * psi)) <= 1e-10
    assert linalg.eig_hermitian(h)[0] == pytest.approx(ground_energy(params), abs=1e-12)


def test_primed_variant_same_profiles():
    for delta in (0.0, 1.0, 4.0):
        a, b = ground_state(delta), ground_state(delta, primed=True)
        for pair in PAIRS:
            pa, pb = profile(reduce_pair(a, pair)), profile(reduce_pair(b, pair))
            for key, val in pa.to_dict().items():
                assert getattr(pb, key) == pytest.approx(val, abs=1e-12)


def test_spin_flip_relabeling_invariance():
    flip = linalg.kron(linalg.SX, linalg.SX, linalg.SX)
    rho = ground_state(2.0).matrix
    flipped = flip @ rho @ flip
    for pair in PAIRS:
        pa, pb = profile(reduce_pair(rho, pair)), profile(reduce_pair(flipped, pair))
        for key, val in pa.to_dict().items():
            assert getattr(pb, key) == pytest.approx(val, abs=1e-12)


def test_rg_step_examples():
    fixed = rg_step(XXZParams(1.0))
    assert (fixed.j, fixed.delta) == pytest.approx((4 / 9, 1.0), abs=1e-15)
    free = rg_step(XXZParams(0.0))
    assert (free.j, free.delta) == pytest.approx((0.5, 0.0), abs=1e-15)
    away = rg_step(XXZParams(2.0))
    assert away.delta == pytest.approx((2 + math.sqrt(12)) ** 2 / 8, abs=1e-14)
    assert away.delta == pytest.approx(3.732, abs=1e-3)


def test_rg_fixed_points_exact():
    assert rg_step(XXZParams(1.0)).delta == 1.0
    assert rg_step(XXZParams(0.0)).delta == 0.0


def test_rg_flow_examples():
    assert [s.delta for s in rg_flow(XXZParams(1.0), 5)] == [1.0] * 6
    js = [s.j for s in rg_flow(XXZParams(0.0), 3)]
    assert js == pytest.approx([1.0, 0.5, 0.25, 0.125], abs=1e-15)
    # delta' ~ delta^3 / 4 for large delta: from 1.5 the eighth step is the
    # last one representable as a double
    ds = [s.delta for s in rg_flow(XXZParams(1.5), 8)]
    assert all(b > a for a, b in zip(ds, ds[1:]))
    assert ds[-1] > 1e244
    with pytest.raises(DomainError):
        rg_flow(XXZParams(1.5), 10)
    ds = [s.delta for s in rg_flow(XXZParams(0.5), 10)]
    assert all(b < a for a, b in zip(ds, ds[1:]))
    with pytest.raises(ParameterError):
        rg_flow(XXZParams(1.0), 0)


def test_pair_profile_examples():
    p13 = xxz_pair_profile(1.0, 13)
    assert (p13.concurrence, p13.d2, p13.purity, p13.n) == pytest.approx((1 / 3, 4 / 9, 5 / 9, 0.0), abs=1e-12)
    p12 = xxz_pair_profile(1.0, 12)
    assert (p12.concurrence, p12.d2, p12.purity, p12.n) == pytest.approx((2 / 3, 5 / 18, 13 / 18, 0.0), abs=1e-12)
    p0 = xxz_pair_profile(0.0, 13)
    assert (p0.concurrence, p0.d2, p0.purity) == pytest.approx((0.5, 0.25, 0.5), abs=1e-12)


@pytest.mark.parametrize("delta", DELTAS)
def test_closed_forms_match_generic(delta):
    rho = ground_state(float(delta))
    for pair in (Pair.P13, Pair.P12):
        got = profile(reduce_pair(rho, pair))
        ref = xxz_pair_profile(float(delta), pair)
        for key, val in ref.to_dict().items():
            assert getattr(got, key) == pytest.approx(val, abs=1e-10)
        assert got.d2 + got.concurrence ** 2 - got.purity == pytest.approx(0.0, abs=1e-10)


def test_params_validation():
    with pytest.raises(ParameterError):
        XXZParams(-1.0)
    with pytest.raises(ParameterError):
        XXZParams(1.0, 0.0)
