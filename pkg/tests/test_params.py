import math

import pytest

from cksim.params import ModelParams, degree_range, gamma_tail_constant

from oracles import zeta_series


def test_constants_against_series_oracle():
    p = ModelParams(tau=2.5, n=100, seed=0)
    z25 = zeta_series(2.5)
    z15 = zeta_series(1.5)
    assert p.c_norm == pytest.approx(1.0 / z25, rel=1e-9)
    assert p.mu == pytest.approx(z15 / z25, rel=1e-9)


def test_degree_one_probability_value():
    # P(D=1) = 1/zeta(2.5) ~ 0.745442
    p = ModelParams(tau=2.5, n=10, seed=0)
    assert p.c_norm == pytest.approx(0.745442, abs=5e-7)


def test_a_const_closed_forms():
    assert gamma_tail_constant(2.5) == pytest.approx(2.0 * math.sqrt(math.pi), rel=1e-12)
    assert gamma_tail_constant(2.1) == pytest.approx(10.686287021193, rel=1e-10)
    for tau in (2.1, 2.3, 2.5, 2.7, 2.9):
        assert gamma_tail_constant(tau) > 0


@pytest.mark.parametrize("tau", [1.9, 2.0, 3.0, 3.5])
def test_tau_domain_rejected(tau):
    with pytest.raises(ValueError):
        ModelParams(tau=tau, n=100, seed=0)
    with pytest.raises(ValueError):
        gamma_tail_constant(tau)


def test_invalid_n_and_seed():
    with pytest.raises(ValueError):
        ModelParams(tau=2.5, n=0, seed=0)
    with pytest.raises(ValueError):
        ModelParams(tau=2.5, n=10, seed=-1)
    with pytest.raises(ValueError):
        ModelParams(tau=2.5, n=10, seed=2**64)


def test_range_boundaries():
    n = 10**6
    tau = 2.5
    cut = n ** ((tau - 2) / (tau - 1))  # 100 for these values
    assert degree_range(int(cut) - 1, n, tau) == "I"
    # k exactly at the lower boundary belongs to range II
    assert degree_range(int(cut), n, tau) == "II"
    # floor(sqrt(n)) belongs to range II, one more to range III
    assert degree_range(1000, n, tau) == "II"
    assert degree_range(1001, n, tau) == "III"


def test_range_boundary_scale_factor():
    assert degree_range(50, 10**6, 2.5, a_ii=0.4) == "II"
    assert degree_range(39, 10**6, 2.5, a_ii=0.4) == "I"
