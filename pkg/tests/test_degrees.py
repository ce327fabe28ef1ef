import numpy as np
import pytest
from scipy import stats

from cksim.degrees import DegreeSequence, degree_sum_typical, sample_degrees
from cksim.params import ModelParams
from cksim.rng import replica_stream


def test_sample_is_deterministic():
    p = ModelParams(tau=2.5, n=5000, seed=99)
    a = sample_degrees(p, replica_stream(p.seed, 0))
    b = sample_degrees(p, replica_stream(p.seed, 0))
    assert np.array_equal(a.degrees, b.degrees)
    assert a.l_n == b.l_n and a.d_max == b.d_max
    c = sample_degrees(p, replica_stream(p.seed, 1))
    assert not np.array_equal(a.degrees, c.degrees)


def test_degrees_positive_and_sum_even():
    p = ModelParams(tau=2.2, n=4001, seed=3)
    for r in range(5):
        degs = sample_degrees(p, replica_stream(p.seed, r))
        assert degs.degrees.min() >= 1
        assert degs.l_n % 2 == 0
        assert degs.l_n == degs.degrees.sum()
        assert degs.d_max == degs.degrees.max()


def test_parity_fix_increments_last_entry():
    raw = np.array([1, 1, 1], dtype=np.int64)  # odd sum
    degs = DegreeSequence.from_raw(raw)
    assert degs.parity_fixed
    assert degs.degrees[-1] == 2
    assert list(degs.degrees[:-1]) == [1, 1]
    assert degs.l_n == 4

    even = DegreeSequence.from_raw(np.array([2, 1, 1], dtype=np.int64))
    assert not even.parity_fixed
    assert list(even.degrees) == [2, 1, 1]


def test_degree_one_frequency():
    # empirical frequency of degree 1 over 1e6 draws within 3 standard errors
    # of 1/zeta(2.5) ~ 0.745442
    p = ModelParams(tau=2.5, n=10**6, seed=17)
    degs = sample_degrees(p, replica_stream(p.seed, 0))
    raw = degs.degrees.copy()
    if degs.parity_fixed:
        raw[-1] -= 1
    freq = np.mean(raw == 1)
    target = 0.745442
    se = np.sqrt(target * (1 - target) / p.n)
    assert abs(freq - target) <= 3 * se


def test_chi_square_goodness_of_fit():
    # degrees 1..20 plus the remainder bucket, 1e6 draws, significance 0.001
    p = ModelParams(tau=2.5, n=10**6, seed=23)
    degs = sample_degrees(p, replica_stream(p.seed, 0))
    raw = degs.degrees.copy()
    if degs.parity_fixed:
        raw[-1] -= 1
    ks = np.arange(1, 21, dtype=np.float64)
    probs = ks**-p.tau * p.c_norm
    expected = np.append(probs, 1.0 - probs.sum()) * p.n
    observed = np.array(
        [(raw == k).sum() for k in range(1, 21)] + [(raw > 20).sum()],
        dtype=np.float64,
    )
    chi2 = ((observed - expected) ** 2 / expected).sum()
    crit = stats.chi2.ppf(1 - 0.001, df=20)
    assert chi2 < crit, f"chi2={chi2:.1f} exceeds critical {crit:.1f}"


def test_tail_fallback_heavy_draws():
    # a tiny table forces the Pareto tail path; draws must exceed the cutoff
    p = ModelParams(tau=2.5, n=200_000, seed=5)
    degs = sample_degrees(p, replica_stream(p.seed, 0), table_size=50)
    beyond = degs.degrees[degs.degrees > 50]
    assert len(beyond) > 0
    assert degs.degrees.min() >= 1
    # tail mass should roughly match P(D > 50) = zeta(2.5, 51)/zeta(2.5)
    from scipy.special import zeta
    p_tail = zeta(2.5, 51) / zeta(2.5, 1)
    se = np.sqrt(p_tail * (1 - p_tail) / p.n)
    assert abs(len(beyond) / p.n - p_tail) < 4 * se


def test_degree_sum_typical_arithmetic():
    p = ModelParams(tau=2.5, n=1000, seed=0)
    near = DegreeSequence(
        degrees=np.array([2] * 1000), parity_fixed=False, l_n=1947, d_max=2
    )
    assert degree_sum_typical(near, p)  # |1947 - 1947.37| <= 1000^(2/3) = 100
    far = DegreeSequence(
        degrees=np.array([3] * 1000), parity_fixed=False, l_n=3000, d_max=3
    )
    assert not degree_sum_typical(far, p)  # deviation 1052.6 > 100
    exact = DegreeSequence(
        degrees=np.array([2] * 1000), parity_fixed=False,
        l_n=int(round(p.mu * p.n)), d_max=2,
    )
    assert degree_sum_typical(exact, p)


def test_rejects_empty_and_nonpositive():
    with pytest.raises(ValueError):
        DegreeSequence.from_raw(np.array([], dtype=np.int64))
    with pytest.raises(ValueError):
        DegreeSequence.from_raw(np.array([1, 0, 2]))
