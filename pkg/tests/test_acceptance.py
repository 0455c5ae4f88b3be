"""Acceptance checks, one group per criterion.

Run ``pytest tests/test_acceptance.py -v``; a PASS/FAIL line per criterion is
printed in the terminal summary. Independent oracles are computed inline with
plain numpy/scipy so the library's own kernels are not trusted.
"""

import subprocess
import sys
import time

import numpy as np
import pytest
from scipy import integrate, special

from nearfield import (
    ArrayGeometry,
    ScatteringRegion,
    UserLocation,
    beam_count,
    beam_matrix,
    beamforming_gain,
    build_correlation,
    closed_form_gain,
    dft_spectrum,
    effective_freq_sweep,
    effective_spatial_frequencies,
    exact_gain_profile,
    field_boundaries,
    fresnel,
    monte_carlo_correlation,
    sample_channel,
    sample_wavefront,
)

pytestmark = pytest.mark.acceptance

LAM = 0.1
N_ELAA = 225
BIN = 2.0 / N_ELAA  # grid step in directional cosine at half-wavelength spacing


def crit(num, title):
    return pytest.mark.criterion(num, title)


def half(n):
    return ArrayGeometry.half_wavelength(n, LAM)


def oracle_gain(n, theta, d):
    """|a^H b|^2 / N^2 on the half-wavelength DFT grid from scratch."""
    delta = LAM / 2
    k = 2 * np.pi / LAM
    y = (np.arange(1, n + 1) - (n + 1) / 2) * delta
    dn = np.sqrt(d * d + y * y - 2 * d * y * np.cos(theta))
    b = np.exp(-1j * k * (dn - d))
    grid = (n // 2 + 1 - np.arange(1, n + 1)) / n * (LAM / delta)
    grid = grid[(grid <= 1) & (grid > -1)]
    a = np.exp(1j * k * np.outer(y, grid))
    return grid, np.abs(a.conj().T @ b) ** 2 / n**2


def oracle_closed_form(n, theta, d, grid):
    delta = LAM / 2
    tb = np.cos(theta)
    s = 1 - tb * tb
    b1 = n / 2 * np.sqrt(delta * s / d)
    b2 = np.sqrt(d / (delta * s)) * (tb - grid)
    sp, cp = special.fresnel(b1 + b2)
    sm, cm = special.fresnel(b1 - b2)
    return ((cp + cm) ** 2 + (sp + sm) ** 2) / (4 * b1 * b1)


# -- 1 ---------------------------------------------------------------------

C1 = crit(1, "boundary values")


@C1
@pytest.mark.parametrize(
    "n,key,expected",
    [(10, "fraunhofer_m", 5.0), (100, "fraunhofer_m", 500.0), (225, "fraunhofer_m", 2531.25), (225, "amplitude_m", 22.5)],
)
def test_c01_boundaries(n, key, expected):
    t0 = time.perf_counter()
    val = getattr(field_boundaries(half(n)), key)
    assert time.perf_counter() - t0 < 0.1
    assert val == pytest.approx(expected, rel=1e-9)


# -- 2, 3 ------------------------------------------------------------------

THETA_M_HALF = float(np.arccos(-0.5))


@crit(2, "far-field spectrum single bin")
def test_c02_far_spectrum():
    g = half(16)
    x = sample_wavefront(g, UserLocation(THETA_M_HALF, 5 * LAM), "far_field")
    spec = dft_spectrum(x, g.spacing_m)
    # oracle: direct DFT of the far-field tone
    m = np.arange(16)
    tone = np.exp(1j * np.pi * (m - 7.5) * -0.5)
    direct = np.abs([np.sum(tone * np.exp(-2j * np.pi * m * kk / 16)) for kk in spec.bin_indices])
    np.testing.assert_allclose(spec.magnitudes, direct, atol=1e-10)
    peak = int(np.argmax(spec.magnitudes))
    assert spec.bin_freqs[peak] == pytest.approx(-4 / (8 * LAM), rel=1e-12)
    others = np.delete(spec.magnitudes, peak)
    assert np.all(others < 1e-9 * spec.magnitudes[peak])


@crit(3, "near-field spectrum spread")
def test_c03_near_spectrum_spread():
    g = half(16)
    spec = dft_spectrum(sample_wavefront(g, UserLocation(THETA_M_HALF, 5 * LAM)), g.spacing_m)
    frac = spec.energy_fractions
    assert frac.max() <= 0.5


# -- 4 ---------------------------------------------------------------------

C4 = crit(4, "beam-grid orthogonality and beam count")


@C4
def test_c04_gram():
    a = beam_matrix(half(8)).beam_matrix
    np.testing.assert_allclose(a.conj().T @ a, 8 * np.eye(8), atol=1e-10)


@C4
def test_c04_peaks_on_nulls():
    g = half(8)
    dirs = beam_matrix(g).dir_cosines
    peaks = np.arccos(dirs)
    for i, t in enumerate(dirs):
        gain = beamforming_gain(g, t, peaks)
        assert gain[i] == pytest.approx(8.0, rel=1e-12)
        assert np.all(np.delete(gain, i) < 1e-10)


@C4
@pytest.mark.parametrize("factor", [1 / 8, 1 / 4, 1 / 2, 1.0, 2.0])
def test_c04_beam_count_law(factor):
    g = ArrayGeometry(8, factor * LAM, LAM)
    assert beam_count(g) == min(8, int(np.floor(2 * 8 * factor + 1e-12)))


# -- 5 ---------------------------------------------------------------------

C5 = crit(5, "gain-profile window")


def _window(theta, d):
    prof = exact_gain_profile(half(N_ELAA), UserLocation(theta, d))
    grid, ref = oracle_gain(N_ELAA, theta, d)
    np.testing.assert_allclose(prof.grid.dir_cosines, grid, atol=1e-14)
    np.testing.assert_allclose(prof.exact_gain, ref, atol=1e-12)
    g = prof.normalized_exact()
    top = g >= 0.5
    com = np.sum(g[top] * grid[top]) / np.sum(g[top])
    return int(top.sum()), com


@C5
def test_c05a_far_single_bin():
    t0 = time.perf_counter()
    count, com = _window(np.pi / 2, 2600.0)
    assert time.perf_counter() - t0 < 1.0
    assert count == 1
    assert abs(com) < 1e-12


@C5
def test_c05b_near_window_broadside():
    count, com = _window(np.pi / 2, 25.0)
    assert count > 10
    assert abs(com - 0.0) <= BIN


@C5
@pytest.mark.parametrize("d", [2600.0, 25.0])
def test_c05c_window_at_pi_over_3(d):
    count, com = _window(np.pi / 3, d)
    assert count >= 1
    assert abs(com - 0.5) <= BIN


# -- 6 ---------------------------------------------------------------------

C6 = crit(6, "closed-form fidelity")


@C6
@pytest.mark.parametrize("theta", [np.pi / 2, np.pi / 3], ids=["pi_2", "pi_3"])
@pytest.mark.parametrize("d", [25.0, 100.0])
def test_c06_closed_form_vs_exact(theta, d):
    t0 = time.perf_counter()
    g = half(N_ELAA)
    loc = UserLocation(theta, d)
    grid, exact = oracle_gain(N_ELAA, theta, d)
    approx = closed_form_gain(g, loc, grid)
    elapsed = time.perf_counter() - t0
    np.testing.assert_allclose(approx, oracle_closed_form(N_ELAA, theta, d, grid), rtol=1e-10, atol=1e-13)
    ge, ga = exact / exact.max(), approx / approx.max()
    assert elapsed < 5.0
    assert np.max(np.abs(ga - ge)) <= 0.05
    assert np.corrcoef(ga, ge)[0, 1] >= 0.99


def _quad_fresnel(v):
    edges = np.sqrt(np.arange(0, int(v * v) + 1))
    edges = np.append(edges[edges < v], v)
    c = sum(integrate.quad(lambda t: np.cos(np.pi * t * t / 2), a, b, epsabs=1e-14, epsrel=1e-12)[0] for a, b in zip(edges[:-1], edges[1:]))
    s = sum(integrate.quad(lambda t: np.sin(np.pi * t * t / 2), a, b, epsabs=1e-14, epsrel=1e-12)[0] for a, b in zip(edges[:-1], edges[1:]))
    return c, s


@C6
def test_c06_fresnel_oracle():
    v = np.linspace(0, 20, 81)
    c, s = fresnel(np.concatenate([v, -v]))
    ref = np.array([_quad_fresnel(x) for x in v])
    ref = np.concatenate([ref, -ref])
    assert np.max(np.abs(c - ref[:, 0])) <= 1e-10
    assert np.max(np.abs(s - ref[:, 1])) <= 1e-10


# -- 7 ---------------------------------------------------------------------

C7 = crit(7, "effective-frequency behaviour")


@pytest.fixture(scope="module")
def distance_sweep():
    t0 = time.perf_counter()
    d = np.linspace(22.5, 2600.0, 100)
    sweep = effective_freq_sweep(half(N_ELAA), "distance", d, np.pi / 2)
    return sweep, time.perf_counter() - t0


@pytest.fixture(scope="module")
def angle_sweep():
    t0 = time.perf_counter()
    theta = np.linspace(0.01, np.pi - 0.01, 181)
    sweep = effective_freq_sweep(half(N_ELAA), "angle", theta, 25.0)
    return sweep, time.perf_counter() - t0


@C7
def test_c07_distance_sweep_non_increasing(distance_sweep):
    sweep, _ = distance_sweep
    assert sweep.non_increasing, f"increases at {sweep.values[sweep.increases + 1]}"


@C7
def test_c07_one_beyond_400m(distance_sweep):
    sweep, _ = distance_sweep
    assert np.all(sweep.counts[sweep.values >= 400.0] == 1)
    g = half(N_ELAA)
    for d in (400.0, 1000.0, 2600.0):
        assert effective_spatial_frequencies(g, UserLocation(np.pi / 2, d)) == 1


@C7
def test_c07_peak_fraction(distance_sweep):
    sweep, _ = distance_sweep
    peak = sweep.counts.max()
    _, ref = oracle_gain(N_ELAA, np.pi / 2, 22.5)
    assert peak == np.count_nonzero(ref / ref.max() >= 0.5)
    assert 0.15 * N_ELAA <= peak <= 0.35 * N_ELAA


@C7
def test_c07_angle_sweep_peak(angle_sweep):
    sweep, _ = angle_sweep
    mid = int(np.argmin(np.abs(sweep.values - np.pi / 2)))
    assert sweep.values[mid] == pytest.approx(np.pi / 2)
    assert sweep.counts[mid] == sweep.counts.max()


@C7
@pytest.mark.parametrize("theta", [0.01, np.pi - 0.01], ids=["0.01", "pi-0.01"])
def test_c07_endfire_count_one(theta):
    assert effective_spatial_frequencies(half(N_ELAA), UserLocation(theta, 25.0)) == 1


@C7
def test_c07_runtime(distance_sweep, angle_sweep):
    assert distance_sweep[1] + angle_sweep[1] < 30.0


# -- 8, 9 ------------------------------------------------------------------

FAR = (2600.0, 2610.0)
REGIONS = {
    "full_far": ScatteringRegion(0.0, np.pi, *FAR),
    "half_far": ScatteringRegion(np.pi / 4, 3 * np.pi / 4, *FAR),
    "half_near": ScatteringRegion(np.pi / 4, 3 * np.pi / 4, 3.0, 5.0),
}

_cache = {}


def correlation(name):
    if name not in _cache:
        t0 = time.perf_counter()
        r = build_correlation(half(N_ELAA), REGIONS[name], allow_below_db=True)
        _cache[name] = (r, time.perf_counter() - t0)
    return _cache[name]


def energy_rank(entries, frac=0.99):
    vals = np.sort(np.clip(np.linalg.eigvalsh(entries), 0, None))[::-1]
    cum = np.cumsum(vals) / vals.sum()
    return int(np.argmax(cum >= frac - 1e-12) + 1)


C8 = crit(8, "correlation-matrix structure")


@C8
@pytest.mark.parametrize("name", list(REGIONS))
def test_c08_structure(name):
    r, _ = correlation(name)
    e = r.entries
    assert np.max(np.abs(e - e.conj().T)) <= 1e-12
    assert np.linalg.eigvalsh(e).min() >= -1e-10 * r.trace()
    assert r.trace() == pytest.approx(N_ELAA * REGIONS[name].beta, rel=1e-6)


@C8
@pytest.mark.parametrize("name", list(REGIONS))
def test_c08_node_doubling(name):
    r, t_base = correlation(name)
    t0 = time.perf_counter()
    r2 = build_correlation(half(N_ELAA), REGIONS[name], r.quadrature.doubled(), allow_below_db=True)
    elapsed = t_base + time.perf_counter() - t0
    rel = np.linalg.norm(r2.entries - r.entries) / np.linalg.norm(r.entries)
    assert rel < 1e-6
    assert elapsed < 30.0


C9 = crit(9, "DoF reproduction")


@C9
def test_c09a_full_angle_far():
    r, _ = correlation("full_far")
    assert energy_rank(r.entries) >= 0.95 * N_ELAA


@C9
def test_c09b_restricted_far():
    r, _ = correlation("half_far")
    assert 70 <= energy_rank(r.entries) <= 95


@C9
def test_c09c_restricted_near():
    near = energy_rank(correlation("half_near")[0].entries)
    far = energy_rank(correlation("half_far")[0].entries)
    assert near > far
    assert 80 <= near <= 105


@C9
def test_c09_runtime():
    total = sum(correlation(name)[1] for name in REGIONS)
    assert total < 120.0


# -- 10 --------------------------------------------------------------------

C10 = crit(10, "oracle equivalence (N=32)")
DESK = (half(32), ScatteringRegion(np.pi / 4, 3 * np.pi / 4, 3.2, 10.0))


def _rel(a, b):
    return np.linalg.norm(a - b) / np.linalg.norm(b)


@C10
def test_c10_monte_carlo():
    t0 = time.perf_counter()
    r = build_correlation(*DESK)
    est = monte_carlo_correlation(*DESK, n_paths=8, n_realizations=25000, seed=2024)
    assert time.perf_counter() - t0 < 60.0
    assert _rel(est.entries, r.entries) < 0.05


@C10
def test_c10_sample_channel():
    t0 = time.perf_counter()
    r = build_correlation(*DESK)
    h = sample_channel(r, seed=2024, n_samples=100000)
    cov = h.T @ h.conj() / h.shape[0]
    assert time.perf_counter() - t0 < 60.0
    assert _rel(cov, r.entries) < 0.05


# -- 11 --------------------------------------------------------------------

RUNS = {
    "spectrum": ["--n-antennas", "16", "--wavelength", "0.1", "--theta-rad", str(THETA_M_HALF), "--distance", "0.5"],
    "gain": ["--n-antennas", "225", "--wavelength", "0.1", "--theta-deg", "60", "--distance", "25"],
    "effective": ["--n-antennas", "225", "--wavelength", "0.1", "--theta-deg", "90", "--set", "sweep.num=20"],
    "dof": [
        "--n-antennas", "32", "--wavelength", "0.1", "--seed", "7",
        "--set", "region.theta1_deg=45", "--set", "region.theta2_deg=135",
        "--set", "region.d1=3.2", "--set", "region.d2=10",
        "--set", "numerics.method=monte_carlo", "--set", "numerics.mc_realizations=4000",
    ],
}


@crit(11, "CLI determinism")
@pytest.mark.parametrize("command", list(RUNS))
def test_c11_byte_identical(command, tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"{command}{k}.csv"
        subprocess.run(
            [sys.executable, "-m", "nearfield", command, *RUNS[command], "--out", str(path)], check=True
        )
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert len(outs[0]) > 100
