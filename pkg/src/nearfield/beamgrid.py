"""Orthogonal DFT beam grid, beamforming gain patterns and spatial DoF."""

from dataclasses import dataclass

import numpy as np

from .channel import steering_vector
from .geometry import ArrayGeometry

_REGIME_RTOL = 1e-12


def spacing_regime(geom: ArrayGeometry) -> str:
    """``"critical"`` (half-wavelength), ``"sparse"`` (wider) or ``"dense"``."""
    ratio = geom.spacing_m / (geom.wavelength_m / 2.0)
    if abs(ratio - 1.0) <= _REGIME_RTOL:
        return "critical"
    return "sparse" if ratio > 1.0 else "dense"


def _grid_bins(geom):
    # q_n = floor(N/2) + 1 - n, n = 1..N (descending).
    n = geom.n_antennas
    q = n // 2 + 1 - np.arange(1, n + 1)
    theta = q / n * (geom.wavelength_m / geom.spacing_m)
    # Theta = +1 is kept; Theta = -1 is dropped so the kept set matches the
    # floor(2 N Delta / lambda) beam count when the end-fire bins fall on the grid.
    keep = (theta <= 1.0 + 1e-12) & (theta > -1.0 + 1e-12)
    return q[keep], theta[keep]


def beam_directions(geom: ArrayGeometry) -> np.ndarray:
    """Directional cosines of the kept DFT beams, in descending order."""
    return _grid_bins(geom)[1]


@dataclass(frozen=True, eq=False)
class BeamGrid:
    geom: ArrayGeometry
    dir_cosines: np.ndarray
    bins: np.ndarray
    beam_matrix: np.ndarray
    spacing_regime: str

    @property
    def n_beams(self) -> int:
        return self.dir_cosines.shape[0]

    def bin_frequencies(self) -> np.ndarray:
        """Spatial frequency ``Theta / lambda`` of each beam (cycles per meter)."""
        return self.dir_cosines / self.geom.wavelength_m


def beam_matrix(geom: ArrayGeometry) -> BeamGrid:
    """Phase-aligned DFT beams as columns.

    Column for bin ``b = n - 1 - floor(N/2)`` is ``exp(-j 2 pi m b / N)``,
    ``m = 0..N-1``. Exponents are reduced modulo ``N`` in integer arithmetic so
    the columns equal the textbook DFT basis vectors exactly.
    """
    n = geom.n_antennas
    q, theta = _grid_bins(geom)
    m = np.arange(n)
    # Column bin is -q, so the exponent -m*(-q) = m*q (mod N).
    expo = np.mod(np.outer(m, q), n)
    mat = np.exp(2j * np.pi * expo / n)
    mat.setflags(write=False)
    return BeamGrid(geom, theta, -q, mat, spacing_regime(geom))


def beamforming_gain(geom: ArrayGeometry, beam_dir, observe) -> np.ndarray:
    """``|a(cos observe)^H a(beam_dir)|**2 / N`` for observation angle(s) in radians."""
    observe = np.asarray(observe, dtype=np.float64)
    if np.any((observe < 0.0) | (observe > np.pi)):
        raise ValueError("observation angles must lie in [0, pi]")
    w = steering_vector(geom, beam_dir)
    obs = np.exp(
        1j * geom.wavenumber * np.multiply.outer(np.cos(observe), geom.index_offsets * geom.spacing_m)
    )
    return np.abs(obs.conj() @ w) ** 2 / geom.n_antennas


def beam_pattern(geom: ArrayGeometry, observe) -> np.ndarray:
    """Gain of every grid beam over ``observe``; shape ``(len(observe), n_beams)``."""
    dirs = beam_directions(geom)
    return np.stack([beamforming_gain(geom, t, observe) for t in dirs], axis=-1)


def spatial_dof(geom: ArrayGeometry) -> float:
    """Approximate spatial DoF ``min(N, 2 N Delta / lambda)``."""
    return min(float(geom.n_antennas), 2.0 * geom.aperture_m / geom.wavelength_m)


def beam_count(geom: ArrayGeometry) -> int:
    return int(beam_directions(geom).shape[0])
