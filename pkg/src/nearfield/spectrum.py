"""Spatial-frequency analysis of ULA wavefronts.

DFT spectra of sampled wavefronts, per-beam DFT gains of a near-field
response, the Fresnel-integral closed form of those gains, and counting of
the effective spatial frequencies (beams within 3 dB of the strongest).
"""

from dataclasses import dataclass
import warnings

import numpy as np

from . import kernels
from .beamgrid import BeamGrid, beam_matrix
from .channel import (
    UserLocation,
    farfield_response,
    nearfield_expansion_distance,
    nearfield_response,
)
from .fresnel import fresnel
from .geometry import ArrayGeometry, antenna_positions

HALF_POWER = 0.5


class EndFireWarning(UserWarning):
    """Closed-form gain requested at end-fire, where it degenerates."""


def db_to_ratio(threshold_db):
    return 10.0 ** (-threshold_db / 10.0)


# -- sampled wavefronts and their DFT ---------------------------------------


@dataclass(frozen=True, eq=False)
class SpatialSpectrum:
    bin_indices: np.ndarray
    bin_freqs: np.ndarray
    magnitudes: np.ndarray
    spacing_m: float
    source_loc: UserLocation | None = None

    @property
    def energy(self) -> np.ndarray:
        return self.magnitudes**2

    @property
    def energy_fractions(self) -> np.ndarray:
        e = self.energy
        return e / e.sum()

    def peak_frequency(self) -> float:
        return float(self.bin_freqs[np.argmax(self.magnitudes)])


def sample_wavefront(geom: ArrayGeometry, loc: UserLocation, model="near_field"):
    """Phase samples of the impinging wave at the antennas at ``t = 0``."""
    if model == "near_field":
        return nearfield_response(geom, loc).coeffs.copy()
    if model == "far_field":
        return farfield_response(geom, loc).coeffs.copy()
    raise ValueError(f"model must be 'near_field' or 'far_field', got {model!r}")


def dft_spectrum(samples, spacing_m, source_loc=None) -> SpatialSpectrum:
    """Centred N-point DFT magnitudes.

    Bin ``k`` runs over ``-floor(N/2) .. N - 1 - floor(N/2)`` and maps to the
    spatial frequency ``k / (N * spacing_m)`` cycles per meter.
    """
    x = np.asarray(samples, dtype=np.complex128)
    n = x.shape[0]
    if n < 1:
        raise ValueError("need at least one sample")
    spec = np.fft.fftshift(np.fft.fft(x))
    k = np.arange(n) - n // 2
    return SpatialSpectrum(k, k / (n * spacing_m), np.abs(spec), float(spacing_m), source_loc)


# -- per-beam gains ----------------------------------------------------------


@dataclass(frozen=True)
class FresnelGainParams:
    beta1: float
    beta2: np.ndarray
    c1: float
    c2: np.ndarray


@dataclass(frozen=True, eq=False)
class GainProfile:
    grid: BeamGrid
    loc: UserLocation
    exact_gain: np.ndarray
    approx_gain: np.ndarray | None = None
    normalized: bool = False

    def normalized_exact(self) -> np.ndarray:
        return self.exact_gain / self.exact_gain.max()

    def normalized_approx(self) -> np.ndarray:
        if self.approx_gain is None:
            raise ValueError("profile has no closed-form gains")
        return self.approx_gain / self.approx_gain.max()

    def as_normalized(self) -> "GainProfile":
        approx = None if self.approx_gain is None else self.normalized_approx()
        return GainProfile(self.grid, self.loc, self.normalized_exact(), approx, True)


def response_vector(geom, loc, phase_model="exact"):
    """Near-field phase vector ``b`` with exact or second-order-expanded distances."""
    if phase_model == "exact":
        return nearfield_response(geom, loc).coeffs
    if phase_model == "expansion":
        dn = nearfield_expansion_distance(geom, loc)
        return np.exp(-1j * geom.wavenumber * (dn - loc.distance_m))
    raise ValueError(f"phase_model must be 'exact' or 'expansion', got {phase_model!r}")


def exact_gain_profile(
    geom: ArrayGeometry, loc: UserLocation, phase_model="exact", closed_form=False
) -> GainProfile:
    """``G_n = |a(Theta_n)^H b(theta, d)|**2 / N**2`` over the DFT beam grid.

    Computed by direct inner products. ``phase_model="expansion"`` builds ``b``
    from the second-order distance expansion instead of exact distances. With
    ``closed_form=True`` the Fresnel approximation is filled in as well.
    """
    grid = beam_matrix(geom)
    b = response_vector(geom, loc, phase_model)
    gains = kernels.dft_gains(antenna_positions(geom), b, grid.dir_cosines, geom.wavenumber)
    approx = closed_form_gain(geom, loc, grid.dir_cosines) if closed_form else None
    return GainProfile(grid, loc, gains, approx)


def dft_coefficients(geom: ArrayGeometry, b) -> np.ndarray:
    """``A^H b / N`` on the beam grid; ``A @ coeffs`` rebuilds ``b`` at critical spacing."""
    grid = beam_matrix(geom)
    return grid.beam_matrix.conj().T @ np.asarray(b, dtype=np.complex128) / geom.n_antennas


def fresnel_gain_params(geom: ArrayGeometry, loc: UserLocation, beam_dirs) -> FresnelGainParams:
    beam_dirs = np.asarray(beam_dirs, dtype=np.float64)
    tb = loc.dir_cosine
    s = 1.0 - tb * tb
    if s <= 0.0:
        raise ValueError("Fresnel parameters are undefined at end-fire (|cos theta| = 1)")
    delta, d, n = geom.spacing_m, loc.distance_m, geom.n_antennas
    scale = np.sqrt(delta * s / d)
    c1 = np.sqrt(delta * s / (2.0 * d))
    c2 = (tb - beam_dirs + (n + 1) * c1 * c1) / (2.0 * c1)
    return FresnelGainParams(
        beta1=0.5 * n * scale,
        beta2=(tb - beam_dirs) / scale,
        c1=float(c1),
        c2=c2,
    )


def closed_form_gain(geom: ArrayGeometry, loc: UserLocation, beam_dir):
    """Fresnel-integral approximation of the DFT gain of beam(s) ``beam_dir``.

    ``([C(b1+b2) + C(b1-b2)]**2 + [S(b1+b2) + S(b1-b2)]**2) / (4 b1**2)``.
    At end-fire the approximation degenerates; the far-field limit (1 on the
    user's own direction, 0 elsewhere) is returned with an
    :class:`EndFireWarning`.
    """
    scalar = np.ndim(beam_dir) == 0
    dirs = np.atleast_1d(np.asarray(beam_dir, dtype=np.float64))
    tb = loc.dir_cosine
    if 1.0 - tb * tb <= 0.0:
        warnings.warn("closed-form gain at end-fire; returning far-field limit", EndFireWarning, stacklevel=2)
        out = np.isclose(dirs, tb, rtol=0.0, atol=1e-12).astype(np.float64)
    else:
        p = fresnel_gain_params(geom, loc, dirs)
        cp, sp = fresnel(p.beta1 + p.beta2)
        cm, sm = fresnel(p.beta1 - p.beta2)
        out = ((cp + cm) ** 2 + (sp + sm) ** 2) / (4.0 * p.beta1**2)
    return float(out[0]) if scalar else out


# -- effective spatial frequencies -------------------------------------------


def effective_spatial_frequencies(
    geom: ArrayGeometry, loc: UserLocation, threshold=HALF_POWER, phase_model="exact"
) -> int:
    """Number of grid beams whose max-normalised exact gain is ``>= threshold``."""
    g = exact_gain_profile(geom, loc, phase_model).normalized_exact()
    return int(np.count_nonzero(g >= threshold))


@dataclass(frozen=True, eq=False)
class EffectiveSweep:
    parameter: str
    values: np.ndarray
    counts: np.ndarray
    fixed: float

    @property
    def increases(self) -> np.ndarray:
        """Indices ``k`` where ``counts[k + 1] > counts[k]``."""
        return np.flatnonzero(np.diff(self.counts) > 0)

    @property
    def non_increasing(self) -> bool:
        return self.increases.size == 0

    @property
    def peak_value(self) -> float:
        return float(self.values[np.argmax(self.counts)])

    def rows(self):
        return list(zip(self.values.tolist(), self.counts.tolist()))


def effective_freq_sweep(
    geom: ArrayGeometry, parameter, values, fixed, threshold=HALF_POWER, phase_model="exact"
) -> EffectiveSweep:
    """Effective-frequency count over a distance sweep (``fixed`` = angle in
    radians) or an angle sweep (``fixed`` = distance in meters)."""
    values = np.asarray(values, dtype=np.float64)
    if parameter == "distance":
        locs = [UserLocation(fixed, d) for d in values]
    elif parameter == "angle":
        locs = [UserLocation(t, fixed) for t in values]
    else:
        raise ValueError(f"parameter must be 'distance' or 'angle', got {parameter!r}")
    counts = np.array(
        [effective_spatial_frequencies(geom, loc, threshold, phase_model) for loc in locs],
        dtype=np.int64,
    )
    return EffectiveSweep(parameter, values, counts, float(fixed))
