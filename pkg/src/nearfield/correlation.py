"""Spatial correlation matrices of near-field multipath channels.

Scatterers are spread over an angle-distance box with density
``f(theta, d) = c / d**2``. In ``u = 1/d`` the density is uniform, so the
correlation integral is evaluated with tensor-product Gauss-Legendre nodes
in ``(theta, u)`` and assembled as a weighted sum of outer products of
unit-modulus phase vectors. The result is Hermitian PSD by construction.
"""

from dataclasses import dataclass
import math

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import kernels
from .geometry import ArrayGeometry, antenna_positions, field_boundaries

PHASE_MODELS = ("expansion", "exact")

# Complex entries per phase-matrix chunk (~32 MiB).
_CHUNK_ENTRIES = 2_000_000


class NotPSDError(ValueError):
    pass


@dataclass(frozen=True)
class ScatteringRegion:
    theta1: float
    theta2: float
    d1: float
    d2: float
    beta: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.theta1 <= np.pi and 0.0 <= self.theta2 <= np.pi):
            raise ValueError("angular limits must lie in [0, pi]")
        if not self.theta1 < self.theta2:
            raise ValueError(f"need theta1 < theta2, got {self.theta1}, {self.theta2}")
        if not 0.0 < self.d1 < self.d2:
            raise ValueError(f"need 0 < d1 < d2, got {self.d1}, {self.d2}")
        if not self.beta > 0:
            raise ValueError(f"beta must be > 0, got {self.beta}")

    @property
    def norm_const(self) -> float:
        return self.d1 * self.d2 / (self.d2 - self.d1) / (self.theta2 - self.theta1)


def scattering_density(region: ScatteringRegion, theta, d):
    """Normalised scattering density ``c / d**2`` inside the region, 0 outside."""
    theta = np.asarray(theta, dtype=np.float64)
    d = np.asarray(d, dtype=np.float64)
    inside = (
        (theta >= region.theta1)
        & (theta <= region.theta2)
        & (d >= region.d1)
        & (d <= region.d2)
    )
    with np.errstate(divide="ignore"):
        val = np.where(inside, region.norm_const / np.where(inside, d, 1.0) ** 2, 0.0)
    return val if val.ndim else float(val)


@dataclass(frozen=True)
class QuadratureSpec:
    n_theta: int
    n_u: int

    def __post_init__(self):
        if self.n_theta < 8 or self.n_u < 8:
            raise ValueError("quadrature needs at least 8 nodes per axis")

    def doubled(self) -> "QuadratureSpec":
        return QuadratureSpec(2 * self.n_theta, 2 * self.n_u)

    @property
    def n_nodes(self) -> int:
        return self.n_theta * self.n_u


def auto_quadrature(geom: ArrayGeometry, region: ScatteringRegion, oversample=0.75, margin=32):
    """Node counts from a bound on the integrand's phase rate along each axis.

    Gauss-Legendre resolves ``exp(j w x)`` on ``[-1, 1]`` to near machine
    precision once the node count exceeds roughly ``0.7 w``.
    """
    y = antenna_positions(geom)
    k = geom.wavenumber
    span = y.max() - y.min()
    sq = float(np.max(y * y))
    rate_theta = k * (span + sq / (2.0 * region.d1))
    w_theta = rate_theta * (region.theta2 - region.theta1) / 2.0
    rate_u = k * sq / 2.0
    w_u = rate_u * (1.0 / region.d1 - 1.0 / region.d2) / 2.0
    return QuadratureSpec(
        max(8, math.ceil(oversample * w_theta) + margin),
        max(8, math.ceil(oversample * w_u) + margin),
    )


def quadrature_nodes(region: ScatteringRegion, spec: QuadratureSpec):
    """Angles, inverse distances and weights (summing to one) of the tensor rule."""
    xt, wt = leggauss(spec.n_theta)
    xu, wu = leggauss(spec.n_u)
    t1, t2 = region.theta1, region.theta2
    u1, u2 = 1.0 / region.d2, 1.0 / region.d1
    theta = 0.5 * (t2 - t1) * xt + 0.5 * (t2 + t1)
    u = 0.5 * (u2 - u1) * xu + 0.5 * (u2 + u1)
    return theta, u, 0.5 * wt, 0.5 * wu


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    entries: np.ndarray
    region: ScatteringRegion
    quadrature: QuadratureSpec | None
    geom: ArrayGeometry
    phase_model: str = "expansion"

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> float:
        return float(np.real(np.trace(self.entries)))


def _check_region(geom, region, allow_below_db):
    d_b = field_boundaries(geom).amplitude_m
    # Relative slack so d1 = 2 * N * Delta typed by hand is not rejected on rounding.
    if region.d1 < d_b * (1.0 - 1e-12) and not allow_below_db:
        raise ValueError(
            f"d1 = {region.d1} m is below the flat-amplitude distance {d_b} m; "
            "pass allow_below_db=True to evaluate anyway"
        )


def build_correlation(
    geom: ArrayGeometry,
    region: ScatteringRegion,
    quadrature: QuadratureSpec | None = None,
    phase_model="expansion",
    allow_below_db=False,
) -> CorrelationMatrix:
    """Correlation matrix ``beta * E[b b^H]`` over the scattering region.

    Parameters
    ----------
    quadrature : QuadratureSpec, optional
        Node counts; chosen by :func:`auto_quadrature` when omitted.
    phase_model : {"expansion", "exact"}
        ``"expansion"`` uses the second-order distance expansion in the phase
        (the standard correlation model); ``"exact"`` uses exact distances.
    allow_below_db : bool
        Permit ``d1`` below ``2 * aperture`` where amplitude variations are no
        longer negligible.
    """
    if phase_model not in PHASE_MODELS:
        raise ValueError(f"phase_model must be one of {PHASE_MODELS}, got {phase_model!r}")
    _check_region(geom, region, allow_below_db)
    spec = quadrature if quadrature is not None else auto_quadrature(geom, region)
    theta, u, wt, wu = quadrature_nodes(region, spec)
    y = antenna_positions(geom)
    n = geom.n_antennas
    cos_t = np.cos(theta)

    rows = max(1, _CHUNK_ENTRIES // (n * spec.n_u))
    acc = np.zeros((n, n), dtype=np.complex128)
    for start in range(0, spec.n_theta, rows):
        sl = slice(start, start + rows)
        c = np.repeat(cos_t[sl], spec.n_u)
        inv_d = np.tile(u, c.shape[0] // spec.n_u)
        w = np.outer(wt[sl], wu).ravel()
        v = kernels.phase_matrix(y, c, inv_d, geom.wavenumber, phase_model == "exact")
        acc += (v * w) @ v.conj().T
    acc *= region.beta
    acc = 0.5 * (acc + acc.conj().T)
    return CorrelationMatrix(acc, region, spec, geom, phase_model)


# -- random channels ------------------------------------------------------------


def _sqrtm_psd(r):
    vals, vecs = np.linalg.eigh(r)
    tol = 1e-10 * max(float(np.sum(np.abs(vals))), np.finfo(float).tiny)
    if vals.min() < -tol:
        raise NotPSDError(f"matrix is not PSD (min eigenvalue {vals.min():.3e})")
    return vecs * np.sqrt(np.clip(vals, 0.0, None))


def complex_normal(rng, shape, variance=1.0):
    """Circularly symmetric complex Gaussian samples."""
    scale = np.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def sample_channel(matrix, seed=None, n_samples=None):
    """Draw ``h ~ CN(0, R)`` as ``R^{1/2} w``.

    Returns shape ``(N,)`` for a single draw or ``(n_samples, N)``.
    """
    r = matrix.entries if isinstance(matrix, CorrelationMatrix) else np.asarray(matrix)
    root = _sqrtm_psd(r)
    rng = np.random.default_rng(seed)
    count = 1 if n_samples is None else int(n_samples)
    w = complex_normal(rng, (count, r.shape[0]))
    h = w @ root.T
    return h[0] if n_samples is None else h


def monte_carlo_correlation(
    geom: ArrayGeometry,
    region: ScatteringRegion,
    n_paths: int,
    n_realizations: int,
    seed=None,
    phase_model="expansion",
    allow_below_db=False,
) -> CorrelationMatrix:
    """Sample-average estimate of the correlation matrix from discrete scatterers.

    Each realization draws ``n_paths`` scatterers from the region
    (angle uniform, ``1/d`` uniform) with i.i.d. ``CN(0, beta / n_paths)``
    gains and forms ``h = sum_k g_k b(theta_k, d_k)``.
    """
    if n_paths < 1 or n_realizations < 1:
        raise ValueError("n_paths and n_realizations must be >= 1")
    if phase_model not in PHASE_MODELS:
        raise ValueError(f"phase_model must be one of {PHASE_MODELS}, got {phase_model!r}")
    _check_region(geom, region, allow_below_db)
    rng = np.random.default_rng(seed)
    y = antenna_positions(geom)
    n = geom.n_antennas
    batch = max(1, _CHUNK_ENTRIES // (n * n_paths))
    acc = np.zeros((n, n), dtype=np.complex128)
    done = 0
    while done < n_realizations:
        b = min(batch, n_realizations - done)
        theta = rng.uniform(region.theta1, region.theta2, size=(b, n_paths))
        u = rng.uniform(1.0 / region.d2, 1.0 / region.d1, size=(b, n_paths))
        g = complex_normal(rng, (b, n_paths), region.beta / n_paths)
        v = kernels.phase_matrix(y, np.cos(theta).ravel(), u.ravel(), geom.wavenumber, phase_model == "exact")
        h = np.einsum("nbk,bk->nb", v.reshape(n, b, n_paths), g)
        acc += h @ h.conj().T
        done += b
    acc /= n_realizations
    acc = 0.5 * (acc + acc.conj().T)
    return CorrelationMatrix(acc, region, None, geom, phase_model)


# -- eigenanalysis -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class EigenSpectrum:
    eigenvalues: np.ndarray
    effective_rank_energy: int
    effective_rank_threshold: int
    energy_fraction: float
    tau: float

    def cumulative_energy(self) -> np.ndarray:
        return np.cumsum(self.eigenvalues) / np.sum(self.eigenvalues)

    def db_rel_max(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return 10.0 * np.log10(self.eigenvalues / self.eigenvalues[0])


def eigen_spectrum(matrix, energy_fraction=0.99, tau=1e-3) -> EigenSpectrum:
    """Sorted eigenvalues and effective-rank summaries of a Hermitian matrix.

    ``effective_rank_energy`` is the smallest ``k`` whose top-``k``
    eigenvalues hold ``energy_fraction`` of the trace;
    ``effective_rank_threshold`` counts eigenvalues ``>= tau * max``.
    """
    r = matrix.entries if isinstance(matrix, CorrelationMatrix) else np.asarray(matrix)
    vals = np.linalg.eigvalsh(r)[::-1]
    vals = np.clip(vals, 0.0, None)
    total = vals.sum()
    cum = np.cumsum(vals)
    # Relative slack keeps exact fractions (e.g. identity matrices) from
    # failing on rounding.
    k_energy = int(np.searchsorted(cum, energy_fraction * total * (1.0 - 1e-12)) + 1)
    k_thresh = int(np.count_nonzero(vals >= tau * vals[0]))
    return EigenSpectrum(vals, min(k_energy, vals.size), k_thresh, energy_fraction, tau)
