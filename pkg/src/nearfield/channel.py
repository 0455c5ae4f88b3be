"""Exact spherical-wave, near-field and far-field channel vectors for a ULA."""

from dataclasses import dataclass, field
import warnings

import numpy as np

from .geometry import ArrayGeometry, antenna_positions, field_boundaries

MODEL_TAGS = ("exact", "near_field", "far_field")


class ReactiveFieldWarning(UserWarning):
    """The user sits inside the reactive near field, where the model does not hold."""


@dataclass(frozen=True)
class UserLocation:
    """User at angle ``theta_rad`` from the +y axis and distance ``distance_m``
    from the array centre."""

    theta_rad: float
    distance_m: float
    dir_cosine: float = field(init=False)

    def __post_init__(self):
        theta = float(self.theta_rad)
        if not 0.0 <= theta <= np.pi:
            raise ValueError(f"theta_rad must lie in [0, pi], got {theta}")
        if not self.distance_m > 0:
            raise ValueError(f"distance_m must be > 0, got {self.distance_m}")
        object.__setattr__(self, "theta_rad", theta)
        object.__setattr__(self, "distance_m", float(self.distance_m))
        object.__setattr__(self, "dir_cosine", float(np.cos(theta)))

    @classmethod
    def from_degrees(cls, theta_deg, distance_m):
        return cls(np.deg2rad(theta_deg), distance_m)


@dataclass(frozen=True, eq=False)
class ChannelVector:
    coeffs: np.ndarray
    model_tag: str
    common_scalar: complex = 1.0 + 0.0j
    inside_reactive: bool = False

    def __post_init__(self):
        if self.model_tag not in MODEL_TAGS:
            raise ValueError(f"unknown model_tag {self.model_tag!r}")
        coeffs = np.array(self.coeffs, dtype=np.complex128)
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    def __len__(self):
        return self.coeffs.shape[0]

    @property
    def channel(self) -> np.ndarray:
        """Full channel ``h_c * b`` (equal to ``coeffs`` for the exact model)."""
        if self.model_tag == "exact":
            return self.coeffs
        return self.common_scalar * self.coeffs


def exact_distances(geom: ArrayGeometry, loc: UserLocation) -> np.ndarray:
    """Per-antenna distances from the cosine rule."""
    y = antenna_positions(geom)
    d = loc.distance_m
    return np.sqrt(d * d + y * y - 2.0 * d * y * loc.dir_cosine)


def _free_space_gain(geom, distance):
    return geom.wavelength_m**2 / (4.0 * np.pi * distance) ** 2


def common_scalar(geom: ArrayGeometry, loc: UserLocation) -> complex:
    d = loc.distance_m
    return complex(np.sqrt(_free_space_gain(geom, d)) * np.exp(-1j * geom.wavenumber * d))


def exact_channel(geom: ArrayGeometry, loc: UserLocation) -> ChannelVector:
    """``h_n = sqrt(beta_n) exp(-j 2 pi d_n / lambda)`` with per-antenna gains.

    Emits :class:`ReactiveFieldWarning` (and sets ``inside_reactive``) when the
    user is closer than the reactive near-field boundary.
    """
    dn = exact_distances(geom, loc)
    inside = loc.distance_m <= field_boundaries(geom).reactive_m
    if inside:
        warnings.warn(
            f"distance {loc.distance_m} m is inside the reactive near field",
            ReactiveFieldWarning,
            stacklevel=2,
        )
    h = np.sqrt(_free_space_gain(geom, dn)) * np.exp(-1j * geom.wavenumber * dn)
    return ChannelVector(h, "exact", common_scalar(geom, loc), inside)


def nearfield_response(geom: ArrayGeometry, loc: UserLocation) -> ChannelVector:
    """Phase-only response ``b_n = exp(-j 2 pi (d_n - d) / lambda)`` using exact
    distances; ``common_scalar`` carries ``sqrt(beta) exp(-j 2 pi d / lambda)``."""
    dn = exact_distances(geom, loc)
    b = np.exp(-1j * geom.wavenumber * (dn - loc.distance_m))
    return ChannelVector(b, "near_field", common_scalar(geom, loc))


def nearfield_expansion_distance(geom: ArrayGeometry, loc: UserLocation, n=None):
    """Second-order (Fresnel) approximation of ``d_n``.

    ``n`` is a 1-based antenna index or ``None`` for all antennas.
    """
    i = geom.index_offsets
    if n is not None:
        if not 1 <= n <= geom.n_antennas:
            raise IndexError(f"antenna index {n} out of range 1..{geom.n_antennas}")
        i = i[n - 1]
    delta = geom.spacing_m
    d = loc.distance_m
    c = loc.dir_cosine
    return d - delta * i * c + delta**2 * (i * i - i * i * c * c) / (2.0 * d)


def farfield_response(geom: ArrayGeometry, loc) -> ChannelVector:
    """Planar-wave response ``a_n = exp(j 2 pi i_n Delta cos(theta) / lambda)``.

    ``loc`` may be a :class:`UserLocation` or a bare angle in radians; the
    distance is ignored.
    """
    if isinstance(loc, UserLocation):
        scalar = common_scalar(geom, loc)
        cos_t = loc.dir_cosine
    else:
        theta = float(loc)
        if not 0.0 <= theta <= np.pi:
            raise ValueError(f"theta must lie in [0, pi], got {theta}")
        scalar = 1.0 + 0.0j
        cos_t = np.cos(theta)
    a = np.exp(1j * geom.wavenumber * antenna_positions(geom) * cos_t)
    return ChannelVector(a, "far_field", scalar)


def steering_vector(geom: ArrayGeometry, dir_cosine) -> np.ndarray:
    """Far-field response for a directional cosine (no range check on ``dir_cosine``)."""
    return np.exp(1j * geom.wavenumber * antenna_positions(geom) * dir_cosine)
