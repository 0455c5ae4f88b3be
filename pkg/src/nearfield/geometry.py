"""Uniform linear array geometry and field-region boundaries."""

from dataclasses import dataclass, field

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0


@dataclass(frozen=True)
class ArrayGeometry:
    """ULA of ``n_antennas`` isotropic elements along the y-axis, centred at 0.

    Parameters
    ----------
    n_antennas : int
        Number of antennas ``N``.
    spacing_m : float
        Inter-element spacing in meters.
    wavelength_m : float
        Carrier wavelength in meters. Use :meth:`from_carrier` to derive it
        from a carrier frequency instead.
    """

    n_antennas: int
    spacing_m: float
    wavelength_m: float
    aperture_m: float = field(init=False)

    def __post_init__(self):
        if int(self.n_antennas) != self.n_antennas or self.n_antennas < 1:
            raise ValueError(f"n_antennas must be a positive integer, got {self.n_antennas}")
        if not self.spacing_m > 0:
            raise ValueError(f"spacing_m must be > 0, got {self.spacing_m}")
        if not self.wavelength_m > 0:
            raise ValueError(f"wavelength_m must be > 0, got {self.wavelength_m}")
        object.__setattr__(self, "n_antennas", int(self.n_antennas))
        object.__setattr__(self, "aperture_m", self.n_antennas * self.spacing_m)

    @classmethod
    def from_carrier(cls, n_antennas, spacing_m, carrier_hz):
        if not carrier_hz > 0:
            raise ValueError(f"carrier_hz must be > 0, got {carrier_hz}")
        return cls(n_antennas, spacing_m, SPEED_OF_LIGHT / carrier_hz)

    @classmethod
    def half_wavelength(cls, n_antennas, wavelength_m=0.1):
        return cls(n_antennas, wavelength_m / 2, wavelength_m)

    @property
    def wavenumber(self) -> float:
        return 2.0 * np.pi / self.wavelength_m

    @property
    def spacing_over_lambda(self) -> float:
        return self.spacing_m / self.wavelength_m

    @property
    def index_offsets(self) -> np.ndarray:
        """``i_n = n - (N + 1) / 2`` for ``n = 1..N``."""
        n = np.arange(1, self.n_antennas + 1, dtype=np.float64)
        return n - (self.n_antennas + 1) / 2.0


def antenna_positions(geom: ArrayGeometry) -> np.ndarray:
    """y-coordinates ``i_n * spacing`` of the antennas (meters)."""
    return geom.index_offsets * geom.spacing_m


@dataclass(frozen=True)
class FieldBoundaries:
    reactive_m: float
    amplitude_m: float
    fraunhofer_m: float

    def as_dict(self):
        return {
            "reactive_m": self.reactive_m,
            "amplitude_m": self.amplitude_m,
            "fraunhofer_m": self.fraunhofer_m,
        }


def field_boundaries(geom: ArrayGeometry) -> FieldBoundaries:
    """Reactive-near-field edge, flat-amplitude distance and Fraunhofer distance.

    The reactive boundary ``0.62 sqrt(D**3 / lambda)`` is a large-array rule
    and is returned for any aperture without a validity check.
    """
    aperture = geom.aperture_m
    lam = geom.wavelength_m
    return FieldBoundaries(
        reactive_m=0.62 * np.sqrt(aperture**3 / lam),
        amplitude_m=2.0 * aperture,
        fraunhofer_m=2.0 * aperture**2 / lam,
    )
