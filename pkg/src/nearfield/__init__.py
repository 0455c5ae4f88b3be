"""Near-field and far-field ULA channel toolkit.

Spatial-frequency spectra, orthogonal DFT beam grids, the Fresnel-integral
beam-gain approximation and correlation-matrix degrees of freedom.
"""

from .beamgrid import (
    BeamGrid,
    beam_count,
    beam_directions,
    beam_matrix,
    beam_pattern,
    beamforming_gain,
    spacing_regime,
    spatial_dof,
)
from .channel import (
    ChannelVector,
    ReactiveFieldWarning,
    UserLocation,
    exact_channel,
    exact_distances,
    farfield_response,
    nearfield_expansion_distance,
    nearfield_response,
)
from .correlation import (
    CorrelationMatrix,
    EigenSpectrum,
    NotPSDError,
    QuadratureSpec,
    ScatteringRegion,
    auto_quadrature,
    build_correlation,
    eigen_spectrum,
    monte_carlo_correlation,
    sample_channel,
    scattering_density,
)
from .fresnel import fresnel, fresnel_c, fresnel_s
from .geometry import SPEED_OF_LIGHT, ArrayGeometry, FieldBoundaries, antenna_positions, field_boundaries
from .kernels import BACKEND
from .spectrum import (
    EffectiveSweep,
    EndFireWarning,
    FresnelGainParams,
    GainProfile,
    SpatialSpectrum,
    closed_form_gain,
    dft_coefficients,
    dft_spectrum,
    effective_freq_sweep,
    effective_spatial_frequencies,
    exact_gain_profile,
    fresnel_gain_params,
    sample_wavefront,
)

__version__ = "0.1.0"
