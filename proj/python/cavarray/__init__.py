"""Collective cavity scattering by one-dimensional atom arrays."""

from ._cavarray import (
    ArrayGeometry,
    Atom,
    AtomSample,
    CavityField,
    CavityModification,
    CavityParams,
    ChannelAmplitude,
    ConfigError,
    DriveParams,
    EtaChannels,
    ExcitedManifold,
    LevelScheme,
    LorentzianFit,
    MagicResult,
    McConfig,
    McEstimate,
    MfDistribution,
    NumericalError,
    PolarizationResult,
    ScatterModel,
    SpectrumCurve,
    SpectrumPoint,
    TransmissionPoint,
    __version__,
    absorption_weight,
    analytic_constructive,
    analytic_destructive,
    cavity_field,
    channel_amplitudes,
    debye_waller,
    default_grid,
    dipole_weight,
    dispersion_weight,
    dispersive_regime,
    drive_rabi,
    eta,
    exact_linear_response,
    find_magic_detuning,
    lorentzian_fit,
    low_saturation,
    mc_photon_number,
    mean_cos,
    mean_cos_sq,
    mode_coupling,
    polarization_decompose,
    predicted_center,
    raman_amplitude,
    raman_rayleigh_ratio,
    rayleigh_amplitude,
    rayleigh_spread,
    sample_atoms,
    scheme_from_json,
    scheme_to_json,
    sweep_spectrum,
    wigner3j,
    wigner6j,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
