"""Fisher information of realistic cameras measuring a small beam shift."""

from ._wvasat import (
    BeamSpec,
    ConfigError,
    DetectorConfig,
    FdCheck,
    FIResult,
    MeasurementScheme,
    NumericalDiagnosticError,
    PixelGrid,
    TruncationPolicy,
    aw_scan_csv,
    dump_preset,
    expected_counts,
    fi_sweep_csv,
    fisher_fd_check,
    fisher_total,
    mean_response,
    pixel_mean_photons,
    poisson_fisher_total,
    preset_names,
    profiles_csv,
)

__all__ = [
    "BeamSpec",
    "ConfigError",
    "DetectorConfig",
    "FdCheck",
    "FIResult",
    "MeasurementScheme",
    "NumericalDiagnosticError",
    "PixelGrid",
    "TruncationPolicy",
    "aw_scan_csv",
    "dump_preset",
    "expected_counts",
    "fi_sweep_csv",
    "fisher_fd_check",
    "fisher_total",
    "mean_response",
    "pixel_mean_photons",
    "poisson_fisher_total",
    "preset_names",
    "profiles_csv",
]
