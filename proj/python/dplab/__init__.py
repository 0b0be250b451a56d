"""Solitary waves of the Degasperis-Procesi equation: profiles, spectra, stability."""

from ._core import (
    NumericalError,
    SolitonProfile,
    ValidationError,
    WaveParams,
    S_closed_form,
    S_quadrature,
    compute_profile,
    dSdc_closed_form,
    evolve_soliton,
    prufer_angle,
    qe_negativity,
    spectrum,
    stability_verdict,
)

__all__ = [
    "NumericalError",
    "SolitonProfile",
    "ValidationError",
    "WaveParams",
    "S_closed_form",
    "S_quadrature",
    "compute_profile",
    "dSdc_closed_form",
    "evolve_soliton",
    "prufer_angle",
    "qe_negativity",
    "spectrum",
    "stability_verdict",
]
