"""2D Morse oscillator, its supersymmetric partner and coherent states."""

from ._susymorse import (
    DegeneracyCollision,
    EmptyBasis,
    MorseParams,
    NormalizationError,
    coherent_coefficients,
    coherent_defect,
    counts,
    density,
    energy,
    laguerre,
    log_gamma,
    mu_basis,
    partner_pairs,
    partner_state,
    psi1d,
    r_eigenvalue,
    run_cli,
    scaled_spectrum,
    uncertainty,
)

__all__ = [
    "DegeneracyCollision",
    "EmptyBasis",
    "MorseParams",
    "NormalizationError",
    "coherent_coefficients",
    "coherent_defect",
    "counts",
    "density",
    "energy",
    "laguerre",
    "log_gamma",
    "mu_basis",
    "partner_pairs",
    "partner_state",
    "psi1d",
    "r_eigenvalue",
    "run_cli",
    "scaled_spectrum",
    "uncertainty",
]
