"""Harmonic Gaussian time-frequency analysis.

Hermite-windowed transforms of sampled signals, their energy distributions
and marginals, two reconstruction routes, and Wigner-Ville / Gabor
reference distributions.
"""

from .diagnostics import CoverageWarning, HGTFWarning, LeakageWarning, SamplingWarning
from .hgf import TFPoint, WindowSpec, phi, phi_ft, window_moments
from .signal import MomentReport, Signal, Spectrum, forward_ft, generate, inverse_ft, moments
from .transform import TFGrid, analyze, energy_density, energy_of_grid, marginal_freq, marginal_time
from .reconstruct import coefficients_at, reconstruct_integral, reconstruct_series
from .baselines import gabor_transform, stft, wigner_ville

__version__ = "0.1.0"

__all__ = [
    "Signal", "Spectrum", "MomentReport", "WindowSpec", "TFPoint", "TFGrid",
    "phi", "phi_ft", "window_moments", "forward_ft", "inverse_ft", "moments", "generate",
    "analyze", "energy_density", "energy_of_grid", "marginal_time", "marginal_freq",
    "coefficients_at", "reconstruct_series", "reconstruct_integral",
    "wigner_ville", "stft", "gabor_transform",
    "HGTFWarning", "LeakageWarning", "SamplingWarning", "CoverageWarning",
]
