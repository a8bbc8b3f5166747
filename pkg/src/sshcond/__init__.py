"""Interband optical conductivity of the Su-Schrieffer-Heeger chain.

Direct Brillouin-zone quadrature, a second contour representation, and the
Mellin-derived zero-temperature asymptotic formula, with the special functions
and closed-form identities behind it.  Conductivities are in units of 2 sigma_0 a.
"""

from .asymptotics import (
    AsymptoticTerms,
    I_zero_temperature,
    I_zero_temperature_compact,
    sigma_asymptotic,
    sigma_resonance_limit,
)
from .bounds import RegimeReport, calibrate_c, check_R, correction_bound, fit_decay_rate, regime_diagnostics
from .errors import (
    BranchCutError,
    DegeneracyError,
    DomainError,
    ParameterError,
    PoleError,
    QuadratureError,
    RegimeWarning,
    SSHError,
)
from .mellin import MellinPoint, in_region_D, mellin_assembly_check, mellin_I_closed, residue_theta_one
from .model import ZERO_TEMPERATURE, EpsilonTriple, ModelParams, band_energy, epsilon_params
from .oracle import ConductivitySample, integral_I_contour, sigma_contour, sigma_from_I, sigma_interband_bz
from .presets import PRESETS, FigurePreset
from .quadrature import QuadratureSpec, QuadResult
from .sweep import SweepConfig, load_config, reproduce_figure, run_sweep

__version__ = "0.1.0"
