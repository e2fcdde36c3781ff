"""Exact measures, series transforms and decompositions for classical-group
representations at large rank.

The package computes, in exact rational arithmetic, the atomic measures
attached to signatures of the four classical series, the transform calculus
of their large-rank limits (additive and quantized convolutions, rank
projections, the exponential moment map), exact tensor and restriction
decompositions at desk scale, uniform tiling samplers for the branching
chains, and the experiment harness comparing the two.
"""

from .decomposition import DecompositionMeasure, delta_decomposition
from .errors import InvariantError, LieMeasuresError, SizeGuardError, ValidationError
from .measures import (DiscreteMeasure, MomentSequence, casimir_value_a,
                       counting_measure, hat_measure, kerov_measure_of_diagram,
                       kerov_transition_measure, pp_measure, uniform_01_moments)
from .profiles import Profile, build_regular_sequence, profile_limit_moments
from .series import TruncatedSeries, change_variable_log
from .signatures import RootSystem, Signature, dim_or_zero, weyl_dimension
from .transforms import (HSeries, InfDivParameters, RSeries, convolve,
                         h_from_moments, h_hat_from_h, inf_div_moments,
                         markov_krein, moments_from_q, moments_to_r, project,
                         q_map, r_to_moments, scaling_limit_check)

__version__ = "0.1.0"

__all__ = [
    "DecompositionMeasure", "DiscreteMeasure", "HSeries", "InfDivParameters",
    "InvariantError", "LieMeasuresError", "MomentSequence", "Profile",
    "RSeries", "RootSystem", "Signature", "SizeGuardError", "TruncatedSeries",
    "ValidationError", "build_regular_sequence", "casimir_value_a",
    "change_variable_log", "convolve", "counting_measure",
    "delta_decomposition", "dim_or_zero", "h_from_moments", "h_hat_from_h",
    "hat_measure", "inf_div_moments", "kerov_measure_of_diagram",
    "kerov_transition_measure", "markov_krein", "moments_from_q",
    "moments_to_r", "pp_measure", "profile_limit_moments", "project", "q_map",
    "r_to_moments", "scaling_limit_check", "uniform_01_moments",
    "weyl_dimension",
]
