"""Boson Sampling from number states and two-mode squeezed states."""

__version__ = "0.1.0"

from .bosonsampling import BosonSamplingInstance, full_distribution, outcome_probability, sample_outputs
from .errors import DegenerateProjectionError, HeraldTimeoutError, SizeLimitError
from .fock import FockDistribution, enumerate_collision_free, enumerate_patterns, sample_pattern, variation_distance
from .gaussian import (
    HeraldEvent,
    SourceParams,
    chi_max,
    herald_prob_any,
    herald_prob_asymptotic,
    herald_prob_specific,
    sample_heralds,
    tmsv_photon_pmf,
    unheralded_output_distribution,
)
from .linalg import check_unitary, haar_unitary, submatrix
from .permanent import permanent_naive, permanent_ryser
from .pipeline import ExperimentConfig, GbsEvent, postselection_efficiency, run_adaptive, run_gbs, sample_rate
from .rng import RngStream
