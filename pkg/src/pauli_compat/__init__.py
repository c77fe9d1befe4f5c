"""Compatibility of unbiased binary qubit observables with Pauli and unital qubit channels."""

from .channels import (PauliChannel, QubitChannelMap, UnitalDecomposition, compose,
                       depolarizing, kraus_min, luders_z, measure_and_prepare, mix,
                       permuted_channels, phase_damping, unital_decompose)
from .compatibility import (CompatibilityVerdict, DualCertificate, OptimalPrimal,
                            block_decompose, dual_certificate, ellipsoid_sample,
                            is_compatible, optimal_primal, p_plus_minus, s_max,
                            sharpest_direction, simplex_region_sample,
                            unital_is_compatible, unital_s_max)
from .observables import (BinaryObservable, PostProcessing, UnbiasedBinaryObservable,
                          effect_of, noise_order, post_process)
from .verify import (busch_cross_check, certificate_check, instrument_consistency,
                     primal_search)

__version__ = "0.1.0"
