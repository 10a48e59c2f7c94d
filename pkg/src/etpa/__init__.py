"""Entangled two-photon absorption: optimal states, Kramers-Kronig structure and band-limited profiles."""
from ._backend import BACKEND
from .config import dump_absorber, load_absorber, parse_absorber
from .errors import (BandViolation, BoundaryLevel, ConfigError, DomainError, EtpaError,
                     InBandLevelPresent, NegativeFrequencySupport, PoleInBand, PoleOnGrid,
                     QuadratureNotConverged, VerificationFailed, ZeroCoupling,
                     ZeroDipoleVector)
from .freq_domain import (CONVENTION_K, SpectralAmplitude, gamma_spectrum_full,
                          gamma_spectrum_offresonant, kk_consistency_check, resonant_branches,
                          truncate_physical)
from .level_model import (AbsorberSpec, CouplingSet, EffectiveStates, IntermediateLevel,
                          LevelClass, classify_levels, coupling_set, derive_effective_states,
                          effective_sigma_tp, zeeman_pair)
from .special_functions import (GammaProfile, ci, cin, gamma_m, gamma_profile, log_weight, si,
                                sinc_approx, summed_profile)
from .time_domain import (DelayScan, GaussianEntangled, IdealEntangled, ProductGaussian,
                          delay_scan, dipole_correlation, intermediate_overlap,
                          optimal_amplitude, tpa_probability_general, tpa_probability_ideal)

__version__ = "0.1.0"
