"""Wireless information and power transfer: harvesting models, capacity
regions, receiver trade-offs, network simulation and multitone waveforms."""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    ConvergenceError,
    DomainError,
    InfeasibleEnergyError,
    UnsupportedError,
    WiptError,
)
from .rectenna import RectennaModel, harvest_dc, harvest_dc_waveform
from .robust import NominalDistribution, TiltedDistribution, worst_case_cdf, worst_case_distribution
from .capacity import (
    CapacityPoint,
    EnergyAlphabet,
    binary_capacity,
    max_entropy_capacity,
    region_boundary,
)
from .curves import RateEnergyCurve, RateEnergyPoint
from .receivers import SimoChannel, as_points, outer_bound, ps_region, ts_region
from .netgeom import (
    NetworkConfig,
    NetworkMetrics,
    NetworkRealization,
    adapt_rho_with_sic,
    analytic_coverage,
    evaluate,
    sample_realization,
)
from .waveform import (
    CompositeSignal,
    MultitoneWaveform,
    harvest_multitone,
    info_integrity_check,
    papr,
    synthesize,
)
