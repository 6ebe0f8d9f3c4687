"""Massive-MIMO downlink beamforming and indoor RF-EMF exposure simulator.

Pipeline per scenario: generate the propagation channel, estimate CSI
from pilots, build the zero-forcing precoder with per-user receive
combining, transmit OFDM/64-QAM frames for the uncoded BER, and
superpose the radiated fields over a probe grid into an RMS E-field heat
map.  Heat maps feed the statistics (averaging, cuts, decay fits) and
the regulatory compliance checks.
"""

from .channel import (
    ChannelMatrix,
    ChannelModelConfig,
    estimate_csi,
    generate_channel,
    image_sources,
    los_gain,
    sweep_channels,
)
from .compliance import (
    DEFAULT_LIMITS_VPM,
    ComplianceReport,
    LimitTable,
    check,
    min_compliant_distance,
)
from .config import RunConfig, from_dict, load_config, validate
from .errors import (
    BeamfieldError,
    ConfigError,
    DegenerateChannelError,
    SingularMatrixError,
    UnknownRegionError,
    ZfInfeasibleError,
)
from .field import (
    FieldConstants,
    HeatMap,
    compute_heatmap,
    element_field,
    field_to_power,
    power_to_field,
    superpose_fields,
)
from .geometry import (
    ArrayGeometry,
    ProbeGrid,
    Room,
    Scenario,
    build_array,
    build_grid,
    far_field_distance,
    standard_scenarios,
    wavelength,
)
from .linalg import hermitian, matmul, right_pseudo_inverse, solve
from .ofdm import BerReport, OfdmConfig, demap_64qam, map_64qam, transmit_frame
from .precoding import (
    PrecodingMatrix,
    combining_vectors,
    effective_channel,
    zf_precoder,
)
from .runner import run, verify_manifest
from .stats import CutProfile, average_heatmaps, extract_cut, fit_decay, summary

__version__ = "0.1.0"

__all__ = [
    "ArrayGeometry", "BeamfieldError", "BerReport", "ChannelMatrix",
    "ChannelModelConfig", "ComplianceReport", "ConfigError", "CutProfile",
    "DEFAULT_LIMITS_VPM", "DegenerateChannelError", "FieldConstants", "HeatMap",
    "LimitTable", "OfdmConfig", "PrecodingMatrix", "ProbeGrid", "Room",
    "RunConfig", "Scenario", "SingularMatrixError", "UnknownRegionError",
    "ZfInfeasibleError", "average_heatmaps", "build_array", "build_grid",
    "check", "combining_vectors", "compute_heatmap", "demap_64qam",
    "effective_channel", "element_field", "estimate_csi", "extract_cut",
    "far_field_distance", "field_to_power", "fit_decay", "from_dict",
    "generate_channel", "hermitian", "image_sources", "load_config",
    "los_gain", "map_64qam", "matmul", "min_compliant_distance",
    "power_to_field", "right_pseudo_inverse", "run", "solve",
    "standard_scenarios", "summary", "superpose_fields", "sweep_channels",
    "transmit_frame", "validate", "verify_manifest", "wavelength",
    "zf_precoder",
]
