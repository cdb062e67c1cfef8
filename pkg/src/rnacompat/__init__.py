"""Counting and compatible-sequence analysis of constrained RNA secondary structures."""

from .asymptotics import CltParams, clt_params, dominant_singularity, gaussian_cdf
from .compatibility import (
    FractionResult,
    RatioVector,
    compatible_fraction,
    max_compatible_arcs,
    ratio_threshold,
)
from .sampler import SamplerState, empirical_arc_stats, sample_uniform, unrank
from .series import ArcCountTable, BivariateSeries, arc_cdf, closed_form_count, count_table
from .structure import (
    STANDARD_CLASSES,
    SecondaryStructure,
    Stack,
    StructureClass,
    Violation,
    dot_bracket_decode,
    dot_bracket_encode,
    enumerate_counts,
    validate,
)

__all__ = [
    "ArcCountTable",
    "BivariateSeries",
    "CltParams",
    "FractionResult",
    "STANDARD_CLASSES",
    "RatioVector",
    "SamplerState",
    "SecondaryStructure",
    "Stack",
    "StructureClass",
    "Violation",
    "arc_cdf",
    "closed_form_count",
    "clt_params",
    "compatible_fraction",
    "count_table",
    "dominant_singularity",
    "dot_bracket_decode",
    "dot_bracket_encode",
    "empirical_arc_stats",
    "enumerate_counts",
    "gaussian_cdf",
    "max_compatible_arcs",
    "ratio_threshold",
    "sample_uniform",
    "unrank",
    "validate",
]
