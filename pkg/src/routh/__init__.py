"""Exact volumes of Routh-type simplices cut from an (n-1)-simplex."""
from .core import (
    Block,
    CycleRatios,
    RegimeError,
    VolumeReport,
    block_value,
    central_volume,
    closed_form_volume,
    cyclic_blocks,
    equal_ratio_volume,
    first_kind_volume,
    inclusion_exclusion_sum,
    inclusion_exclusion_volume,
    ratio_t,
    ratio_u,
    ratio_v,
    subset_volume,
)
from .exactnum import parse_rational, render

__version__ = "0.1.0"
