r"""Contain the truncation region finders and the region tables they
share."""

from __future__ import annotations

__all__ = [
    "BaseRegionFinder",
    "CountRegionTable",
    "DivideConquerRegionFinder",
    "LineSearchRegionFinder",
    "OverConditioningRegionFinder",
    "ResidualRegionTable",
    "brute_force_region_oracle",
    "ctrl_ransac_region",
    "default_search_range",
    "dp_count_regions",
    "is_region_finder_config",
    "line_search_region",
    "oc_region",
    "region_z1",
    "region_z2",
    "residual_region_table",
    "selected_anomalies",
    "setup_region_finder",
    "sweep_count_regions",
    "trajectory_cell",
]

from ransacsi.truncation.base import (
    BaseRegionFinder,
    is_region_finder_config,
    setup_region_finder,
)
from ransacsi.truncation.divide import DivideConquerRegionFinder, ctrl_ransac_region
from ransacsi.truncation.line_search import (
    LineSearchRegionFinder,
    default_search_range,
    line_search_region,
    selected_anomalies,
)
from ransacsi.truncation.oracle import brute_force_region_oracle
from ransacsi.truncation.over_conditioning import OverConditioningRegionFinder, oc_region
from ransacsi.truncation.tables import (
    CountRegionTable,
    ResidualRegionTable,
    dp_count_regions,
    region_z1,
    region_z2,
    residual_region_table,
    sweep_count_regions,
    trajectory_cell,
)
