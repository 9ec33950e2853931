"""Example reproduction, shift sweeps, random campaigns and reference oracles."""
from .campaign import (
    CampaignSummary,
    elsner_campaign,
    hermitian_sharpness_campaign,
    random_campaign,
    route_equivalence_campaign,
    sandwich_campaign,
)
from .example1 import example1
from .instances import Instance, InstanceSpec, materialize, random_instance
from .oracles import oracle_angle_min
from .sweep import EXAMPLE1_GRID, Grid, SweepRecord, default_grid, tau_sweep

__all__ = [
    "CampaignSummary", "EXAMPLE1_GRID", "Grid", "Instance", "InstanceSpec", "SweepRecord",
    "default_grid", "elsner_campaign", "example1", "hermitian_sharpness_campaign",
    "materialize", "oracle_angle_min", "random_campaign", "random_instance",
    "route_equivalence_campaign", "sandwich_campaign", "tau_sweep",
]
