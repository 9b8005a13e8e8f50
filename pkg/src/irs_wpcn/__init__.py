"""Joint beamforming and power control for IRS-assisted multiuser MISO WPCNs.

The package is organized around one module per subsystem:

- ``model``: system configuration, channel generation, and the physical-layer
  metrics (harvested energy, SINR, rate, MSE).
- ``numerics``: Hermitian eigendecomposition, the ellipsoid method for
  non-smooth dual maximization, and golden-section search.
- ``sdp``: a dense primal-dual interior-point solver for complex Hermitian
  semidefinite programs with trace equality/inequality constraints.
- ``active_opt``: block-coordinate descent for the energy-beamformer /
  receiver / power sub-problem with ellipsoid search over the dual prices.
- ``passive_opt``: semidefinite relaxation plus Gaussian randomization for
  the two IRS phase vectors (energy and information phases).
- ``orchestrator``: the alternating outer loop, the search over the energy
  transfer duration, and the benchmark schemes.
- ``experiments``: config files, seeded sweeps, CSV persistence, SVG plots.
"""

from irs_wpcn.model import (
    SystemConfig,
    ChannelSet,
    PhasePlan,
    ActivePlan,
    SolveReport,
    path_loss,
    place_users,
    generate_channels,
    effective_channel,
    harvested_energy,
    usable_energy,
    sinr,
    wsr,
    mse,
    wmmse_objective,
)

__all__ = [
    "SystemConfig",
    "ChannelSet",
    "PhasePlan",
    "ActivePlan",
    "SolveReport",
    "path_loss",
    "place_users",
    "generate_channels",
    "effective_channel",
    "harvested_energy",
    "usable_energy",
    "sinr",
    "wsr",
    "mse",
    "wmmse_objective",
]
