"""Domain types, channel generation and physical-layer metrics.

All quantities are kept in linear SI units (watts, joules, meters); the
dB/dBm conversions happen once, at config load time in ``experiments``.
Rates are reported in bits; internal optimizers work in nats and divide by
ln 2 at the reporting boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np


# ---------------------------------------------------------------------------
# configuration


@dataclass
class SystemConfig:
    """All scalar system parameters, geometry and solver settings.

    Defaults correspond to the standard simulation setup: a 1 W (30 dBm)
    hybrid access point with M=6 antennas at the origin, an IRS with N=30
    elements at (4, 3) m, and K=4 single-antenna devices dropped uniformly
    in a disk of radius 2 m centered at (d_c, 0) = (8, 0) m.
    """

    # power / energy
    p0_max: float = 1.0                # W, HAP transmit power budget
    eta: float = 0.8                   # energy-harvest efficiency, in (0,1)
    n0: float = 1e-12                  # W, receiver noise power (-90 dBm)
    e_initial: float = 0.0             # J, battery charge at block start
    e_battery: float = np.inf          # J, battery capacity
    e_circuit: float = 1e-6            # J, per-user fixed circuit consumption
    block_time: float = 1.0            # s, transmission block (fixed at 1)

    # network size
    num_users: int = 4
    num_hap_antennas: int = 6
    num_irs_elements: int = 30
    weights: np.ndarray | None = None  # per-user rate weights, default all 1

    # path loss: gain = c0 * (d/d0)^(-alpha), c0 a linear power gain
    c0: float = 1e-2
    d0: float = 1.0
    alpha_hap_irs: float = 2.0
    alpha_irs_wd: float = 2.2
    alpha_hap_wd: float = 3.5

    # geometry (meters, 2-D)
    hap_pos: tuple[float, float] = (0.0, 0.0)
    irs_pos: tuple[float, float] = (4.0, 3.0)
    wd_center_distance: float = 8.0
    wd_radius: float = 2.0

    # solver settings
    tol: float = 1e-4                  # relative objective-change threshold
    tol_dual: float = 1e-6             # ellipsoid certificate threshold
    max_outer_iters: int = 50          # alternation cap per fixed t
    max_bcd_iters: int = 2000          # BCD/ellipsoid iteration cap
    gr_candidates: int = 100           # Gaussian-randomization samples
    sdp_tol: float = 1e-7              # relative duality-gap target
    t_search: str = "golden"           # {"golden", "grid"}
    t_grid_step: float = 0.05          # pre-scan (or grid-mode) resolution
    t_refine_tol: float = 1e-3         # golden-section bracket width
    ellipsoid_radius: float = 1e3      # dual search radius, normalized units
    phase_init: str = "ones"           # {"ones", "random"}
    warm_start_t: bool = True          # reuse phases across the t sweep
    prescan_max_outer: int = 0         # 0 = use max_outer_iters in pre-scan

    def __post_init__(self):
        if self.weights is None:
            self.weights = np.ones(self.num_users)
        self.weights = np.asarray(self.weights, dtype=float)
        if self.weights.shape != (self.num_users,):
            raise ValueError(
                f"weights must have length {self.num_users}, "
                f"got shape {self.weights.shape}"
            )
        self._validate()

    def _validate(self):
        if not self.p0_max > 0:
            raise ValueError("p0_max must be positive")
        if not 0 < self.eta < 1:
            raise ValueError("eta must lie in (0, 1)")
        if not self.n0 > 0:
            raise ValueError("n0 must be positive")
        if min(self.num_users, self.num_hap_antennas) < 1:
            raise ValueError("need at least one user and one HAP antenna")
        if self.num_irs_elements < 0:
            raise ValueError("num_irs_elements must be >= 0")
        if np.any(self.weights < 0):
            raise ValueError("weights must be nonnegative")
        if not (self.e_battery >= self.e_initial >= 0):
            raise ValueError("require e_battery >= e_initial >= 0")
        if self.e_circuit < 0:
            raise ValueError("e_circuit must be nonnegative")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        for name in ("c0", "d0", "wd_center_distance", "block_time"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.wd_radius < 0:
            raise ValueError("wd_radius must be nonnegative")
        if self.t_search not in ("golden", "grid"):
            raise ValueError("t_search must be 'golden' or 'grid'")
        if self.phase_init not in ("ones", "random"):
            raise ValueError("phase_init must be 'ones' or 'random'")

    def with_users(self, k: int) -> "SystemConfig":
        """Copy of the config resized to k users (weights reset to ones)."""
        return replace(self, num_users=k, weights=np.ones(k))


# ---------------------------------------------------------------------------
# channels


def path_loss(d, c0: float, d0: float, alpha: float):
    """Distance-dependent linear power gain c0 * (d/d0)^(-alpha)."""
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distance must be positive")
    if d0 <= 0 or c0 <= 0:
        raise ValueError("c0 and d0 must be positive")
    out = c0 * (d / d0) ** (-alpha)
    return float(out) if out.ndim == 0 else out


def place_users(config: SystemConfig, seed: int) -> np.ndarray:
    """Drop K users uniformly over the disk centered at (d_c, 0).

    Uniform over the disk area, hence the sqrt on the radial draw.
    Returns a (K, 2) coordinate array; deterministic in the seed.
    """
    rng = np.random.default_rng(seed)
    k = config.num_users
    radius = config.wd_radius * np.sqrt(rng.uniform(size=k))
    angle = rng.uniform(0.0, 2.0 * np.pi, size=k)
    center = np.array([config.wd_center_distance, 0.0])
    return center + np.stack([radius * np.cos(angle), radius * np.sin(angle)], axis=1)


@dataclass
class ChannelSet:
    """One fading realization with the cached lifted matrices.

    G is the M x N HAP-to-IRS matrix, ``g`` stacks the K IRS-to-device
    vectors as rows (K, N) and ``a`` the K HAP-to-device vectors (K, M).
    ``zeta[i] = G @ diag(g[i])`` and ``zeta_bar[i] = [zeta[i], a[i]]`` are
    the per-user lifts used by both optimizers.
    """

    G: np.ndarray
    g: np.ndarray
    a: np.ndarray
    zeta: np.ndarray = field(init=False)
    zeta_bar: np.ndarray = field(init=False)
    seed: int | None = None

    def __post_init__(self):
        self.G = np.asarray(self.G, dtype=complex)
        self.g = np.asarray(self.g, dtype=complex)
        self.a = np.asarray(self.a, dtype=complex)
        for arr, name in ((self.G, "G"), (self.g, "g"), (self.a, "a")):
            if not np.all(np.isfinite(arr.view(float))):
                raise ValueError(f"channel matrix {name} has non-finite entries")
        k = self.a.shape[0]
        # zeta[i] = G diag(g_i): column n of G scaled by g_i[n]
        self.zeta = self.G[None, :, :] * self.g[:, None, :]
        self.zeta_bar = np.concatenate([self.zeta, self.a[:, :, None]], axis=2)
        assert self.zeta_bar.shape == (k, self.G.shape[0], self.G.shape[1] + 1)

    @property
    def num_users(self) -> int:
        return self.a.shape[0]

    @property
    def num_antennas(self) -> int:
        return self.a.shape[1]

    @property
    def num_elements(self) -> int:
        return self.G.shape[1]

    def channel_gains(self) -> dict:
        """Aggregate link gains; diagnostic only."""
        return {
            "g0": float(np.linalg.norm(self.G) ** 2),
            "g_i": np.sum(np.abs(self.g) ** 2, axis=1),
            "h_i": np.sum(np.abs(self.a) ** 2, axis=1),
        }

    def without_irs(self) -> "ChannelSet":
        """Copy with the reflect path removed (G = 0); direct paths kept."""
        return ChannelSet(np.zeros_like(self.G), np.zeros_like(self.g),
                          self.a.copy(), seed=self.seed)


def _cn_matrix(rng: np.random.Generator, shape, variance) -> np.ndarray:
    """i.i.d. circularly-symmetric complex Gaussian entries, E|x|^2 = variance."""
    scale = np.sqrt(np.asarray(variance, dtype=float) / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def generate_channels(config: SystemConfig, wd_positions: np.ndarray,
                      seed: int) -> ChannelSet:
    """Draw one Rayleigh-fading realization for the given user drop.

    Every entry is zero-mean complex Gaussian with variance equal to the
    path loss of its link. The direct-path block ``a`` is drawn first so
    that it is invariant to the number of IRS elements (the without-IRS
    baseline then sees identical channels for any N).
    """
    wd_positions = np.asarray(wd_positions, dtype=float)
    hap = np.asarray(config.hap_pos, dtype=float)
    irs = np.asarray(config.irs_pos, dtype=float)
    d_hap_wd = np.linalg.norm(wd_positions - hap, axis=1)
    d_irs_wd = np.linalg.norm(wd_positions - irs, axis=1)
    d_hap_irs = np.linalg.norm(irs - hap)
    if np.any(d_hap_wd == 0) or np.any(d_irs_wd == 0):
        raise ValueError("user positions must differ from HAP/IRS positions")

    k, m, n = config.num_users, config.num_hap_antennas, config.num_irs_elements
    rng = np.random.default_rng(seed)
    var_a = path_loss(d_hap_wd, config.c0, config.d0, config.alpha_hap_wd)
    a = _cn_matrix(rng, (k, m), np.broadcast_to(var_a[:, None], (k, m)))
    var_g0 = path_loss(d_hap_irs, config.c0, config.d0, config.alpha_hap_irs)
    G = _cn_matrix(rng, (m, n), var_g0)
    var_g = path_loss(d_irs_wd, config.c0, config.d0, config.alpha_irs_wd)
    g = _cn_matrix(rng, (k, n), np.broadcast_to(var_g[:, None], (k, n)))
    return ChannelSet(G=G, g=g, a=a, seed=seed)


# ---------------------------------------------------------------------------
# plans and reports


@dataclass
class PhasePlan:
    """Unit-modulus IRS reflection vectors for the two protocol phases.

    v1 applies during energy transfer, v2 during information transmission.
    The reflection amplitude is fixed at 1.
    """

    v1: np.ndarray
    v2: np.ndarray

    def __post_init__(self):
        self.v1 = np.asarray(self.v1, dtype=complex)
        self.v2 = np.asarray(self.v2, dtype=complex)
        for v, name in ((self.v1, "v1"), (self.v2, "v2")):
            if v.size and np.max(np.abs(np.abs(v) - 1.0)) > 1e-12:
                raise ValueError(f"{name} entries must be unit-modulus")

    @classmethod
    def ones(cls, n: int) -> "PhasePlan":
        return cls(np.ones(n, dtype=complex), np.ones(n, dtype=complex))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "PhasePlan":
        th = rng.uniform(0.0, 2.0 * np.pi, size=(2, n))
        return cls(np.exp(1j * th[0]), np.exp(1j * th[1]))


@dataclass
class ActivePlan:
    """HAP-side variables: energy beamformer, receivers, powers, weights, duals."""

    W: np.ndarray       # (M, M) Hermitian PSD energy covariance
    F: np.ndarray       # (K, M) receive beamformers, row i is f_i
    P: np.ndarray       # (K,) user transmit powers, W
    q: np.ndarray       # (K,) WMMSE weights, positive
    mu: np.ndarray      # (K,) dual prices of the energy constraints
    mu0: float = 0.0    # dual price of the HAP power constraint

    def __post_init__(self):
        self.W = np.asarray(self.W, dtype=complex)
        self.F = np.asarray(self.F, dtype=complex)
        self.P = np.asarray(self.P, dtype=float)
        self.q = np.asarray(self.q, dtype=float)
        self.mu = np.asarray(self.mu, dtype=float)

    def validate(self, config: SystemConfig):
        """Assert the structural invariants; raises on violation."""
        herm_err = np.max(np.abs(self.W - self.W.conj().T))
        if herm_err > 1e-10 * max(1.0, np.max(np.abs(self.W))):
            raise ValueError(f"W not Hermitian (error {herm_err:.2e})")
        tr = float(np.trace(self.W).real)
        eigs = np.linalg.eigvalsh(0.5 * (self.W + self.W.conj().T))
        if eigs[0] < -1e-9 * max(tr, 1e-300):
            raise ValueError(f"W has negative eigenvalue {eigs[0]:.2e}")
        if tr > config.p0_max * (1 + 1e-9):
            raise ValueError(f"tr(W)={tr:.6g} exceeds budget {config.p0_max}")
        if np.any(self.P < 0):
            raise ValueError("negative user power")
        if np.any(self.q <= 0):
            raise ValueError("WMMSE weights must be positive")


@dataclass
class SolveReport:
    """Outcome of one full solve: rates, time split, trace and diagnostics."""

    wsr_bits: float
    t_star: float
    per_user_rates: np.ndarray
    outer_iters: int
    objective_trace: list
    kkt_residuals: dict
    scheme: str


# ---------------------------------------------------------------------------
# physical-layer metrics


def effective_channel(channels: ChannelSet, v: np.ndarray, i: int) -> np.ndarray:
    """Combined reflect-plus-direct channel zeta_i @ v + a_i for user i.

    Identical to the lifted form zeta_bar_i @ [v; 1].
    """
    v = np.asarray(v, dtype=complex)
    if v.shape != (channels.num_elements,):
        raise ValueError("phase vector length must equal the element count")
    return channels.zeta[i] @ v + channels.a[i]


def effective_channels(channels: ChannelSet, v: np.ndarray) -> np.ndarray:
    """All K combined channels at once, shape (K, M)."""
    v = np.asarray(v, dtype=complex)
    return channels.zeta @ v + channels.a


def harvested_energy(W: np.ndarray, v1: np.ndarray, channels: ChannelSet,
                     t: float, eta: float) -> np.ndarray:
    """Per-user harvested energy eta * t * b_i^H W b_i (noise neglected)."""
    b = effective_channels(channels, v1)
    quad = np.einsum("km,mn,kn->k", b.conj(), W, b).real
    return np.maximum(eta * t * quad, 0.0)


def usable_energy(e1: np.ndarray, config: SystemConfig) -> np.ndarray:
    """Battery state after harvesting: min(E0 + harvested, capacity)."""
    return np.minimum(config.e_initial + np.asarray(e1, dtype=float),
                      config.e_battery)


def _receive_cross_gains(F: np.ndarray, b_tilde: np.ndarray) -> np.ndarray:
    """C[i, j] = f_i^H b~_j for all pairs, shape (K, K)."""
    return F.conj() @ b_tilde.T


def sinr(F: np.ndarray, v2: np.ndarray, channels: ChannelSet,
         P: np.ndarray, n0: float) -> np.ndarray:
    """Post-combining SINR per user; 0 where P_i = 0 or the receiver is null."""
    P = np.asarray(P, dtype=float)
    if np.any(P < 0):
        raise ValueError("powers must be nonnegative")
    bt = effective_channels(channels, v2)
    c = _receive_cross_gains(np.asarray(F, dtype=complex), bt)
    gains = np.abs(c) ** 2                       # gains[i, j] = |f_i^H b~_j|^2
    sig = np.diag(gains) * P
    interf = gains @ P - np.diag(gains) * P
    noise = n0 * np.sum(np.abs(F) ** 2, axis=1)
    den = interf + noise
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(den > 0, sig / np.where(den > 0, den, 1.0), 0.0)
    return np.where(P > 0, out, 0.0)


def wsr(F: np.ndarray, v2: np.ndarray, channels: ChannelSet, P: np.ndarray,
        t: float, config: SystemConfig) -> float:
    """Weighted sum rate in bits: sum_i w_i (1-t) log2(1 + SINR_i)."""
    gamma = sinr(F, v2, channels, P, config.n0)
    return float(np.sum(config.weights * (1.0 - t) * np.log2(1.0 + gamma)))


def per_user_rates(F: np.ndarray, v2: np.ndarray, channels: ChannelSet,
                   P: np.ndarray, t: float, config: SystemConfig) -> np.ndarray:
    """Unweighted per-user rates (1-t) log2(1 + SINR_i)."""
    gamma = sinr(F, v2, channels, P, config.n0)
    return (1.0 - t) * np.log2(1.0 + gamma)


def mse(F: np.ndarray, v2: np.ndarray, channels: ChannelSet, P: np.ndarray,
        n0: float) -> np.ndarray:
    """Per-user decoding mean-square error for the given receivers."""
    P = np.asarray(P, dtype=float)
    bt = effective_channels(channels, v2)
    c = _receive_cross_gains(np.asarray(F, dtype=complex), bt)
    gains = np.abs(c) ** 2
    own = np.abs(np.diag(c) * np.sqrt(P) - 1.0) ** 2
    interf = gains @ P - np.diag(gains) * P
    noise = n0 * np.sum(np.abs(F) ** 2, axis=1)
    return own + interf + noise


def wmmse_objective(q: np.ndarray, e: np.ndarray, t: float,
                    weights: np.ndarray) -> float:
    """Weighted-MMSE surrogate sum_i w_i (1-t) (q_i e_i - ln q_i - 1), in nats.

    Minimizing over q at q_i = 1/e_i recovers the negative natural-log
    weighted sum rate when the receivers are MMSE-consistent.
    """
    q = np.asarray(q, dtype=float)
    if np.any(q <= 0):
        raise ValueError("WMMSE weights must be positive")
    e = np.asarray(e, dtype=float)
    return float(np.sum(weights * (1.0 - t) * (q * e - np.log(q) - 1.0)))
