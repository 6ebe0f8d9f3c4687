"""Downlink propagation channel and pilot-based CSI estimation.

The propagation model is free-space line of sight, optionally augmented
with first-order image sources for the six room surfaces (four walls,
floor, ceiling).  Each surface contributes a mirrored transmitter whose
ray is weighted by that surface's amplitude reflection coefficient, which
reproduces the dominant standing-wave structure of an indoor link without
a full ray tracer.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .geometry import ue_antenna_positions, wavelength

MODE_LOS = "los-only"
MODE_IMAGE_1 = "image-order-1"

PATTERN_ISOTROPIC = "isotropic"
PATTERN_COSINE = "cosine"

# Peak power gain of the broadside-cosine element pattern: a cos^2(theta)
# power pattern confined to the front half space integrates to 4*pi/6.
_COSINE_PEAK_GAIN = 6.0


@dataclass(frozen=True)
class ChannelModelConfig:
    """Propagation and CSI-acquisition settings.

    ``csi_snr_db = math.inf`` means perfect channel knowledge.  The seed
    drives only the CSI estimation noise; channel generation itself is a
    pure function of the geometry.
    """

    mode: str = MODE_LOS
    carrier_frequency: float = 2.63e9
    csi_snr_db: float = math.inf
    rng_seed: int = 0
    element_pattern: str = PATTERN_ISOTROPIC
    ue_height: float = 1.5

    def __post_init__(self):
        if self.carrier_frequency <= 0:
            raise ValueError("carrier_frequency must be positive")
        if self.mode not in (MODE_LOS, MODE_IMAGE_1):
            raise ValueError(f"unknown channel mode {self.mode!r}")
        if self.element_pattern not in (PATTERN_ISOTROPIC, PATTERN_COSINE):
            raise ValueError(f"unknown element pattern {self.element_pattern!r}")


@dataclass(frozen=True)
class ChannelMatrix:
    """Downlink channel between active transmit elements and UE antennas.

    ``h`` has one row per receive antenna (users in scenario order, each
    user's antennas contiguous) and one column per active transmit
    element.  ``subcarrier_index`` is the offset from the band centre in
    subcarrier units (0 = carrier frequency).
    """

    h: np.ndarray
    n_users: int
    antennas_per_ue: int
    subcarrier_index: int = 0

    def ue_block(self, k):
        """Rows of user ``k``: an (antennas_per_ue x n_tx) matrix."""
        m = self.antennas_per_ue
        return self.h[k * m:(k + 1) * m]


def los_gain(tx, rx, frequency):
    """Free-space complex gain (lambda / 4 pi d) * exp(-j 2 pi d / lambda)."""
    tx = np.asarray(tx, dtype=float)
    rx = np.asarray(rx, dtype=float)
    d = float(np.linalg.norm(rx - tx))
    if d == 0.0:
        raise ValueError("transmit and receive points coincide")
    lam = wavelength(frequency)
    return (lam / (4.0 * math.pi * d)) * np.exp(-2j * math.pi * d / lam)


def image_sources(room, tx, order=1):
    """First-order image sources of ``tx`` for the six room surfaces.

    Returns a list of (mirrored position, reflection coefficient) in the
    fixed order x-low wall, x-high wall, y-low wall, y-high wall, floor,
    ceiling.  ``order`` 0 returns an empty list.
    """
    if order not in (0, 1):
        raise ValueError("only reflection orders 0 and 1 are supported")
    tx = np.asarray(tx, dtype=float)
    if not room.contains(tx):
        raise ValueError(f"transmit point {tuple(tx)} lies outside the room")
    if order == 0:
        return []

    x, y, z = tx
    wx = room.width_x / 2.0
    w_lo, w_hi, w_near, w_far = room.wall_reflections()
    return [
        (np.array([-2 * wx - x, y, z]), w_lo),
        (np.array([2 * wx - x, y, z]), w_hi),
        (np.array([x, -y, z]), w_near),
        (np.array([x, 2 * room.length_y - y, z]), w_far),
        (np.array([x, y, -z]), room.floor_reflection),
        (np.array([x, y, 2 * room.height_z - z]), room.ceiling_reflection),
    ]


def _pattern_amplitude(tx_points, rx_points, pattern):
    """Element amplitude factor per (rx, tx) ray; boresight is +y.

    tx_points: (T, 3); rx_points: (R, 3).  Returns (R, T) real factors.
    """
    if pattern == PATTERN_ISOTROPIC:
        return 1.0
    delta = rx_points[:, None, :] - tx_points[None, :, :]
    d = np.linalg.norm(delta, axis=2)
    cos_theta = np.clip(delta[:, :, 1] / d, 0.0, None)
    return math.sqrt(_COSINE_PEAK_GAIN) * cos_theta


def propagation_gains(tx_points, rx_points, frequency, room=None,
                      mode=MODE_LOS, pattern=PATTERN_ISOTROPIC):
    """Complex gain matrix (n_rx x n_tx) of the configured ray model.

    Direct line-of-sight rays always contribute; in image mode each of
    the six first-order images of every transmit point adds a reflected
    ray scaled by its surface coefficient.
    """
    tx_points = np.atleast_2d(np.asarray(tx_points, dtype=float))
    rx_points = np.atleast_2d(np.asarray(rx_points, dtype=float))
    lam = wavelength(frequency)

    def ray(points):
        delta = rx_points[:, None, :] - points[None, :, :]
        d = np.linalg.norm(delta, axis=2)
        if np.any(d == 0.0):
            raise ValueError("a probe/receive point coincides with a transmit element")
        return (lam / (4.0 * math.pi * d)) * np.exp(-2j * math.pi * d / lam)

    g = ray(tx_points) * _pattern_amplitude(tx_points, rx_points, pattern)
    if mode == MODE_IMAGE_1:
        if room is None:
            raise ValueError("image-order-1 mode requires a room")
        mirrored = [image_sources(room, t, order=1) for t in tx_points]
        for surface in range(6):
            pts = np.array([mirrored[t][surface][0] for t in range(len(tx_points))])
            coeffs = np.array([mirrored[t][surface][1] for t in range(len(tx_points))])
            if np.all(coeffs == 0.0):
                continue
            g += coeffs[None, :] * ray(pts) * _pattern_amplitude(pts, rx_points, pattern)
    elif mode != MODE_LOS:
        raise ValueError(f"unknown channel mode {mode!r}")
    return g


def generate_channel(array, scenario, room, cfg, subcarrier_offset_hz=0.0):
    """Ground-truth downlink channel for one scenario.

    Rows are UE antennas (4 per user, users in scenario order), columns
    the active transmit elements in array order.  Deterministic in the
    geometry; ``subcarrier_offset_hz`` shifts the evaluation frequency
    for per-subcarrier sweeps.
    """
    for ux, uy in scenario.ue_positions:
        if not room.in_footprint(ux, uy):
            raise ValueError(f"UE position ({ux}, {uy}) lies outside the room")
    freq = cfg.carrier_frequency + subcarrier_offset_hz
    rx = ue_antenna_positions(scenario, cfg.carrier_frequency, height=cfg.ue_height)
    tx = array.active_positions()
    h = propagation_gains(tx, rx, freq, room=room, mode=cfg.mode,
                          pattern=cfg.element_pattern)
    if np.any(np.abs(h) >= 1.0):
        raise ValueError(
            "passive propagation produced a gain >= 1; a receive antenna is "
            "implausibly close to the array"
        )
    return ChannelMatrix(
        h=h,
        n_users=scenario.n_users,
        antennas_per_ue=scenario.antennas_per_ue,
        subcarrier_index=0,
    )


def sweep_channels(array, scenario, room, cfg, subcarrier_spacing, indices):
    """Per-subcarrier channels at carrier + index * spacing.

    The band is only ~1.5% fractional bandwidth, so the default pipeline
    uses the centre subcarrier (index 0) alone; this sweep exists to
    check that flatness.
    """
    out = []
    for idx in indices:
        cm = generate_channel(array, scenario, room, cfg,
                              subcarrier_offset_hz=idx * subcarrier_spacing)
        out.append(replace(cm, subcarrier_index=int(idx)))
    return out


def estimate_csi(true_channel, cfg):
    """Pilot-based channel estimate: the true channel plus Gaussian error.

    The per-entry error variance is mean(|H|^2) / 10^(csi_snr_db / 10);
    an infinite SNR returns an exact copy.  Reproducible via
    ``cfg.rng_seed``.
    """
    if not math.isfinite(cfg.csi_snr_db) and cfg.csi_snr_db > 0:
        return replace(true_channel, h=true_channel.h.copy())
    h = true_channel.h
    noise_var = float(np.mean(np.abs(h) ** 2)) / 10.0 ** (cfg.csi_snr_db / 10.0)
    rng = np.random.default_rng(cfg.rng_seed)
    scale = math.sqrt(noise_var / 2.0)
    noise = rng.normal(scale=scale, size=h.shape) + 1j * rng.normal(scale=scale, size=h.shape)
    return replace(true_channel, h=h + noise)
