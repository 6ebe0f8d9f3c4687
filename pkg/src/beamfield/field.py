"""RMS electric field at probe positions and heat-map assembly.

A transmit element driven with complex weight w (in sqrt-watts) radiates
the far-field phasor

    E = sqrt(30) * w * exp(-j 2 pi d / lambda) / d      [V/m]

per the standard isotropic-radiator relation |E| = sqrt(30 P G) / d with
G = 1 (the factor 30 comes from the eta0 ~ 120 pi convention).  Within a
stream the element contributions add coherently; distinct streams carry
independent data and are mutually incoherent over the probe's averaging
time, so stream powers add.  Element-wise spherical-wave summation is
used everywhere (no array-factor shortcut): probe points can sit inside
the array's Fraunhofer distance, where only the exact summation is valid.
"""

import math
from dataclasses import dataclass

import numpy as np

from .channel import MODE_LOS, PATTERN_ISOTROPIC, propagation_gains
from .geometry import wavelength

#: Impedance of free space (ohms) used by the power/field conversion.
FREE_SPACE_IMPEDANCE = 376.730313668

#: Radiated-field constant: sqrt(30 P) / d for an isotropic element.
_FIELD_CONSTANT = math.sqrt(30.0)


@dataclass(frozen=True)
class FieldConstants:
    """Physical constants used by the field formulas; never mutated."""

    free_space_impedance: float = FREE_SPACE_IMPEDANCE
    speed_of_light: float = 299_792_458.0


@dataclass(frozen=True)
class HeatMap:
    """RMS E-field (V/m) per probe-grid point for one scenario."""

    grid: object
    values: np.ndarray
    scenario_id: str

    def __post_init__(self):
        if self.values.shape[0] != self.grid.n_points:
            raise ValueError("heat map has one value per grid point")
        if not np.all(np.isfinite(self.values)) or np.any(self.values < 0):
            raise ValueError("field values must be finite and non-negative")

    def as_grid_rows(self):
        """Values reshaped (n_y, n_x) following the grid's row-major order."""
        return self.values.reshape(len(self.grid.y_values), len(self.grid.x_values))


def _gain_row(tx_points, probe, frequency, room, mode, pattern):
    """Propagation factor exp(-j2 pi d/lambda)/d per element, images included.

    ``propagation_gains`` returns (lambda / 4 pi d) e^{-j...}; the field
    formula needs e^{-j...} / d, so rescale by 4 pi / lambda.
    """
    g = propagation_gains(tx_points, np.asarray(probe, dtype=float)[None, :],
                          frequency, room=room, mode=mode, pattern=pattern)
    return g[0] * (4.0 * math.pi / wavelength(frequency))


def element_field(tx, weight, probe, frequency, room=None, mode=MODE_LOS,
                  pattern=PATTERN_ISOTROPIC):
    """Complex field phasor (V/m) of one element at one probe point."""
    row = _gain_row(np.atleast_2d(np.asarray(tx, dtype=float)), probe, frequency,
                    room, mode, pattern)
    return complex(_FIELD_CONSTANT * weight * row[0])


def superpose_fields(array, precoder, probe, room, cfg, calibration=1.0):
    """RMS field (V/m) of the full precoded transmission at one probe point.

    Coherent element sum per stream, root-sum-square across streams.
    """
    row = _gain_row(array.active_positions(), probe, cfg.carrier_frequency,
                    room, cfg.mode, cfg.element_pattern)
    per_stream = _FIELD_CONSTANT * _per_stream_product(row[None, :], precoder.w)[0]
    return calibration * float(np.sqrt(np.sum(np.abs(per_stream) ** 2)))


def _per_stream_product(gains, w):
    """gains @ w evaluated one stream column at a time.

    Column-wise products keep a multi-stream map's squared values exactly
    equal to the sum of its single-stream maps (a blocked gemm may round
    differently than the per-column gemv).
    """
    out = np.empty((gains.shape[0], w.shape[1]), dtype=np.complex128)
    for s in range(w.shape[1]):
        out[:, s] = gains @ w[:, s]
    return out


def compute_heatmap(scenario, array, room, precoder, grid, cfg, calibration=1.0):
    """Evaluate the RMS field at every grid point; deterministic gather in grid order."""
    tx = array.active_positions()
    gains = propagation_gains(tx, grid.points, cfg.carrier_frequency, room=room,
                              mode=cfg.mode, pattern=cfg.element_pattern)
    gains *= 4.0 * math.pi / wavelength(cfg.carrier_frequency)
    per_stream = _FIELD_CONSTANT * _per_stream_product(gains, precoder.w)
    values = calibration * np.sqrt(np.sum(np.abs(per_stream) ** 2, axis=1))
    return HeatMap(grid=grid, values=values, scenario_id=scenario.id)


def power_to_field(received_power, frequency, probe_antenna_gain=1.0):
    """Convert probe-received power (W) to field strength (V/m).

    Inverts the effective-aperture relation: A_eff = lambda^2 G / 4 pi,
    S = P / A_eff, E = sqrt(S * eta0).
    """
    if received_power < 0:
        raise ValueError("received power must be non-negative")
    lam = wavelength(frequency)
    density = received_power * 4.0 * math.pi / (lam ** 2 * probe_antenna_gain)
    return math.sqrt(density * FREE_SPACE_IMPEDANCE)


def field_to_power(field_vpm, frequency, probe_antenna_gain=1.0):
    """Inverse of :func:`power_to_field`: incident power on the same aperture."""
    if field_vpm < 0:
        raise ValueError("field must be non-negative")
    lam = wavelength(frequency)
    density = field_vpm ** 2 / FREE_SPACE_IMPEDANCE
    return density * lam ** 2 * probe_antenna_gain / (4.0 * math.pi)
