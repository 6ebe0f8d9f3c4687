"""Zero-forcing precoding with per-user maximum-ratio receive combining.

Each user's four receive antennas are collapsed to a single stream by the
dominant direction of its channel block (power iteration on H_k H_k^H, so
no SVD dependency).  The precoder is the right pseudo-inverse of the
resulting effective user channel, with every stream scaled to an equal
share of the configured total transmit power.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateChannelError, SingularMatrixError, ZfInfeasibleError
from .linalg import right_pseudo_inverse

_POWER_ITERATIONS = 30
_POWER_TOL = 1e-12


@dataclass(frozen=True)
class PrecodingMatrix:
    """Transmit precoder: one column per user stream.

    ``w`` is (n_active_tx x n_streams); the squared Frobenius norm equals
    the scenario's total transmit power, split equally across streams
    (``per_stream_power`` watts each).
    """

    w: np.ndarray
    per_stream_power: float

    @property
    def n_streams(self):
        return self.w.shape[1]

    def total_power(self):
        return float(np.sum(np.abs(self.w) ** 2))


def _dominant_direction(block):
    """Unit-norm dominant left singular direction of a (m x n) block.

    Power iteration on A = block block^H; the phase is canonicalised so
    the largest-magnitude component is real and non-negative.
    """
    a = block @ block.conj().T
    if np.max(np.abs(a)) == 0.0:
        raise DegenerateChannelError("user channel block is identically zero")
    m = a.shape[0]
    v = np.ones(m, dtype=np.complex128) / np.sqrt(m)
    for _ in range(_POWER_ITERATIONS):
        w = a @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            break
        w /= norm
        if np.linalg.norm(w - v) <= _POWER_TOL:
            v = w
            break
        v = w
    pivot = int(np.argmax(np.abs(v)))
    phase = v[pivot] / abs(v[pivot])
    v = v / phase
    return v / np.linalg.norm(v)


def combining_vectors(h_est, scenario):
    """Per-user maximum-ratio combiners, one unit-norm 4-vector per user."""
    expected = scenario.n_users * scenario.antennas_per_ue
    if h_est.h.shape[0] != expected:
        raise ValueError(
            f"channel has {h_est.h.shape[0]} rows, expected {expected}"
        )
    return [_dominant_direction(h_est.ue_block(k)) for k in range(scenario.n_users)]


def effective_user_channel(h, combiners):
    """Stack c_k^H H_k rows into the (n_users x n_tx) effective channel."""
    rows = [combiners[k].conj() @ h.ue_block(k) for k in range(h.n_users)]
    return np.vstack(rows)


def zf_precoder(h_est, scenario, combiners=None):
    """Zero-forcing precoder from the estimated channel.

    W0 = G^H (G G^H)^-1 for the effective user channel G, then each
    column is scaled to carry total_tx_power / n_users watts.  For a
    single user this degenerates to maximum-ratio transmission.
    """
    if combiners is None:
        combiners = combining_vectors(h_est, scenario)
    g = effective_user_channel(h_est, combiners)
    try:
        w0 = right_pseudo_inverse(g)
    except SingularMatrixError as exc:
        raise ZfInfeasibleError(
            f"ZF infeasible: user {exc.pivot_index} is not separable from the "
            f"users before it (colinear effective channels)"
        ) from exc
    k = scenario.n_users
    per_stream = scenario.total_tx_power / k
    column_norms = np.linalg.norm(w0, axis=0)
    if np.any(column_norms == 0.0):
        raise ZfInfeasibleError("ZF produced a zero-power stream")
    w = w0 * (np.sqrt(per_stream) / column_norms)[None, :]
    return PrecodingMatrix(w=w, per_stream_power=per_stream)


def effective_channel(h_true, precoder, combiners):
    """Post-combining effective channel G W (n_users x n_users).

    With perfect CSI the off-diagonal entries vanish to numerical
    precision; with noisy CSI they quantify residual inter-user
    interference.
    """
    g = effective_user_channel(h_true, combiners)
    return g @ precoder.w


def interference_ratio(eff):
    """Max |off-diagonal| over min |diagonal| of an effective channel."""
    diag = np.abs(np.diag(eff))
    off = np.abs(eff - np.diag(np.diag(eff)))
    max_off = float(off.max()) if eff.shape[0] > 1 else 0.0
    return max_off / float(diag.min())
