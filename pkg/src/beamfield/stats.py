"""Statistics over heat maps: averaging, cut extraction, decay fits, summaries."""

from dataclasses import dataclass

import numpy as np

from .field import HeatMap


@dataclass(frozen=True)
class CutProfile:
    """Field samples along one grid column (fixed x), ordered by distance.

    ``distances`` are the y coordinates of the column's points, i.e. the
    range from the array plane at y = 0.
    """

    axis: str
    fixed_value: float
    distances: np.ndarray
    fields: np.ndarray

    def __post_init__(self):
        if self.distances.shape != self.fields.shape:
            raise ValueError("distances and fields must have matching shapes")
        if np.any(np.diff(self.distances) < 0):
            raise ValueError("samples must be sorted by ascending distance")
        if np.any(self.fields < 0):
            raise ValueError("field samples must be non-negative")

    @property
    def samples(self):
        """(distance, field) pairs, ascending distance."""
        return list(zip(self.distances.tolist(), self.fields.tolist()))


@dataclass(frozen=True)
class SummaryStats:
    """Order statistics of one heat map; p95 is nearest-rank."""

    max: float
    max_position: tuple
    min: float
    mean: float
    p95: float


def average_heatmaps(maps):
    """Pointwise arithmetic mean of heat maps sharing one grid.

    Addends are sorted per grid point before summation, so the result is
    exactly invariant under permutations of the input list.
    """
    if not maps:
        raise ValueError("cannot average an empty list of heat maps")
    first = maps[0]
    for m in maps[1:]:
        if not first.grid.same_lattice(m.grid):
            raise ValueError("heat maps must share an identical grid")
    stack = np.stack([m.values for m in maps])
    mean = np.sort(stack, axis=0).sum(axis=0) / len(maps)
    return HeatMap(grid=first.grid, values=mean, scenario_id="average")


def extract_cut(heatmap, x, tol=1e-9):
    """Column of the heat map at a fixed x, as a distance-ordered profile."""
    xs = heatmap.grid.x_values
    matches = np.nonzero(np.abs(xs - x) <= tol)[0]
    if matches.size == 0:
        order = np.argsort(np.abs(xs - x))
        near = ", ".join(f"{xs[i]:g}" for i in order[:2])
        raise ValueError(f"x = {x:g} is not a grid column; nearest columns: {near}")
    col = int(matches[0])
    rows = heatmap.as_grid_rows()
    ys = np.asarray(heatmap.grid.y_values, dtype=float)
    return CutProfile(
        axis="x-fixed",
        fixed_value=float(xs[col]),
        distances=ys.copy(),
        fields=rows[:, col].copy(),
    )


def fit_decay(profile, min_distance=None):
    """Least-squares power-law fit log(field) = exponent * log(distance) + c.

    Returns (exponent, r_squared).  ``min_distance`` drops samples closer
    than the array's far-field radius, where the 1/d law does not bind.
    """
    d = profile.distances
    f = profile.fields
    if min_distance is not None:
        keep = d >= min_distance
        d, f = d[keep], f[keep]
    if d.size < 3:
        raise ValueError(f"need at least 3 samples to fit a decay law, got {d.size}")
    if np.any(d <= 0) or np.any(f <= 0):
        raise ValueError("decay fit requires strictly positive distances and fields")
    log_d = np.log(d)
    log_f = np.log(f)
    slope, intercept = np.polyfit(log_d, log_f, 1)
    predicted = slope * log_d + intercept
    ss_res = float(np.sum((log_f - predicted) ** 2))
    ss_tot = float(np.sum((log_f - np.mean(log_f)) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return float(slope), r_squared


def summary(heatmap):
    """Exact order statistics of a heat map (nearest-rank p95, no interpolation)."""
    v = heatmap.values
    if v.size == 0:
        raise ValueError("heat map is empty")
    idx = int(np.argmax(v))
    pos = heatmap.grid.points[idx]
    rank = max(int(np.ceil(0.95 * v.size)), 1)
    p95 = float(np.sort(v)[rank - 1])
    return SummaryStats(
        max=float(v[idx]),
        max_position=(float(pos[0]), float(pos[1])),
        min=float(v.min()),
        mean=float(v.mean()),
        p95=p95,
    )
