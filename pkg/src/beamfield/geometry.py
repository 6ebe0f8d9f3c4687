"""Room, transmit array, user placements, probe grid and the built-in scenarios.

Coordinate convention: the array face lies in the x-z plane at y = 0 with
boresight along +y.  The room footprint is x in [-width/2, +width/2],
y in [0, length], z in [0, height]; the floor is z = 0.
"""

from dataclasses import dataclass, field

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s

#: Carrier used by the default indoor setup (Hz).
DEFAULT_CARRIER_HZ = 2.63e9

#: Half wavelength at the default carrier; the usual array design point (m).
DEFAULT_ELEMENT_SPACING_M = 0.057

#: Height of the array centre and of the probe plane (m).
DEFAULT_MOUNT_HEIGHT_M = 1.5


def wavelength(frequency_hz):
    """Free-space wavelength in metres."""
    if frequency_hz <= 0:
        raise ValueError("frequency must be positive")
    return SPEED_OF_LIGHT / frequency_hz


@dataclass(frozen=True)
class Room:
    """Rectangular indoor room with per-surface amplitude reflection coefficients.

    Reflection coefficients are real, in [-1, 0]; ``wall_reflection``
    applies to the four vertical walls (scalar or per-wall 4-sequence in
    order x-low, x-high, y-low, y-high).

    The array face lies in the y = 0 wall plane, so that wall's image
    source coincides with the array itself and scales the direct path by
    (1 + coefficient), a crude stand-in for the panel/wall interaction of
    a wall-mounted array.  Set the y-low coefficient to 0 to model a
    fully occluded back wall instead.
    """

    length_y: float = 15.0
    width_x: float = 7.5
    height_z: float = 3.0
    wall_reflection: float | tuple = -0.6
    floor_reflection: float = -0.4
    ceiling_reflection: float = -0.4

    def __post_init__(self):
        if min(self.length_y, self.width_x, self.height_z) <= 0:
            raise ValueError("room dimensions must be positive")
        for coeff in (*self.wall_reflections(), self.floor_reflection, self.ceiling_reflection):
            if not -1.0 <= coeff <= 0.0:
                raise ValueError(f"reflection coefficient {coeff} outside [-1, 0]")

    def wall_reflections(self):
        """Coefficients for the four walls: (x-low, x-high, y-low, y-high)."""
        w = self.wall_reflection
        if np.isscalar(w):
            return (float(w),) * 4
        w = tuple(float(v) for v in w)
        if len(w) != 4:
            raise ValueError("wall_reflection must be a scalar or a 4-sequence")
        return w

    def contains(self, point, tol=1e-9):
        """True if the 3-D point lies inside the room (boundary inclusive)."""
        x, y, z = point
        return (
            abs(x) <= self.width_x / 2 + tol
            and -tol <= y <= self.length_y + tol
            and -tol <= z <= self.height_z + tol
        )

    def in_footprint(self, x, y, tol=1e-9):
        """True if the (x, y) position lies inside the floor footprint."""
        return abs(x) <= self.width_x / 2 + tol and -tol <= y <= self.length_y + tol


@dataclass(frozen=True)
class ArrayGeometry:
    """Planar transmit array in the x-z plane, boresight along +y.

    ``element_positions`` has shape (n_elements, 3) in row-major grid
    order; ``active_mask`` selects the transmitting subset.
    """

    element_positions: np.ndarray
    active_mask: np.ndarray
    element_spacing: float
    carrier_frequency: float = DEFAULT_CARRIER_HZ

    @property
    def n_elements(self):
        return self.element_positions.shape[0]

    @property
    def n_active(self):
        return int(np.count_nonzero(self.active_mask))

    def active_positions(self):
        """Positions of the active elements, (n_active, 3)."""
        return self.element_positions[self.active_mask]

    def aperture(self):
        """Largest pairwise distance between active elements (metres)."""
        pos = self.active_positions()
        if pos.shape[0] < 2:
            return 0.0
        diff = pos[:, None, :] - pos[None, :, :]
        return float(np.sqrt((diff ** 2).sum(axis=2)).max())


@dataclass(frozen=True)
class Scenario:
    """User placement and power budget for one beamforming case."""

    id: str
    ue_positions: tuple
    antennas_per_ue: int = 4
    total_tx_power: float = 1.0

    def __post_init__(self):
        if not 1 <= len(self.ue_positions) <= 8:
            raise ValueError("scenario must place between 1 and 8 users")
        if self.antennas_per_ue < 1:
            raise ValueError("antennas_per_ue must be positive")
        if self.total_tx_power <= 0:
            raise ValueError("total_tx_power must be positive")

    @property
    def n_users(self):
        return len(self.ue_positions)


@dataclass(frozen=True)
class ProbeGrid:
    """Regular lattice of probe positions at a fixed height.

    Points are ordered row-major: y ascending, x ascending within each
    row, so serialized artifacts are byte-for-byte reproducible.
    """

    points: np.ndarray
    spacing: float
    probe_height: float
    x_values: np.ndarray = field(repr=False, default=None)
    y_values: np.ndarray = field(repr=False, default=None)

    @property
    def n_points(self):
        return self.points.shape[0]

    def same_lattice(self, other):
        return self.points.shape == other.points.shape and np.array_equal(
            self.points, other.points
        )


def build_array(
    rows=16,
    cols=8,
    spacing=DEFAULT_ELEMENT_SPACING_M,
    center=(0.0, 0.0, DEFAULT_MOUNT_HEIGHT_M),
    active_selection="central-8x8",
    carrier_frequency=DEFAULT_CARRIER_HZ,
):
    """Build a rows x cols planar array centred at ``center``.

    Rows run along z, columns along x; element order is row-major.
    ``active_selection`` is ``"all"``, ``"central-8x8"`` (the central 64
    elements) or an explicit boolean mask of length rows*cols.
    """
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    if spacing <= 0:
        raise ValueError("spacing must be positive")
    cx, cy, cz = (float(v) for v in center)

    xs = (np.arange(cols) - (cols - 1) / 2.0) * spacing + cx
    zs = (np.arange(rows) - (rows - 1) / 2.0) * spacing + cz
    positions = np.empty((rows * cols, 3))
    for r in range(rows):
        for c in range(cols):
            positions[r * cols + c] = (xs[c], cy, zs[r])

    if isinstance(active_selection, str):
        if active_selection == "all":
            mask = np.ones(rows * cols, dtype=bool)
        elif active_selection == "central-8x8":
            if rows < 8 or cols < 8:
                raise ValueError(
                    f"central-8x8 needs at least an 8x8 array, got {rows}x{cols}"
                )
            mask = np.zeros((rows, cols), dtype=bool)
            r0 = rows // 2 - 4
            c0 = cols // 2 - 4
            mask[r0:r0 + 8, c0:c0 + 8] = True
            mask = mask.reshape(-1)
        else:
            raise ValueError(f"unknown active_selection policy {active_selection!r}")
    else:
        mask = np.asarray(active_selection, dtype=bool).reshape(-1)
        if mask.size != rows * cols:
            raise ValueError(
                f"active mask has {mask.size} entries, expected {rows * cols}"
            )

    if np.count_nonzero(mask) > rows * cols:
        raise ValueError("active count exceeds element count")

    positions.setflags(write=False)
    mask.setflags(write=False)
    return ArrayGeometry(
        element_positions=positions,
        active_mask=mask,
        element_spacing=float(spacing),
        carrier_frequency=float(carrier_frequency),
    )


# UE coordinates (x, y) of the eight built-in single/multi-user cases.
_STANDARD_UE_LAYOUTS = (
    ((0.0, 8.0),),
    ((-3.0, 4.0),),
    ((3.0, 2.0),),
    ((-3.0, 4.0), (3.0, 2.0)),
    ((0.0, 8.0), (0.0, 4.0)),
    ((0.0, 8.0), (-3.0, 4.0)),
    ((0.0, 8.0), (3.0, 2.0)),
    ((0.0, 8.0), (-3.0, 4.0), (3.0, 2.0)),
)


def standard_scenarios(total_tx_power=1.0):
    """The eight built-in beamforming scenarios, ids "1" through "8"."""
    return [
        Scenario(
            id=str(i + 1),
            ue_positions=layout,
            antennas_per_ue=4,
            total_tx_power=total_tx_power,
        )
        for i, layout in enumerate(_STANDARD_UE_LAYOUTS)
    ]


def build_grid(
    x_min=-3.0,
    x_max=3.0,
    y_min=1.0,
    y_max=8.0,
    spacing=1.0,
    height=DEFAULT_MOUNT_HEIGHT_M,
    room=None,
):
    """Build a rectangular probe lattice, endpoints inclusive.

    The default call reproduces the 7 x 8 = 56-point measurement grid.
    When ``room`` is given the grid must lie inside it.
    """
    if x_max < x_min or y_max < y_min:
        raise ValueError("grid extent must satisfy x_max >= x_min and y_max >= y_min")
    if spacing <= 0:
        raise ValueError("spacing must be positive")

    xs = _lattice_axis(x_min, x_max, spacing)
    ys = _lattice_axis(y_min, y_max, spacing)

    if room is not None:
        for x, y in ((x_min, y_min), (x_max, y_max)):
            if not room.in_footprint(x, y) or not 0 <= height <= room.height_z:
                raise ValueError(
                    f"grid corner ({x}, {y}) at height {height} lies outside the room"
                )

    points = np.empty((len(xs) * len(ys), 3))
    k = 0
    for y in ys:
        for x in xs:
            points[k] = (x, y, height)
            k += 1
    points.setflags(write=False)
    xs.setflags(write=False)
    ys.setflags(write=False)
    return ProbeGrid(
        points=points,
        spacing=float(spacing),
        probe_height=float(height),
        x_values=xs,
        y_values=ys,
    )


def _lattice_axis(lo, hi, step):
    n = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(n)


def ue_antenna_positions(scenario, carrier_frequency, height=DEFAULT_MOUNT_HEIGHT_M):
    """3-D positions of every receive antenna, grouped per user.

    Each user carries ``antennas_per_ue`` vertical dipoles in a half-
    wavelength line along x centred on the user position, all at the
    given height.  Shape: (n_users * antennas_per_ue, 3).
    """
    lam = wavelength(carrier_frequency)
    m = scenario.antennas_per_ue
    offsets = (np.arange(m) - (m - 1) / 2.0) * (lam / 2.0)
    out = np.empty((scenario.n_users * m, 3))
    for k, (ux, uy) in enumerate(scenario.ue_positions):
        for i in range(m):
            out[k * m + i] = (ux + offsets[i], uy, height)
    return out


def far_field_distance(aperture_m, wavelength_m):
    """Fraunhofer distance 2 D^2 / lambda for aperture D."""
    return 2.0 * aperture_m ** 2 / wavelength_m
