import numpy as np
import pytest

from beamfield import Room, Scenario, build_array, build_grid
from beamfield.geometry import far_field_distance, ue_antenna_positions, wavelength


class TestBuildArray:
    def test_default_counts(self, array):
        assert array.n_elements == 128
        assert array.n_active == 64

    def test_single_element_at_origin(self):
        a = build_array(rows=1, cols=1, spacing=0.057, center=(0, 0, 0),
                        active_selection="all")
        assert a.n_elements == 1
        assert np.allclose(a.element_positions[0], (0, 0, 0))

    def test_2x2_neighbor_distances(self):
        d = 0.03
        a = build_array(rows=2, cols=2, spacing=d, center=(0, 0, 0),
                        active_selection="all")
        p = a.element_positions
        # row-major: (0,0),(0,1),(1,0),(1,1); neighbours along x and z.
        assert np.linalg.norm(p[0] - p[1]) == pytest.approx(d)
        assert np.linalg.norm(p[0] - p[2]) == pytest.approx(d)
        assert np.linalg.norm(p[1] - p[3]) == pytest.approx(d)

    def test_elements_in_xz_plane(self, array):
        assert np.all(array.element_positions[:, 1] == 0.0)

    def test_central_subarray_is_centred(self, array):
        active = array.active_positions()
        assert abs(active[:, 0].mean()) < 1e-12
        assert active[:, 2].mean() == pytest.approx(1.5)

    def test_central_policy_needs_8x8(self):
        with pytest.raises(ValueError, match="central-8x8"):
            build_array(rows=2, cols=2, spacing=0.05, center=(0, 0, 0),
                        active_selection="central-8x8")

    def test_explicit_mask_size_checked(self):
        with pytest.raises(ValueError, match="entries"):
            build_array(rows=2, cols=2, spacing=0.05, center=(0, 0, 0),
                        active_selection=np.ones(5, dtype=bool))

    def test_aperture_matches_active_extent(self, array):
        # central 8x8 at 0.057 m pitch: diagonal of a 7-gap square.
        expect = np.sqrt(2) * 7 * 0.057
        assert array.aperture() == pytest.approx(expect, rel=1e-12)


class TestStandardScenarios:
    def test_eight_scenarios(self, scenarios):
        assert [s.id for s in scenarios] == [str(i) for i in range(1, 9)]

    def test_scenario_1_single_user(self, scenarios):
        assert scenarios[0].ue_positions == ((0.0, 8.0),)

    def test_scenario_8_three_users(self, scenarios):
        assert scenarios[7].ue_positions == ((0.0, 8.0), (-3.0, 4.0), (3.0, 2.0))

    def test_all_coordinates(self, scenarios):
        expected = [
            ((0, 8),), ((-3, 4),), ((3, 2),),
            ((-3, 4), (3, 2)), ((0, 8), (0, 4)), ((0, 8), (-3, 4)),
            ((0, 8), (3, 2)), ((0, 8), (-3, 4), (3, 2)),
        ]
        got = [s.ue_positions for s in scenarios]
        assert got == [tuple((float(x), float(y)) for x, y in e) for e in expected]

    def test_four_antennas_each(self, scenarios):
        assert all(s.antennas_per_ue == 4 for s in scenarios)

    def test_positions_inside_room(self, scenarios, room):
        for s in scenarios:
            for x, y in s.ue_positions:
                assert room.in_footprint(x, y)

    def test_scenario_rejects_too_many_users(self):
        with pytest.raises(ValueError, match="between 1 and 8"):
            Scenario(id="x", ue_positions=tuple((0.0, float(i + 1)) for i in range(9)))


class TestBuildGrid:
    def test_default_56_points(self, grid):
        assert grid.n_points == 56
        assert len(grid.x_values) == 7
        assert len(grid.y_values) == 8

    def test_x_values(self, grid):
        assert np.allclose(grid.x_values, [-3, -2, -1, 0, 1, 2, 3])

    def test_single_point(self):
        g = build_grid(0, 0, 0, 0, 1.0, 1.5)
        assert g.n_points == 1
        assert np.allclose(g.points[0], (0, 0, 1.5))

    def test_row_major_y_then_x(self, grid):
        pts = grid.points
        # y ascending as the outer key, x ascending within each row.
        assert np.all(np.diff(pts[:, 1]) >= 0)
        first_row = pts[pts[:, 1] == 1.0]
        assert np.array_equal(first_row[:, 0], np.sort(first_row[:, 0]))
        assert np.allclose(pts[0][:2], (-3, 1))
        assert np.allclose(pts[-1][:2], (3, 8))

    def test_outside_room_rejected(self, room):
        with pytest.raises(ValueError, match="outside the room"):
            build_grid(-5, 5, 1, 8, 1.0, 1.5, room=room)

    def test_no_point_on_array_element(self, grid, array):
        diff = grid.points[:, None, :] - array.element_positions[None, :, :]
        assert not np.any(np.all(diff == 0.0, axis=2))


class TestRoom:
    def test_reflection_range_checked(self):
        with pytest.raises(ValueError, match="outside"):
            Room(wall_reflection=0.5)

    def test_per_wall_coefficients(self):
        r = Room(wall_reflection=(-0.1, -0.2, -0.3, -0.4))
        assert r.wall_reflections() == (-0.1, -0.2, -0.3, -0.4)

    def test_contains(self, room):
        assert room.contains((0, 0, 1.5))
        assert room.contains((3.75, 15, 3))
        assert not room.contains((3.76, 1, 1))
        assert not room.contains((0, -0.1, 1))


class TestHelpers:
    def test_wavelength_at_carrier(self):
        assert wavelength(2.63e9) == pytest.approx(0.11399, abs=5e-6)

    def test_ue_antenna_cluster(self):
        s = Scenario(id="t", ue_positions=((1.0, 5.0),))
        pos = ue_antenna_positions(s, 2.63e9, height=1.5)
        assert pos.shape == (4, 3)
        lam = wavelength(2.63e9)
        assert np.allclose(np.diff(pos[:, 0]), lam / 2)
        assert np.allclose(pos[:, 0].mean(), 1.0)
        assert np.all(pos[:, 1] == 5.0)
        assert np.all(pos[:, 2] == 1.5)

    def test_far_field_distance(self):
        assert far_field_distance(0.456, 0.114) == pytest.approx(2 * 0.456**2 / 0.114)
