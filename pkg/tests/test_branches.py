"""Branch values, cut detection and the grid invariants."""

import numpy as np
import pytest

from ptdyn.branches import branch_grid, branch_value
from ptdyn.linalg import DomainError


class TestBranchValue:
    def test_real_unbroken_point(self):
        assert abs(branch_value(2.0, 1.0) - 1.7320508075688772) < 1e-14

    def test_imaginary_at_origin(self):
        assert abs(branch_value(0.0, 1.0) - 1.0j) < 1e-15

    def test_negative_branch_negates(self):
        assert abs(branch_value(2.0, 1.0, "negative") + 1.7320508075688772) < 1e-14
        kc = np.array([0.3 + 0.2j, -1.5 + 0.9j, 2.2 - 0.1j])
        np.testing.assert_array_equal(branch_value(kc, 1.0, "negative"),
                                      -branch_value(kc, 1.0, "positive"))

    def test_square_recovers_argument(self):
        rng = np.random.default_rng(3)
        kc = rng.uniform(-3, 3, 200) + 1j * rng.uniform(-3, 3, 200)
        for br in ("positive", "negative"):
            v = branch_value(kc, 1.0, br)
            rel = np.abs(v * v - (kc * kc - 1.0)) / np.maximum(
                np.abs(kc * kc - 1.0), 1e-12)
            assert rel.max() < 1e-12

    def test_conjugation_symmetry_off_cut(self):
        rng = np.random.default_rng(4)
        kc = rng.uniform(-3, 3, 100) + 1j * rng.uniform(0.1, 3, 100)
        v_conj = branch_value(np.conj(kc), 1.0)
        np.testing.assert_allclose(v_conj, np.conj(branch_value(kc, 1.0)),
                                   rtol=1e-13, atol=1e-13)

    def test_positive_ray_matches_real_root(self):
        k = np.linspace(1.2, 4.0, 50)
        np.testing.assert_allclose(branch_value(k, 1.0), np.sqrt(k * k - 1.0),
                                   rtol=1e-14)

    def test_rejects_unknown_branch(self):
        with pytest.raises(DomainError):
            branch_value(1.0, 1.0, "both")


class TestBranchGrid:
    def test_cut_confined_to_segment(self):
        grid = branch_grid(1.0, (-2, 2), (-2, 2), 201)
        ii, jj = np.where(grid.discontinuity_mask)
        assert len(ii) > 0
        re_hit = grid.re_k_axis[ii]
        im_hit = grid.im_k_axis[jj]
        cell = 4.0 / 200.0
        assert np.abs(im_hit).max() <= cell * 1.0001
        assert np.abs(re_hit).max() <= 1.0 + cell * 1.0001

    def test_cut_covers_segment_interior(self):
        grid = branch_grid(1.0, (-2, 2), (-2, 2), 201)
        ii, jj = np.where(grid.discontinuity_mask)
        cell = 4.0 / 200.0
        near_axis = np.abs(grid.im_k_axis[jj]) <= cell * 1.0001
        covered = np.unique(np.round(grid.re_k_axis[ii][near_axis], 9))
        interior = grid.re_k_axis[(np.abs(grid.re_k_axis) < 1.0 - 1e-9)
                                  & (np.abs(grid.re_k_axis) > cell / 2.0)]
        assert np.isin(np.round(interior, 9), covered).all()

    def test_branch_points_recorded(self):
        grid = branch_grid(1.0, (-2, 2), (-2, 2), 64)
        assert grid.branch_points == (1.0 + 0.0j, -1.0 + 0.0j)

    def test_gamma_zero_has_no_cut(self):
        grid = branch_grid(0.0, (-2, 2), (-2, 2), 101)
        assert not grid.discontinuity_mask.any()
        kk = grid.re_k_axis[:, None] + 1j * grid.im_k_axis[None, :]
        np.testing.assert_allclose(grid.values, kk, atol=1e-13)

    def test_negative_branch_mirrors_values(self):
        pos = branch_grid(1.0, (-2, 2), (-2, 2), 64)
        neg = branch_grid(1.0, (-2, 2), (-2, 2), 64, branch="negative")
        np.testing.assert_array_equal(neg.values, -pos.values)

    def test_argument_range(self):
        grid = branch_grid(1.0, (-2, 2), (-2, 2), 64)
        assert grid.argument.max() <= np.pi
        assert grid.argument.min() > -np.pi

    def test_resolution_guard(self):
        with pytest.raises(DomainError):
            branch_grid(1.0, (-2, 2), (-2, 2), 8)
        with pytest.raises(DomainError):
            branch_grid(1.0, (2, 2), (-2, 2), 32)
