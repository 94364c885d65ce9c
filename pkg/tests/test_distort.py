import numpy as np
import pytest

from nrmi.distort import (
    DistortionSpec,
    apply_distortion,
    distortion_ladder,
    gaussian_variates,
    uniform_open01,
)
from nrmi.errors import ConfigError
from nrmi.image import GrayImage
from conftest import make_blobs


class TestSpec:
    def test_unknown_kind(self):
        with pytest.raises(ConfigError):
            DistortionSpec("sparkle", 1.0)

    def test_negative_level(self):
        with pytest.raises(ConfigError):
            DistortionSpec("box-blur", -1.0)


class TestPrng:
    def test_uniforms_open_interval(self):
        u = uniform_open01(123, 10000)
        assert np.all(u > 0) and np.all(u < 1)
        assert abs(u.mean() - 0.5) < 0.02

    def test_gaussians_standardized(self):
        z = gaussian_variates(9, 200000)
        assert abs(z.mean()) < 0.01
        assert abs(z.std() - 1.0) < 0.01

    def test_streams_reproducible(self):
        assert np.array_equal(gaussian_variates(5, 100), gaussian_variates(5, 100))
        assert not np.array_equal(gaussian_variates(5, 100), gaussian_variates(6, 100))


class TestApply:
    @pytest.mark.parametrize("kind", ["gaussian-noise", "box-blur", "blockiness"])
    def test_level_zero_identity(self, kind):
        img = make_blobs(12, 12)
        assert apply_distortion(img, DistortionSpec(kind, 0.0, 1)) == img

    def test_blur_preserves_constant(self):
        img = GrayImage(np.full((10, 10), 88.0))
        out = apply_distortion(img, DistortionSpec("box-blur", 2.0))
        assert out == img

    def test_noise_deterministic(self):
        img = make_blobs(20, 20)
        spec = DistortionSpec("gaussian-noise", 8.0, seed=77)
        a = apply_distortion(img, spec)
        b = apply_distortion(img, spec)
        assert a == b

    def test_noise_changes_with_seed(self):
        img = make_blobs(20, 20)
        a = apply_distortion(img, DistortionSpec("gaussian-noise", 8.0, 1))
        b = apply_distortion(img, DistortionSpec("gaussian-noise", 8.0, 2))
        assert a != b

    def test_noise_stays_in_range(self):
        img = GrayImage(np.full((30, 30), 250.0))
        out = apply_distortion(img, DistortionSpec("gaussian-noise", 50.0, 3))
        assert out.pixels.max() <= 255.0 and out.pixels.min() >= 0.0

    def test_blockiness_tiles_become_means(self):
        arr = np.arange(36, dtype=float).reshape(6, 6)
        out = apply_distortion(GrayImage(arr), DistortionSpec("blockiness", 3.0))
        assert np.allclose(out.pixels[:3, :3], arr[:3, :3].mean())
        assert np.allclose(out.pixels[3:, 3:], arr[3:, 3:].mean())

    def test_blockiness_border_tiles_cropped(self):
        arr = np.arange(20, dtype=float).reshape(4, 5)
        out = apply_distortion(GrayImage(arr), DistortionSpec("blockiness", 3.0))
        assert np.allclose(out.pixels[3:, 3:], arr[3:, 3:].mean())

    def test_output_dims_preserved(self):
        img = make_blobs(14, 23)
        for kind, level in [("gaussian-noise", 4.0), ("box-blur", 1.0), ("blockiness", 4.0)]:
            out = apply_distortion(img, DistortionSpec(kind, level, 5))
            assert (out.rows, out.cols) == (14, 23)


class TestLadder:
    def test_first_level_zero_is_input(self):
        img = make_blobs(15, 15)
        out = distortion_ladder(img, "gaussian-noise", [0, 4, 8], seed=1)
        assert len(out) == 3
        assert out[0] == img

    def test_empty_levels(self):
        assert distortion_ladder(make_blobs(9, 9), "box-blur", []) == []

    def test_non_increasing_rejected(self):
        with pytest.raises(ConfigError):
            distortion_ladder(make_blobs(9, 9), "gaussian-noise", [4, 4])

    def test_noise_energy_grows(self):
        img = make_blobs(60, 60)
        for seed in range(5):
            ladder = distortion_ladder(img, "gaussian-noise", [2, 4, 8, 16, 32], seed)
            mse = [np.mean((d.pixels - img.pixels) ** 2) for d in ladder]
            assert all(b > a for a, b in zip(mse, mse[1:]))

    def test_ladder_deterministic(self):
        img = make_blobs(12, 12)
        a = distortion_ladder(img, "gaussian-noise", [2, 8], seed=9)
        b = distortion_ladder(img, "gaussian-noise", [2, 8], seed=9)
        assert a == b
