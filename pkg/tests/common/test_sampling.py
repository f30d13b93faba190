# Copyright 2026 The polynorm Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
import numpy as np
import pytest

from polynorm.common.sampling import axis_points, sample_sphere, sobol_bisphere, sobol_sphere


def test__sample_sphere__unit_rows_and_deterministic():
    points = sample_sphere(3, 100, seed=5)

    np.testing.assert_allclose(np.linalg.norm(points, axis=1), 1.0)
    np.testing.assert_array_equal(points, sample_sphere(3, 100, seed=5))
    assert not np.array_equal(points, sample_sphere(3, 100, seed=6))


def test__sample_sphere__rejects_empty():
    with pytest.raises(ValueError, match="count"):
        sample_sphere(2, 0)


def test__sobol_sphere__count_not_power_of_two():
    points = sobol_sphere(2, 100, seed=1)

    assert points.shape == (100, 2)
    np.testing.assert_allclose(np.linalg.norm(points, axis=1), 1.0)


def test__sobol_bisphere__independent_unit_halves():
    x, y = sobol_bisphere(2, 3, 64)

    assert x.shape == (64, 2) and y.shape == (64, 3)
    np.testing.assert_allclose(np.linalg.norm(x, axis=1), 1.0)
    np.testing.assert_allclose(np.linalg.norm(y, axis=1), 1.0)


def test__axis_points():
    np.testing.assert_array_equal(axis_points(2), [[1, 0], [0, 1], [-1, 0], [0, -1]])
