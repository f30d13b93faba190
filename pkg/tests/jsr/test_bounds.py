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

from polynorm.jsr import MatrixFamily, jsr_lower_bound, spectral_radius

NILPOTENT_PAIR = MatrixFamily([[[0.0, 2.0], [0.0, 0.0]], [[0.0, 0.0], [2.0, 0.0]]])


@pytest.mark.parametrize(
    "matrix,expected",
    [
        ([[0.0, 2.0], [0.0, 0.0]], 0.0),
        ([[4.0, 0.0], [0.0, 0.0]], 4.0),
        (np.eye(3), 1.0),
        ([[0.0, -1.0], [1.0, 0.0]], 1.0),
    ],
)
def test__spectral_radius(matrix, expected):
    assert spectral_radius(matrix) == pytest.approx(expected, rel=1e-10, abs=1e-12)


def test__spectral_radius__rejects_non_square():
    with pytest.raises(ValueError, match="square"):
        spectral_radius(np.ones((2, 3)))


def test__jsr_lower_bound__nilpotent_pair():
    # each matrix has spectral radius zero, but their product is diag(4, 0)
    assert jsr_lower_bound(NILPOTENT_PAIR, 1) == 0.0
    assert jsr_lower_bound(NILPOTENT_PAIR, 2) == pytest.approx(2.0, abs=1e-9)


def test__jsr_lower_bound__single_matrix():
    a = np.array([[0.5, 1.0], [0.0, -0.8]])

    for max_len in (1, 2, 3):
        assert jsr_lower_bound(MatrixFamily([a]), max_len) == pytest.approx(0.8)


def test__jsr_lower_bound__half_identity():
    assert jsr_lower_bound(MatrixFamily([0.5 * np.eye(2)]), 3) == pytest.approx(0.5)


def test__jsr_lower_bound__scales_with_family():
    rng = np.random.default_rng(0)
    family = MatrixFamily([rng.standard_normal((2, 2)) for _ in range(2)])

    assert jsr_lower_bound(family.scaled(-3.0), 3) == pytest.approx(3.0 * jsr_lower_bound(family, 3))


def test__jsr_lower_bound__survives_large_entries():
    family = MatrixFamily([1e120 * np.eye(2)])

    assert jsr_lower_bound(family, 4) == pytest.approx(1e120)


def test__jsr_lower_bound__rejects_zero_length():
    with pytest.raises(ValueError, match="max_len"):
        jsr_lower_bound(NILPOTENT_PAIR, 0)
