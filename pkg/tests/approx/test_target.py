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
import json
import math

import numpy as np
import pytest

from polynorm.approx import TargetKind, TargetNorm, polar_polytope, random_octagon, read_polytope
from polynorm.errors import GeometryError, InputFormatError

SQUARE = [[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]]


@pytest.mark.parametrize(
    "text,p",
    [("p:1", 1.0), ("p:2.5", 2.5), ("p:inf", math.inf)],
)
def test__parse__p_norm(text, p):
    target = TargetNorm.parse(text, 3)

    assert target.kind == TargetKind.P_NORM
    assert target.p == p
    assert target.n == 3


@pytest.mark.parametrize(
    "text,n,match",
    [
        ("p:0.5", 2, "p must be >= 1"),
        ("p:abc", 2, "invalid p"),
        ("p:2", None, "needs the dimension"),
        ("sphere:1", 2, "unknown target"),
    ],
)
def test__parse__rejects(text, n, match):
    with pytest.raises(ValueError, match=match):
        TargetNorm.parse(text, n)


def test__p_norm__evaluates_batches_and_points():
    target = TargetNorm.p_norm(2, 1.0)

    assert target(np.array([3.0, -4.0])) == 7.0
    np.testing.assert_allclose(target(np.array([[1.0, 1.0], [0.0, -2.0]])), [2.0, 2.0])


def test__polar_polytope__square_is_diamond():
    polar = polar_polytope(SQUARE)

    expected = {(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)}
    assert {tuple(np.round(v, 12) + 0.0) for v in polar} == expected


def test__polytope__gauge_of_square_is_max_norm():
    target = TargetNorm.polytope(SQUARE)
    x = np.array([[0.5, -2.0], [3.0, 1.0]])

    np.testing.assert_allclose(target(x), np.max(np.abs(x), axis=1))


def test__polytope__rejects_asymmetric():
    with pytest.raises(GeometryError, match="origin-symmetric"):
        TargetNorm.polytope([[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]])


def test__polar_polytope__rejects_flat():
    with pytest.raises(GeometryError):
        polar_polytope([[1.0, 0.0], [-1.0, 0.0]])


def test__as_polytope():
    one = TargetNorm.p_norm(2, 1.0).as_polytope()
    cube = TargetNorm.p_norm(3, math.inf).as_polytope()

    assert one.kind == TargetKind.POLYTOPE and len(one.vertices) == 4
    assert cube.kind == TargetKind.POLYTOPE and len(cube.vertices) == 8
    assert TargetNorm.p_norm(2, 2.0).as_polytope() is None


def test__custom__wraps_evaluator():
    target = TargetNorm.custom(2, lambda x: 2.0 * np.linalg.norm(x, axis=1), name="twice")

    assert target(np.array([3.0, 4.0])) == 10.0
    assert target.as_polytope() is None
    assert target.name == "twice"


def test__random_octagon__deterministic_and_symmetric():
    first = random_octagon(5)
    second = random_octagon(5)

    np.testing.assert_array_equal(first.vertices, second.vertices)
    x = np.array([[0.3, -0.7], [1.0, 2.0]])
    np.testing.assert_allclose(first(x), first(-x))
    assert first.name == "octagon:5"


def test__read_polytope(tmp_path):
    path = tmp_path / "square.json"
    path.write_text(json.dumps({"vertices": SQUARE}))

    target = read_polytope(path)

    assert target.name == "square"
    assert target(np.array([2.0, 0.5])) == pytest.approx(2.0)


@pytest.mark.parametrize(
    "content,match",
    [
        ("{not json", "invalid JSON"),
        (json.dumps({"vertices": [[1.0, 0.0], [1.0]]}), "coordinates"),
        (json.dumps({"name": "x"}), "vertices"),
    ],
)
def test__read_polytope__malformed(tmp_path, content, match):
    path = tmp_path / "bad.json"
    path.write_text(content)

    with pytest.raises(InputFormatError, match=match):
        read_polytope(path)


def test__read_polytope__missing_file(tmp_path):
    with pytest.raises(InputFormatError, match="cannot read file"):
        read_polytope(tmp_path / "missing.json")
