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
import csv

import numpy as np
import pytest

from polynorm.approx import read_samples, write_points
from polynorm.errors import InputFormatError


def test__read_samples__skips_comments_and_blank_lines(tmp_path):
    path = tmp_path / "samples.csv"
    path.write_text("# x1,x2,value\n1.0,0.0,1.0\n\n0.0,-2.0,2.0\n")

    points, values = read_samples(path)

    np.testing.assert_array_equal(points, [[1.0, 0.0], [0.0, -2.0]])
    np.testing.assert_array_equal(values, [1.0, 2.0])


@pytest.mark.parametrize(
    "content,line,match",
    [
        ("1.0,2.0,3.0\n1.0,2.0\n", 2, "expected 3 columns"),
        ("1.0,abc,3.0\n", 1, "not a number"),
        ("1.0,inf,3.0\n", 1, "not finite"),
        ("5.0\n", 1, "at least one coordinate"),
    ],
)
def test__read_samples__malformed(tmp_path, content, line, match):
    path = tmp_path / "bad.csv"
    path.write_text(content)

    with pytest.raises(InputFormatError, match=match) as exc_info:
        read_samples(path)

    assert exc_info.value.line == line


def test__read_samples__reports_column(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1.0,2.0,x\n")

    with pytest.raises(InputFormatError) as exc_info:
        read_samples(path)

    assert exc_info.value.field == "column 3"


def test__read_samples__empty_and_missing(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("# nothing here\n")

    with pytest.raises(InputFormatError, match="no samples"):
        read_samples(empty)
    with pytest.raises(InputFormatError, match="cannot read file"):
        read_samples(tmp_path / "missing.csv")


def test__write_points__with_header(tmp_path):
    path = tmp_path / "out" / "points.csv"

    write_points(path, np.array([[0.1, 0.2], [0.3, 0.4]]), header=["x1", "x2"])

    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["x1", "x2"]
    assert [float(v) for v in rows[2]] == [0.3, 0.4]
