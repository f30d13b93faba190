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

from polynorm.conic import ConicProblem, export_sdpa, import_sdpa
from polynorm.errors import ConicError
from polynorm.sos import motzkin_form, sos_program


def _assert_same(left: ConicProblem, right: ConicProblem) -> None:
    assert left.block_sizes == right.block_sizes
    assert left.nonneg_count == right.nonneg_count
    assert left.free_count == right.free_count
    np.testing.assert_array_equal(left.b, right.b)
    np.testing.assert_array_equal(left.c, right.c)
    np.testing.assert_array_equal(left.a.toarray(), right.a.toarray())


def test__export_sdpa__round_trip_with_all_variable_kinds(tmp_path):
    a = np.array(
        [
            [1.0, 0.5, 0.0, 0.0, 2.0, 0.0],
            [0.0, -3.0, 1.0, 1.0, 0.0, -1.0],
        ]
    )
    problem = ConicProblem([2, 1], 1, 1, a, [1.0, -2.5], [0.0, 1.0, 0.0, 0.0, 0.5, 0.0])
    path = tmp_path / "problem.dat-s"

    export_sdpa(problem, path)

    _assert_same(import_sdpa(path), problem)


def test__export_sdpa__round_trip_of_compiled_sos_problem(tmp_path):
    problem = sos_program(motzkin_form(), r=1).compile()
    path = tmp_path / "motzkin.dat-s"

    export_sdpa(problem, path)

    _assert_same(import_sdpa(path), problem)


def test__export_sdpa__header_lines(tmp_path):
    problem = ConicProblem([2], 0, 1, np.array([[1.0, 0.0, 0.0, 1.0]]), [1.0])
    path = tmp_path / "p.dat-s"

    export_sdpa(problem, path)

    lines = path.read_text().splitlines()
    assert lines[0].startswith('"')
    assert lines[1] == "* polynorm free=1"
    assert lines[2:5] == ["1", "2", "2 -2"]


@pytest.mark.parametrize("text", ["1\n", "1\n1\n2\n{1.0}\n1 1 1 x 1.0\n", "1\n2\n-2 -2\n1.0\n"])
def test__import_sdpa__malformed(tmp_path, text):
    path = tmp_path / "bad.dat-s"
    path.write_text(text)

    with pytest.raises(ConicError):
        import_sdpa(path)


def test__import_sdpa__missing_file(tmp_path):
    with pytest.raises(ConicError):
        import_sdpa(tmp_path / "missing.dat-s")
