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
from pathlib import Path

import pytest

from polynorm.common.config_file import load_run_file, split_known
from polynorm.errors import InputFormatError
from polynorm.schema.config import RunConfig

FIXTURES_DIR = Path(__file__).parent / "fixtures"


def test__load_run_file__accepts_known_keys():
    values = load_run_file(FIXTURES_DIR / "run.yaml", RunConfig.model_fields)

    assert values == {
        "form": "sum_squares.json",
        "r_max": 2,
        "max_deg_q": 2,
        "emit_cert": "out/cert.json",
        "tolerances": {"eig_tol": 1e-8},
    }


def test__load_run_file__logs_unknown_keys(caplog):
    with caplog.at_level("WARNING"):
        load_run_file(FIXTURES_DIR / "run.yaml", RunConfig.model_fields)

    assert "ignoring unknown option 'colour'" in caplog.text


def test__load_run_file__empty_file(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("")

    assert load_run_file(path, RunConfig.model_fields) == {}


def test__load_run_file__rejects_non_mapping():
    with pytest.raises(InputFormatError, match="mapping"):
        load_run_file(FIXTURES_DIR / "not_a_mapping.yaml", RunConfig.model_fields)


def test__load_run_file__missing_file(tmp_path):
    with pytest.raises(OSError):
        load_run_file(tmp_path / "missing.yaml", RunConfig.model_fields)


def test__split_known():
    accepted, unknown = split_known({"b": 1, "a": 2, "z": 3, "y": 4}, ["a", "b"])

    assert accepted == {"b": 1, "a": 2}
    assert unknown == ["y", "z"]
