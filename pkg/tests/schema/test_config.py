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
from pydantic import ValidationError

from polynorm.schema.base import StrEnum
from polynorm.schema.config import TOLERANCE_FLOOR, RunConfig, Subcommand, Tolerances


def test__str_enum__prints_value():
    assert str(Subcommand.CERTIFY) == "certify"
    assert f"{Subcommand.JSR}" == "jsr"
    assert issubclass(Subcommand, StrEnum)


def test__tolerances__defaults():
    tolerances = Tolerances()

    assert (tolerances.eig_tol, tolerances.res_tol, tolerances.not_sos_margin) == (1e-7, 1e-7, 1e-6)
    assert tolerances.max_iters == 200


@pytest.mark.parametrize("field", ["eig_tol", "res_tol", "not_sos_margin", "solver_tol"])
def test__tolerances__floor(field):
    assert getattr(Tolerances(**{field: TOLERANCE_FLOOR}), field) == TOLERANCE_FLOOR
    with pytest.raises(ValidationError, match="tolerances must be >="):
        Tolerances(**{field: TOLERANCE_FLOOR / 10})


def test__tolerances__max_iters_positive():
    with pytest.raises(ValidationError):
        Tolerances(max_iters=0)


def test__run_config__defaults_and_coercion():
    config = RunConfig.model_validate({"subcommand": "sos", "form": "motzkin.json", "r": "1"})

    assert config.subcommand == Subcommand.SOS
    assert config.form == Path("motzkin.json")
    assert config.r == 1
    assert config.degrees == [2, 4, 6, 8]
    assert config.tolerances == Tolerances()
    assert config.report is None


@pytest.mark.parametrize("degrees", [[2, 3], [0], [4, -2]])
def test__run_config__rejects_bad_degrees(degrees):
    with pytest.raises(ValidationError, match="degrees must be even"):
        RunConfig(subcommand=Subcommand.JSR, degrees=degrees)


@pytest.mark.parametrize(
    "values",
    [
        {"subcommand": "prove"},
        {"subcommand": "certify", "r_max": -1},
        {"subcommand": "approximate", "method": "spline"},
        {"subcommand": "jsr", "tol": 0.0},
        {"subcommand": "fit", "resolution": 2},
        {"subcommand": "sos", "threads": 0},
    ],
)
def test__run_config__rejects_invalid_values(values):
    with pytest.raises(ValidationError):
        RunConfig.model_validate(values)


def test__run_config__nested_tolerances():
    config = RunConfig.model_validate({"subcommand": "sos", "tolerances": {"eig_tol": 1e-9}})

    assert config.tolerances.eig_tol == 1e-9
    assert config.tolerances.res_tol == 1e-7
