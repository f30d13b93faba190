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
from __future__ import annotations

from pathlib import Path
from typing import Literal, Optional

from pydantic import field_validator

from .base import Field, Schema, StrEnum

TOLERANCE_FLOOR = 1e-12


class Tolerances(Schema):
    eig_tol: float = 1e-7
    res_tol: float = 1e-7
    not_sos_margin: float = 1e-6
    solver_tol: float = 1e-8
    max_iters: int = Field(default=200, ge=1)

    @field_validator("eig_tol", "res_tol", "not_sos_margin", "solver_tol")
    @classmethod
    def _at_least_floor(cls, value: float) -> float:
        if value < TOLERANCE_FLOOR:
            raise ValueError(f"tolerances must be >= {TOLERANCE_FLOOR:g}, got {value:g}")
        return value


DEFAULT_TOLERANCES = Tolerances()


class Subcommand(StrEnum):
    CERTIFY = "certify"
    APPROXIMATE = "approximate"
    FIT = "fit"
    JSR = "jsr"
    SOS = "sos"


class RunConfig(Schema):
    subcommand: Subcommand
    form: Optional[Path] = None
    samples: Optional[Path] = None
    matrices: Optional[Path] = None
    target: Optional[str] = None
    dimension: int = Field(default=2, ge=1)
    degree: Optional[int] = None
    degrees: list[int] = Field(default_factory=lambda: [2, 4, 6, 8])
    r: int = Field(default=0, ge=0)
    r_max: int = Field(default=3, ge=0)
    deg_q: int = Field(default=0, ge=0)
    max_deg_q: int = Field(default=4, ge=0)
    hessian: bool = False
    convex: bool = False
    method: Literal["fit", "moment"] = "fit"
    n_samples: int = Field(default=200, ge=1)
    resolution: int = Field(default=360, ge=3)
    upper_bound: bool = False
    tol: float = Field(default=1e-3, gt=0)
    seed: int = 0
    tolerances: Tolerances = Field(default_factory=Tolerances)
    report: Optional[Path] = None
    emit_cert: Optional[Path] = None
    emit_levelset: Optional[Path] = None
    emit_figure: Optional[Path] = None
    export_sdpa: Optional[Path] = None
    verbosity: int = Field(default=0, ge=0)
    threads: Optional[int] = Field(default=None, ge=1)

    @field_validator("degrees")
    @classmethod
    def _even_degrees(cls, value: list[int]) -> list[int]:
        for d in value:
            if d < 2 or d % 2:
                raise ValueError(f"degrees must be even and >= 2, got {d}")
        return value
