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

from typing import Optional

from pydantic import model_validator

from .base import Field, Schema


class TermRecord(Schema):
    exponents: list[int] = Field(min_length=1)
    coeff: float


class FormFile(Schema):
    n_vars: int = Field(ge=1)
    degree: int = Field(ge=0)
    terms: list[TermRecord]


class MatrixFamilyFile(Schema):
    n: int = Field(ge=1)
    matrices: list[list[list[float]]] = Field(min_length=1)

    @model_validator(mode="after")
    def _check_shapes(self) -> MatrixFamilyFile:
        for k, matrix in enumerate(self.matrices):
            if len(matrix) != self.n or any(len(row) != self.n for row in matrix):
                raise ValueError(f"matrices[{k}] is not {self.n}x{self.n}")
        return self


class PolytopeFile(Schema):
    vertices: list[list[float]] = Field(min_length=2)
    name: Optional[str] = None

    @model_validator(mode="after")
    def _check_dimension(self) -> PolytopeFile:
        n = len(self.vertices[0])
        for k, vertex in enumerate(self.vertices):
            if len(vertex) != n:
                raise ValueError(f"vertices[{k}] has {len(vertex)} coordinates, expected {n}")
        return self
