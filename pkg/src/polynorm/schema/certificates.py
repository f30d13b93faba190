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

from typing import Any, Optional

import numpy as np
from pydantic import field_serializer, field_validator

from .base import Schema, array_to_list, as_float_array


class GramCertificate(Schema):
    """A monomial basis ``z`` and symmetric ``G`` with ``z^T G z`` equal to a target polynomial.

    For biform targets the basis entries are stacked ``(x, y)`` exponents and ``n_x`` says
    where the split is. ``residual`` and ``min_eig`` are always recomputed from ``basis`` and
    ``gram``, never copied from solver output.
    """

    basis: list[tuple[int, ...]]
    gram: np.ndarray
    residual: float
    min_eig: float
    valid: bool
    multiplier_r: int = 0
    n_x: Optional[int] = None

    @field_validator("gram", mode="before")
    @classmethod
    def _coerce_gram(cls, value: Any) -> np.ndarray:
        return as_float_array(value)

    @field_serializer("gram")
    def _serialize_gram(self, value: np.ndarray) -> Any:
        return array_to_list(value)


class ValidationReport(Schema):
    residual: float
    min_eig: float
    res_tol: float
    eig_tol: float
    valid: bool
