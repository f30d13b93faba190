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

import math
from typing import Any, Optional

import numpy as np
from pydantic import field_serializer

from polynorm.schema.base import Field, Schema, StrEnum, array_to_list


class SolverStatus(StrEnum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNDECIDED = "undecided"
    ITER_LIMIT = "iter_limit"


class ConicSolution(Schema):
    status: SolverStatus
    x: np.ndarray
    y: np.ndarray
    blocks: list[np.ndarray] = Field(default_factory=list)
    nonneg: np.ndarray = Field(default_factory=lambda: np.zeros(0))
    free: np.ndarray = Field(default_factory=lambda: np.zeros(0))
    objective: float = 0.0
    margin: Optional[float] = None
    iterations: int = 0
    primal_residual: float = math.inf
    dual_residual: float = math.inf
    gap: float = math.inf
    message: str = ""

    @property
    def feasible(self) -> bool:
        return self.status == SolverStatus.OPTIMAL

    @field_serializer("x", "y", "nonneg", "free")
    def _serialize_vector(self, value: np.ndarray) -> Any:
        return array_to_list(value)

    @field_serializer("blocks")
    def _serialize_blocks(self, value: list[np.ndarray]) -> Any:
        return [array_to_list(block) for block in value]

    def diagnostics(self) -> dict[str, Any]:
        """Solver summary suitable for a JSON report (no primal or dual vectors)."""
        margin = self.margin
        if margin is not None and math.isinf(margin):
            margin_out: Any = "inf"
        else:
            margin_out = margin
        return {
            "status": str(self.status),
            "iterations": self.iterations,
            "margin": margin_out,
            "objective": self.objective,
            "primal_residual": self.primal_residual,
            "dual_residual": self.dual_residual,
            "gap": self.gap,
            "message": self.message,
        }
