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
from enum import Enum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class StrEnum(str, Enum):  # a shim until we can drop 3.10 support
    def __str__(self) -> str:
        return str(self.value)


class Schema(BaseModel):
    model_config = ConfigDict(
        from_attributes=True,
        arbitrary_types_allowed=True,
    )


def as_float_array(value: Any) -> np.ndarray:
    """Coerces nested lists (e.g. from JSON) into a float ndarray."""
    return np.asarray(value, dtype=float)


def array_to_list(value: np.ndarray) -> Any:
    return np.asarray(value, dtype=float).tolist()


__all__ = ("Schema", "Field", "StrEnum", "as_float_array", "array_to_list")
