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

import json
from collections.abc import Iterator, Sequence
from pathlib import Path
from typing import Union

import numpy as np
from numpy.typing import ArrayLike
from pydantic import ValidationError

from polynorm.errors import FormError, InputFormatError
from polynorm.schema.forms import MatrixFamilyFile


class MatrixFamily:
    """A nonempty set of real ``n x n`` matrices ``{A_1, ..., A_m}``."""

    def __init__(self, matrices: Sequence[ArrayLike]):
        mats = [np.array(a, dtype=float) for a in matrices]
        if not mats:
            raise FormError("a matrix family needs at least one matrix")
        n = mats[0].shape[0] if mats[0].ndim == 2 else 0
        for k, a in enumerate(mats):
            if a.ndim != 2 or a.shape != (n, n):
                raise FormError(f"matrix {k} has shape {a.shape}, expected ({n}, {n})")
        self.matrices = tuple(mats)
        self.n = n

    def __len__(self) -> int:
        return len(self.matrices)

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.matrices)

    def __getitem__(self, index: int) -> np.ndarray:
        return self.matrices[index]

    def scaled(self, factor: float) -> MatrixFamily:
        return MatrixFamily([factor * a for a in self.matrices])

    def max_norm(self) -> float:
        """``max_i |A_i|_2``, an upper bound on the joint spectral radius."""
        return max(float(np.linalg.norm(a, 2)) for a in self.matrices)

    def to_dict(self) -> dict[str, object]:
        return MatrixFamilyFile(n=self.n, matrices=[a.tolist() for a in self.matrices]).model_dump()

    def __repr__(self) -> str:
        return f"MatrixFamily(m={len(self)}, n={self.n})"


def read_matrices(path: Union[str, Path]) -> MatrixFamily:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as e:
        raise InputFormatError(str(path), f"cannot read file: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise InputFormatError(str(path), f"invalid JSON ({e.msg})", line=e.lineno) from e
    try:
        record = MatrixFamilyFile.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise InputFormatError(str(path), first["msg"], field=".".join(str(p) for p in first["loc"]) or None) from e
    return MatrixFamily(record.matrices)
