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
"""Standard-form conic problems over PSD blocks, nonnegative scalars and free scalars.

The variable vector is laid out as

* for every PSD block of size ``n``, its upper triangle in row-major order
  (``X[0,0], X[0,1], ..., X[0,n-1], X[1,1], ...``), ``n (n + 1) / 2`` entries;
* then the nonnegative scalars;
* then the free scalars.

Equalities are ``A @ vec(vars) = b`` on that vector, so the coefficient of an off-diagonal
entry ``X[i,j]`` already accounts for its symmetric twin. The objective is ``c @ vec(vars)``.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import Optional

import numpy as np
import scipy.sparse as sp
from numpy.typing import ArrayLike

from polynorm.errors import ConicError


def svec_size(n: int) -> int:
    return n * (n + 1) // 2


def svec_index(n: int, i: int, j: int) -> int:
    """Position of ``X[i, j]`` (``i <= j``) inside the packed upper triangle of an ``n x n`` block."""
    if i > j:
        i, j = j, i
    return i * n - i * (i - 1) // 2 + (j - i)


def pack_block(matrix: np.ndarray) -> np.ndarray:
    n = matrix.shape[0]
    rows, cols = np.triu_indices(n)
    return np.asarray(matrix[rows, cols], dtype=float)


def unpack_block(packed: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros((n, n))
    rows, cols = np.triu_indices(n)
    out[rows, cols] = packed
    out[cols, rows] = packed
    return out


class ConicProblem:
    """``min c.x  s.t.  A x = b,  PSD blocks >= 0,  nonnegatives >= 0,  free scalars unrestricted``.

    Instances are treated as immutable once built.
    """

    def __init__(
        self,
        block_sizes: Sequence[int],
        nonneg_count: int,
        free_count: int,
        a: ArrayLike | sp.spmatrix,
        b: ArrayLike,
        c: Optional[ArrayLike] = None,
    ):
        self.block_sizes = tuple(int(k) for k in block_sizes)
        if any(k < 1 for k in self.block_sizes):
            raise ConicError(f"block sizes must be positive, got {self.block_sizes}")
        if nonneg_count < 0 or free_count < 0:
            raise ConicError("variable counts must be nonnegative")
        self.nonneg_count = int(nonneg_count)
        self.free_count = int(free_count)

        self.b = np.asarray(b, dtype=float).ravel()
        n_cols = self.n_variables
        self.a = sp.csr_matrix(a, dtype=float) if self.b.size else sp.csr_matrix((0, n_cols))
        if self.a.shape != (self.b.size, n_cols):
            raise ConicError(f"A has shape {self.a.shape}, expected ({self.b.size}, {n_cols})")
        self.c = np.zeros(n_cols) if c is None else np.asarray(c, dtype=float).ravel()
        if self.c.size != n_cols:
            raise ConicError(f"objective has {self.c.size} entries, expected {n_cols}")

    @property
    def n_rows(self) -> int:
        return int(self.b.size)

    @property
    def block_offsets(self) -> list[int]:
        offsets, pos = [], 0
        for n in self.block_sizes:
            offsets.append(pos)
            pos += svec_size(n)
        return offsets

    @property
    def psd_size(self) -> int:
        return sum(svec_size(n) for n in self.block_sizes)

    @property
    def cone_size(self) -> int:
        return self.psd_size + self.nonneg_count

    @property
    def n_variables(self) -> int:
        return self.cone_size + self.free_count

    @property
    def cone_order(self) -> int:
        """Barrier parameter: total block dimension plus the number of nonnegatives."""
        return sum(self.block_sizes) + self.nonneg_count

    def is_feasibility(self) -> bool:
        return not np.any(self.c)

    def trace_vector(self) -> np.ndarray:
        """Indicator of block diagonals and nonnegatives: ``e @ x`` is the total trace."""
        e = np.zeros(self.n_variables)
        for n, offset in zip(self.block_sizes, self.block_offsets):
            for i in range(n):
                e[offset + svec_index(n, i, i)] = 1.0
        e[self.psd_size : self.cone_size] = 1.0
        return e

    def split(self, x: np.ndarray) -> tuple[list[np.ndarray], np.ndarray, np.ndarray]:
        """Splits a variable vector into symmetric block matrices, nonnegatives and free scalars."""
        blocks = [
            unpack_block(x[offset : offset + svec_size(n)], n)
            for n, offset in zip(self.block_sizes, self.block_offsets)
        ]
        return blocks, x[self.psd_size : self.cone_size].copy(), x[self.cone_size :].copy()

    def describe(self) -> dict[str, int]:
        return {
            "rows": self.n_rows,
            "blocks": len(self.block_sizes),
            "largest_block": max(self.block_sizes, default=0),
            "nonneg": self.nonneg_count,
            "free": self.free_count,
            "nonzeros": int(self.a.nnz),
        }

    def __repr__(self) -> str:
        return (
            f"ConicProblem(blocks={list(self.block_sizes)}, nonneg={self.nonneg_count}, "
            f"free={self.free_count}, rows={self.n_rows})"
        )
