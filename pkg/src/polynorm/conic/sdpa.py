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
"""Sparse SDPA (``.dat-s``) export and import.

SDPA's primal is ``min b.y  s.t.  sum_i y_i F_i - F_0 >= 0``; its dual ``max <F_0, X>  s.t.
<F_i, X> = b_i, X >= 0`` is our standard form with ``F_0 = -C`` and ``F_i = A_i``. Nonnegative
scalars form one diagonal block written with a negative size. Free scalars are split into
pairs of nonnegatives appended to that block, and a ``* polynorm free=k`` comment lets
:func:`import_sdpa` fold them back. Values are written with ``repr`` so that a round trip is
exact.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Union

import numpy as np
import scipy.sparse as sp

from polynorm.conic.problem import ConicProblem, svec_index
from polynorm.errors import ConicError

_FREE_TAG = re.compile(r"^\*\s*polynorm\s+free=(\d+)")
_SEPARATORS = re.compile(r"[,{}()]")


def _entries(problem: ConicProblem, column: np.ndarray) -> list[tuple[int, int, int, float]]:
    """Nonzero ``(block, i, j, value)`` entries (1-based, ``i <= j``) of one variable-space vector."""
    out: list[tuple[int, int, int, float]] = []
    for k, (n, offset) in enumerate(zip(problem.block_sizes, problem.block_offsets)):
        for i in range(n):
            for j in range(i, n):
                value = float(column[offset + svec_index(n, i, j)])
                if value != 0.0:
                    out.append((k + 1, i + 1, j + 1, value if i == j else value / 2.0))
    lp_block = len(problem.block_sizes) + 1
    l, f = problem.nonneg_count, problem.free_count
    for p in range(l):
        value = float(column[problem.psd_size + p])
        if value != 0.0:
            out.append((lp_block, p + 1, p + 1, value))
    for p in range(f):
        value = float(column[problem.cone_size + p])
        if value != 0.0:
            out.append((lp_block, l + 2 * p + 1, l + 2 * p + 1, value))
            out.append((lp_block, l + 2 * p + 2, l + 2 * p + 2, -value))
    return out


def export_sdpa(problem: ConicProblem, path: Union[str, Path]) -> None:
    lp_size = problem.nonneg_count + 2 * problem.free_count
    sizes = list(problem.block_sizes) + ([-lp_size] if lp_size else [])

    lines = ['"polynorm conic problem"']
    if problem.free_count:
        lines.append(f"* polynorm free={problem.free_count}")
    lines.append(str(problem.n_rows))
    lines.append(str(len(sizes)))
    lines.append(" ".join(str(s) for s in sizes))
    body = [" ".join(repr(float(v)) for v in problem.b) or "{}"]
    for blk, i, j, value in _entries(problem, -problem.c):
        body.append(f"0 {blk} {i} {j} {value!r}")
    a_rows = problem.a.tocsr()
    for row in range(problem.n_rows):
        dense = np.zeros(problem.n_variables)
        start, stop = a_rows.indptr[row], a_rows.indptr[row + 1]
        dense[a_rows.indices[start:stop]] = a_rows.data[start:stop]
        for blk, i, j, value in _entries(problem, dense):
            body.append(f"{row + 1} {blk} {i} {j} {value!r}")
    try:
        Path(path).write_text("\n".join(lines + body) + "\n")
    except OSError as e:
        raise ConicError(f"cannot write SDPA file {path}: {e}") from e


def import_sdpa(path: Union[str, Path]) -> ConicProblem:
    try:
        raw = Path(path).read_text().splitlines()
    except OSError as e:
        raise ConicError(f"cannot read SDPA file {path}: {e}") from e

    free_count = 0
    data: list[tuple[int, str]] = []
    for lineno, line in enumerate(raw, start=1):
        stripped = line.strip()
        tag = _FREE_TAG.match(stripped)
        if tag:
            free_count = int(tag.group(1))
            continue
        if not stripped or stripped[0] in '"*':
            continue
        data.append((lineno, stripped))
    if len(data) < 4:
        raise ConicError(f"{path}: truncated SDPA header")

    def numbers(index: int) -> list[str]:
        return _SEPARATORS.sub(" ", data[index][1]).split()

    try:
        m = int(numbers(0)[0])
        n_blocks = int(numbers(1)[0])
        sizes = [int(s) for s in numbers(2)[:n_blocks]]
        b = np.array([float(v) for v in numbers(3)[:m]])
    except (ValueError, IndexError) as e:
        raise ConicError(f"{path}:{data[min(3, len(data) - 1)][0]}: malformed SDPA header") from e
    if b.size != m or len(sizes) != n_blocks:
        raise ConicError(f"{path}: header declares {m} constraints and {n_blocks} blocks")

    psd_sizes = [s for s in sizes if s > 0]
    lp_sizes = [-s for s in sizes if s < 0]
    if len(lp_sizes) > 1 or (lp_sizes and sizes[-1] > 0):
        raise ConicError(f"{path}: expected at most one diagonal block, placed last")
    lp_size = lp_sizes[0] if lp_sizes else 0
    nonneg = lp_size - 2 * free_count
    if nonneg < 0:
        raise ConicError(f"{path}: diagonal block too small for {free_count} free variables")

    skeleton = ConicProblem(psd_sizes, nonneg, free_count, np.zeros((0, 0)), np.zeros(0))
    offsets = skeleton.block_offsets
    n_vars = skeleton.n_variables
    c = np.zeros(n_vars)
    rows: list[int] = []
    cols: list[int] = []
    vals: list[float] = []
    for lineno, line in data[4:]:
        parts = line.split()
        try:
            matno, blk, i, j = (int(p) for p in parts[:4])
            value = float(parts[4])
        except (ValueError, IndexError) as e:
            raise ConicError(f"{path}:{lineno}: malformed entry {line!r}") from e
        if i > j:
            i, j = j, i
        if blk <= len(psd_sizes):
            n = psd_sizes[blk - 1]
            col = offsets[blk - 1] + svec_index(n, i - 1, j - 1)
            coeff = value if i == j else 2.0 * value
        else:
            p = i - 1
            if p < nonneg:
                col, coeff = skeleton.psd_size + p, value
            elif (p - nonneg) % 2 == 0:
                col, coeff = skeleton.cone_size + (p - nonneg) // 2, value
            else:
                continue  # negated twin of a free variable
        if matno == 0:
            c[col] = -coeff
        else:
            rows.append(matno - 1)
            cols.append(col)
            vals.append(coeff)
    a = sp.csr_matrix((vals, (rows, cols)), shape=(m, n_vars))
    return ConicProblem(psd_sizes, nonneg, free_count, a, b, c)
