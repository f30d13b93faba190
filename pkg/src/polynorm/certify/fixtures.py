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
"""Hard instances: quartics from graph cliques and the octic whose Hessian is PD but not r-sos-convex."""

from __future__ import annotations

from collections.abc import Sequence
from typing import Optional

from polynorm.errors import FormError
from polynorm.forms import Form, compose_linear

_OCTIC = {
    (8, 0, 0): 32.0,
    (6, 2, 0): 118.0,
    (6, 0, 2): 40.0,
    (4, 2, 2): 25.0,
    (4, 0, 4): -35.0,
    (2, 4, 2): 3.0,
    (2, 2, 4): -16.0,
    (2, 0, 6): 24.0,
    (0, 8, 0): 16.0,
    (0, 6, 2): 44.0,
    (0, 4, 4): 70.0,
    (0, 2, 6): 60.0,
    (0, 0, 8): 30.0,
}


def octic_counterexample(s: int = 1) -> Form:
    """``g_s(x) = f(x1, s x2, s x3)`` for the trivariate octic ``f = g_1``."""
    if s < 1:
        raise FormError(f"s must be a positive integer, got {s}")
    base = Form(3, 8, _OCTIC)
    if s == 1:
        return base
    return compose_linear(base, [[1.0, 0.0, 0.0], [0.0, float(s), 0.0], [0.0, 0.0, float(s)]])


def _unit(n: int, *indices: int) -> tuple[int, ...]:
    alpha = [0] * n
    for i in indices:
        alpha[i] += 1
    return tuple(alpha)


def clique_quartic(edges: Sequence[tuple[int, int]], k: int, n: Optional[int] = None) -> tuple[Form, float]:
    """The quartic in stacked ``(x, y)`` that is convex and positive definite iff the graph has no clique above ``k``.

    ``b(x; y) = -2k sum_{ij in E} x_i x_j y_i y_j - (1 - k) |x|^2 |y|^2`` plus
    ``n^2 gamma / 2 (sum x_i^4 + sum y_i^4 + sum_{i<j} (x_i^2 x_j^2 + y_i^2 y_j^2))``, where ``gamma``
    is the largest absolute coefficient in the mixed second derivatives of ``b``.
    Vertices are ``0 .. n-1``; ``n`` defaults to one past the largest vertex in ``edges``.
    """
    if k < 1:
        raise FormError(f"k must be at least 1, got {k}")
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    if n < 1:
        raise FormError("the graph has no vertices")
    m = 2 * n
    terms: dict[tuple[int, ...], float] = {}

    def add(alpha: tuple[int, ...], coeff: float) -> None:
        terms[alpha] = terms.get(alpha, 0.0) + coeff

    seen = set()
    for i, j in edges:
        if i == j or not (0 <= i < n and 0 <= j < n):
            raise FormError(f"invalid edge ({i}, {j}) for {n} vertices")
        edge = (min(i, j), max(i, j))
        if edge in seen:
            continue
        seen.add(edge)
        add(_unit(m, i, j, n + i, n + j), -2.0 * k)
    for i in range(n):
        for j in range(n):
            add(_unit(m, i, i, n + j, n + j), -(1.0 - k))
    b = Form(m, 4, terms)

    gamma = 0.0
    for i in range(n):
        for j in range(n):
            gamma = max(gamma, b.derivative(i).derivative(n + j).max_abs_coeff())

    pad: dict[tuple[int, ...], float] = {}
    for offset in (0, n):
        for i in range(n):
            pad[_unit(m, offset + i, offset + i, offset + i, offset + i)] = 1.0
            for j in range(i + 1, n):
                pad[_unit(m, offset + i, offset + i, offset + j, offset + j)] = 1.0
    return b + Form(m, 4, pad).scale(n * n * gamma / 2.0), gamma
