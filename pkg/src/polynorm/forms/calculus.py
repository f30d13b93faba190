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
from collections.abc import Sequence
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike

from polynorm.errors import FormError
from polynorm.forms.biform import BiIndex, Biform
from polynorm.forms.form import Form, MultiIndex, monomials


class PolyMatrix:
    """A symmetric matrix whose entries are forms sharing variables and degree."""

    def __init__(self, entries: Sequence[Sequence[Form]]):
        size = len(entries)
        if size == 0 or any(len(row) != size for row in entries):
            raise FormError("a polynomial matrix must be square and nonempty")
        self.entries = tuple(tuple(row) for row in entries)
        self.dimension = size

    def __getitem__(self, index: tuple[int, int]) -> Form:
        i, j = index
        return self.entries[i][j]

    def evaluate(self, x: ArrayLike) -> np.ndarray:
        return np.array([[float(entry(x)) for entry in row] for row in self.entries])


def evaluate(f: Form, x: ArrayLike) -> float:
    pts = np.asarray(x, dtype=float)
    if pts.shape != (f.n_vars,):
        raise FormError(f"expected a point with {f.n_vars} coordinates, got shape {pts.shape}")
    return float(f(pts))


def gradient(f: Form) -> list[Form]:
    if f.degree < 1:
        raise FormError("gradient needs degree >= 1")
    return [f.derivative(i) for i in range(f.n_vars)]


def hessian(f: Form) -> PolyMatrix:
    if f.degree < 2:
        raise FormError("hessian needs degree >= 2")
    first = gradient(f)
    n = f.n_vars
    rows: list[list[Form]] = [[Form.zero(n, f.degree - 2)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            entry = first[i].derivative(j)
            rows[i][j] = entry
            rows[j][i] = entry
    return PolyMatrix(rows)


def hessian_biform(f: Form) -> Biform:
    """The biform ``y^T H_f(x) y`` with bidegree ``(d - 2, 2)``."""
    h = hessian(f)
    n = f.n_vars
    terms: dict[BiIndex, float] = {}
    for i in range(n):
        for j in range(i, n):
            beta = tuple((i == k) + (j == k) for k in range(n))
            weight = 1.0 if i == j else 2.0
            for alpha, coeff in h[i, j].terms.items():
                key = (alpha, beta)
                terms[key] = terms.get(key, 0.0) + weight * coeff
    return Biform(n, n, f.degree - 2, 2, terms)


def compose_linear(f: Form, matrix: ArrayLike) -> Form:
    """The form ``x -> f(A x)``."""
    a = np.asarray(matrix, dtype=float)
    n = f.n_vars
    if a.shape != (n, n):
        raise FormError(f"expected a {n}x{n} matrix, got shape {a.shape}")
    rows = [Form.linear(a[i]) for i in range(n)]
    powers: dict[tuple[int, int], Form] = {}

    def power(i: int, k: int) -> Form:
        if (i, k) not in powers:
            powers[(i, k)] = Form.constant(n) if k == 0 else power(i, k - 1) * rows[i]
        return powers[(i, k)]

    result = Form.zero(n, f.degree)
    for alpha, coeff in f.terms.items():
        term = Form.constant(n, coeff)
        for i, k in enumerate(alpha):
            if k:
                term = term * power(i, k)
        result = result + term
    return result


def multinomial(alpha: Sequence[int]) -> int:
    """The multinomial coefficient ``|alpha|! / prod(alpha_i!)``."""
    out = math.factorial(sum(alpha))
    for a in alpha:
        out //= math.factorial(a)
    return out


@lru_cache(maxsize=None)
def quadratic_power(n: int, r: int) -> Form:
    """``(x_1^2 + ... + x_n^2)^r``; ``r = 0`` gives the constant 1."""
    if r < 0:
        raise FormError(f"r must be nonnegative, got {r}")
    terms = {tuple(2 * b for b in beta): float(multinomial(beta)) for beta in monomials(n, r)}
    return Form(n, 2 * r, terms)


def _double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def sphere_moment(alpha: MultiIndex) -> float:
    """Average of ``u^alpha`` over the uniform measure on the unit sphere in ``len(alpha)`` dimensions."""
    if any(a % 2 for a in alpha):
        return 0.0
    n = len(alpha)
    num = 1
    for a in alpha:
        num *= _double_factorial(a - 1)
    den = 1
    for k in range(sum(alpha) // 2):
        den *= n + 2 * k
    return num / den


def ball_moment(alpha: MultiIndex) -> float:
    """Average of ``y^alpha`` over the uniform measure on the Euclidean unit ball."""
    n = len(alpha)
    return n / (n + sum(alpha)) * sphere_moment(alpha)
