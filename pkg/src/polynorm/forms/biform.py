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

from collections.abc import Mapping
from types import MappingProxyType
from typing import Union

import numpy as np
from numpy.typing import ArrayLike

from polynorm.errors import FormError
from polynorm.forms.form import Form, MultiIndex, _prune

BiIndex = tuple[MultiIndex, MultiIndex]


class Biform:
    """A polynomial in two groups of variables, homogeneous of degree ``deg_x`` in x and ``deg_y`` in y."""

    def __init__(self, n_x: int, n_y: int, deg_x: int, deg_y: int, terms: Mapping[BiIndex, float] | None = None):
        if n_x < 1 or n_y < 1:
            raise FormError(f"a biform needs variables in both groups, got n_x={n_x}, n_y={n_y}")
        clean: dict[BiIndex, float] = {}
        for (alpha, beta), coeff in (terms or {}).items():
            alpha, beta = tuple(alpha), tuple(beta)
            if len(alpha) != n_x or len(beta) != n_y:
                raise FormError(f"exponents {list(alpha)};{list(beta)} do not match ({n_x}, {n_y}) variables")
            if sum(alpha) != deg_x or sum(beta) != deg_y:
                raise FormError(f"exponents {list(alpha)};{list(beta)} are not of bidegree ({deg_x}, {deg_y})")
            clean[(alpha, beta)] = clean.get((alpha, beta), 0.0) + float(coeff)
        self.n_x = n_x
        self.n_y = n_y
        self.deg_x = deg_x
        self.deg_y = deg_y
        self._terms = _prune(clean)

    @property
    def terms(self) -> Mapping[BiIndex, float]:
        return MappingProxyType(self._terms)

    def coefficient(self, alpha: MultiIndex, beta: MultiIndex) -> float:
        return self._terms.get((tuple(alpha), tuple(beta)), 0.0)

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def stack(self) -> Form:
        """The same polynomial as a form in the ``n_x + n_y`` variables ``(x, y)``."""
        terms = {alpha + beta: c for (alpha, beta), c in self._terms.items()}
        return Form(self.n_x + self.n_y, self.deg_x + self.deg_y, terms)

    @classmethod
    def from_stacked(cls, form: Form, n_x: int, deg_x: int) -> Biform:
        n_y = form.n_vars - n_x
        terms = {(alpha[:n_x], alpha[n_x:]): c for alpha, c in form.terms.items()}
        return cls(n_x, n_y, deg_x, form.degree - deg_x, terms)

    def multiply_x(self, g: Form) -> Biform:
        """Multiplies by a form in the x variables only."""
        if g.n_vars != self.n_x:
            raise FormError(f"multiplier has {g.n_vars} variables, expected {self.n_x}")
        terms: dict[BiIndex, float] = {}
        for (alpha, beta), a in self._terms.items():
            for gamma, b in g.terms.items():
                key = (tuple(i + j for i, j in zip(alpha, gamma)), beta)
                terms[key] = terms.get(key, 0.0) + a * b
        return Biform(self.n_x, self.n_y, self.deg_x + g.degree, self.deg_y, terms)

    def scale(self, factor: float) -> Biform:
        return Biform(self.n_x, self.n_y, self.deg_x, self.deg_y, {k: factor * c for k, c in self._terms.items()})

    def __call__(self, x: ArrayLike, y: ArrayLike) -> Union[float, np.ndarray]:
        xs = np.asarray(x, dtype=float)
        ys = np.asarray(y, dtype=float)
        return self.stack()(np.concatenate([xs, ys], axis=-1))

    def __repr__(self) -> str:
        return f"Biform(n_x={self.n_x}, n_y={self.n_y}, deg=({self.deg_x}, {self.deg_y}), terms={len(self._terms)})"
