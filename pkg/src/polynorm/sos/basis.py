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

from collections.abc import Sequence
from functools import cached_property

from polynorm.errors import FormError
from polynorm.forms import MultiIndex, monomials


class MonomialBasis:
    """Ordered monomials of one total degree; the ``z`` in ``z^T G z``."""

    def __init__(self, entries: Sequence[MultiIndex]):
        self.entries = tuple(tuple(e) for e in entries)
        if not self.entries:
            raise FormError("a monomial basis cannot be empty")
        self.n_vars = len(self.entries[0])
        self.degree = sum(self.entries[0])
        if any(len(e) != self.n_vars or sum(e) != self.degree for e in self.entries):
            raise FormError("basis monomials must share variable count and degree")
        if len(set(self.entries)) != len(self.entries):
            raise FormError("basis monomials must be distinct")

    def __len__(self) -> int:
        return len(self.entries)

    @cached_property
    def products(self) -> dict[MultiIndex, list[tuple[int, int]]]:
        """Maps each exponent of ``z z^T`` to the upper-triangle positions ``(p, q)`` producing it."""
        out: dict[MultiIndex, list[tuple[int, int]]] = {}
        for p, beta in enumerate(self.entries):
            for q in range(p, len(self.entries)):
                gamma = tuple(a + b for a, b in zip(beta, self.entries[q]))
                out.setdefault(gamma, []).append((p, q))
        return out


def monomial_basis(n_vars: int, half_degree: int) -> MonomialBasis:
    return MonomialBasis(monomials(n_vars, half_degree))


def biform_basis(n_x: int, n_y: int, half_deg_x: int) -> MonomialBasis:
    """The mixed basis ``{x^beta y_i : |beta| = half_deg_x}`` for biforms quadratic in ``y``."""
    entries = []
    for beta in monomials(n_x, half_deg_x):
        for i in range(n_y):
            entries.append(beta + tuple(1 if k == i else 0 for k in range(n_y)))
    return MonomialBasis(entries)
