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

from collections.abc import Iterable, Mapping, Sequence
from functools import cached_property, lru_cache
from types import MappingProxyType
from typing import TypeVar, Union

import numpy as np
from numpy.typing import ArrayLike

from polynorm.errors import FormError

MultiIndex = tuple[int, ...]

# relative threshold below which arithmetic results are treated as zero
PRUNE_RTOL = 1e-14


@lru_cache(maxsize=None)
def monomials(n_vars: int, degree: int) -> tuple[MultiIndex, ...]:
    """All exponent tuples of total degree ``degree`` in graded lexicographic order.

    The first exponent runs from ``degree`` down to 0, so for two variables and degree 2 the
    order is ``x1^2, x1*x2, x2^2``.
    """
    if degree < 0:
        return ()
    if n_vars == 0:
        return ((),) if degree == 0 else ()
    if n_vars == 1:
        return ((degree,),)
    out: list[MultiIndex] = []
    for first in range(degree, -1, -1):
        for rest in monomials(n_vars - 1, degree - first):
            out.append((first, *rest))
    return tuple(out)


K = TypeVar("K")


def _prune(terms: Mapping[K, float]) -> dict[K, float]:
    if not terms:
        return {}
    scale = max(abs(c) for c in terms.values())
    cutoff = PRUNE_RTOL * scale
    return {alpha: float(c) for alpha, c in terms.items() if c != 0.0 and abs(c) >= cutoff}


class Form:
    """A homogeneous polynomial stored as a sparse map from exponent tuples to coefficients.

    Instances are immutable values. Every stored exponent tuple has length ``n_vars`` and total
    degree ``degree``; zero coefficients are never stored.
    """

    def __init__(self, n_vars: int, degree: int, terms: Mapping[MultiIndex, float] | None = None):
        if n_vars < 1:
            raise FormError(f"a form needs at least one variable, got n_vars={n_vars}")
        if degree < 0:
            raise FormError(f"degree must be nonnegative, got {degree}")
        clean: dict[MultiIndex, float] = {}
        for alpha, coeff in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != n_vars:
                raise FormError(f"exponents {list(alpha)} do not have length {n_vars}")
            if any(a < 0 for a in alpha):
                raise FormError(f"exponents {list(alpha)} contain a negative entry")
            if sum(alpha) != degree:
                raise FormError(f"exponents {list(alpha)} have total degree {sum(alpha)}, expected {degree}")
            clean[alpha] = clean.get(alpha, 0.0) + float(coeff)
        self.n_vars = n_vars
        self.degree = degree
        self._terms = _prune(clean)

    @classmethod
    def zero(cls, n_vars: int, degree: int) -> Form:
        return cls(n_vars, degree)

    @classmethod
    def constant(cls, n_vars: int, value: float = 1.0) -> Form:
        return cls(n_vars, 0, {(0,) * n_vars: value})

    @classmethod
    def variable(cls, n_vars: int, index: int) -> Form:
        alpha = [0] * n_vars
        alpha[index] = 1
        return cls(n_vars, 1, {tuple(alpha): 1.0})

    @classmethod
    def monomial(cls, alpha: Sequence[int], coeff: float = 1.0) -> Form:
        return cls(len(alpha), sum(alpha), {tuple(alpha): coeff})

    @classmethod
    def linear(cls, coefficients: ArrayLike) -> Form:
        row = np.asarray(coefficients, dtype=float).ravel()
        n = row.size
        return cls(n, 1, {tuple(1 if j == i else 0 for j in range(n)): row[i] for i in range(n)})

    @classmethod
    def from_coefficients(cls, n_vars: int, degree: int, values: ArrayLike) -> Form:
        """Builds a form from a dense coefficient vector in :func:`monomials` order."""
        basis = monomials(n_vars, degree)
        vec = np.asarray(values, dtype=float).ravel()
        if vec.size != len(basis):
            raise FormError(f"expected {len(basis)} coefficients for degree {degree} in {n_vars} variables")
        return cls(n_vars, degree, dict(zip(basis, vec.tolist())))

    @property
    def terms(self) -> Mapping[MultiIndex, float]:
        return MappingProxyType(self._terms)

    def coefficient(self, alpha: Sequence[int]) -> float:
        return self._terms.get(tuple(alpha), 0.0)

    def coefficients(self, basis: Iterable[MultiIndex] | None = None) -> np.ndarray:
        """Dense coefficient vector over ``basis`` (all monomials of the degree by default)."""
        if basis is None:
            basis = monomials(self.n_vars, self.degree)
        return np.array([self._terms.get(alpha, 0.0) for alpha in basis])

    def support(self) -> list[MultiIndex]:
        return sorted(self._terms, reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    @cached_property
    def _arrays(self) -> tuple[np.ndarray, np.ndarray]:
        support = self.support()
        exps = np.array(support, dtype=int).reshape(len(support), self.n_vars)
        coeffs = np.array([self._terms[alpha] for alpha in support], dtype=float)
        return exps, coeffs

    def __call__(self, x: ArrayLike) -> Union[float, np.ndarray]:
        """Evaluates at a point of shape ``(n,)`` or at a batch of shape ``(N, n)``."""
        pts = np.asarray(x, dtype=float)
        if pts.shape[-1:] != (self.n_vars,):
            raise FormError(f"expected points with {self.n_vars} coordinates, got shape {pts.shape}")
        exps, coeffs = self._arrays
        if coeffs.size == 0:
            return 0.0 if pts.ndim == 1 else np.zeros(pts.shape[0])
        powers = np.prod(pts[..., None, :] ** exps, axis=-1)
        values = powers @ coeffs
        return float(values) if pts.ndim == 1 else values

    def derivative(self, index: int) -> Form:
        if self.degree < 1:
            raise FormError("cannot differentiate a degree-0 form")
        terms: dict[MultiIndex, float] = {}
        for alpha, coeff in self._terms.items():
            if alpha[index] == 0:
                continue
            beta = alpha[:index] + (alpha[index] - 1,) + alpha[index + 1 :]
            terms[beta] = terms.get(beta, 0.0) + alpha[index] * coeff
        return Form(self.n_vars, self.degree - 1, terms)

    def embed(self, n_total: int, offset: int = 0) -> Form:
        """Re-expresses the form in ``n_total`` variables, occupying ``offset .. offset+n_vars``."""
        if offset < 0 or offset + self.n_vars > n_total:
            raise FormError(f"cannot place {self.n_vars} variables at offset {offset} in {n_total}")
        before = (0,) * offset
        after = (0,) * (n_total - offset - self.n_vars)
        return Form(n_total, self.degree, {before + alpha + after: c for alpha, c in self._terms.items()})

    def _check_compatible(self, other: Form) -> None:
        if other.n_vars != self.n_vars:
            raise FormError(f"forms in {self.n_vars} and {other.n_vars} variables cannot be combined")

    def __add__(self, other: Form) -> Form:
        self._check_compatible(other)
        if other.degree != self.degree:
            if other.is_zero():
                return self
            if self.is_zero():
                return other
            raise FormError(f"cannot add forms of degree {self.degree} and {other.degree}")
        terms = dict(self._terms)
        for alpha, coeff in other._terms.items():
            terms[alpha] = terms.get(alpha, 0.0) + coeff
        return Form(self.n_vars, self.degree, terms)

    def __neg__(self) -> Form:
        return self.scale(-1.0)

    def __sub__(self, other: Form) -> Form:
        return self + (-other)

    def scale(self, factor: float) -> Form:
        return Form(self.n_vars, self.degree, {alpha: factor * c for alpha, c in self._terms.items()})

    def __mul__(self, other: Union[Form, float, int]) -> Form:
        if isinstance(other, Form):
            return multiply(self, other)
        return self.scale(float(other))

    def __rmul__(self, other: Union[float, int]) -> Form:
        return self.scale(float(other))

    def __pow__(self, power: int) -> Form:
        result = Form.constant(self.n_vars)
        base = self
        k = int(power)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def allclose(self, other: Form, atol: float = 1e-10) -> bool:
        if (self.n_vars, self.degree) != (other.n_vars, other.degree):
            return self.is_zero() and other.is_zero()
        keys = set(self._terms) | set(other._terms)
        return all(abs(self.coefficient(a) - other.coefficient(a)) <= atol for a in keys)

    def __repr__(self) -> str:
        if not self._terms:
            return f"Form(n_vars={self.n_vars}, degree={self.degree}, 0)"
        parts = []
        for alpha in self.support():
            mono = "*".join(f"x{i + 1}^{a}" if a > 1 else f"x{i + 1}" for i, a in enumerate(alpha) if a)
            parts.append(f"{self._terms[alpha]:+g}" + (f"*{mono}" if mono else ""))
        return f"Form(n_vars={self.n_vars}, degree={self.degree}, {' '.join(parts)})"


def multiply(f: Form, g: Form) -> Form:
    """Product of two forms in the same variables; degrees add."""
    f._check_compatible(g)
    terms: dict[MultiIndex, float] = {}
    for alpha, a in f.terms.items():
        for beta, b in g.terms.items():
            gamma = tuple(i + j for i, j in zip(alpha, beta))
            terms[gamma] = terms.get(gamma, 0.0) + a * b
    return Form(f.n_vars, f.degree + g.degree, terms)
