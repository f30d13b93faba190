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
"""Compilation of sum-of-squares conditions into a :class:`~polynorm.conic.ConicProblem`.

A :class:`SosProgram` owns scalar decision variables (free or nonnegative) and PSD blocks.
``add_sos(target, basis)`` adds one PSD block ``G`` and, for every exponent ``alpha``, the
equation ``sum_{beta + gamma = alpha} G[beta, gamma] = coeff_alpha(target)``, where the target
may depend affinely on the scalar variables (:class:`AffineForm`).
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping
from typing import NamedTuple, Optional, Union

import numpy as np
import scipy.sparse as sp

from polynorm.conic import ConicProblem, ConicSolution, SolverStatus, polish, solve, solve_feasibility, svec_index
from polynorm.conic.problem import svec_size
from polynorm.errors import FormError
from polynorm.forms import Biform, Form, MultiIndex, monomials
from polynorm.schema.config import DEFAULT_TOLERANCES, Tolerances
from polynorm.sos.basis import MonomialBasis, biform_basis, monomial_basis

logger = logging.getLogger(__name__)


class AffineForm:
    """``constant + sum_k theta_k * parts[k]``: a form whose coefficients are affine in scalar variables."""

    def __init__(self, constant: Form, parts: Optional[Mapping[int, Form]] = None):
        self.constant = constant
        self.parts: dict[int, Form] = {}
        for var, form in (parts or {}).items():
            if form.n_vars != constant.n_vars or (form.degree != constant.degree and not form.is_zero()):
                raise FormError("affine parts must match the constant's variables and degree")
            if not form.is_zero():
                self.parts[var] = form

    @property
    def n_vars(self) -> int:
        return self.constant.n_vars

    @property
    def degree(self) -> int:
        return self.constant.degree

    @classmethod
    def from_form(cls, f: Form) -> AffineForm:
        return cls(f)

    @classmethod
    def generic(cls, n_vars: int, degree: int, variables: list[int]) -> AffineForm:
        """``sum_k theta_k x^alpha_k`` over all monomials of ``degree``, one variable per monomial."""
        basis = monomials(n_vars, degree)
        if len(variables) != len(basis):
            raise FormError(f"need {len(basis)} variables for a generic form, got {len(variables)}")
        return cls(Form.zero(n_vars, degree), {v: Form.monomial(alpha) for v, alpha in zip(variables, basis)})

    def map(self, fn: Callable[[Form], Form]) -> AffineForm:
        """Applies a linear map on forms (multiplication, composition, stacking) to every component."""
        return AffineForm(fn(self.constant), {v: fn(p) for v, p in self.parts.items()})

    def __add__(self, other: Union[AffineForm, Form]) -> AffineForm:
        other = other if isinstance(other, AffineForm) else AffineForm(other)
        parts = dict(self.parts)
        for v, p in other.parts.items():
            parts[v] = parts[v] + p if v in parts else p
        return AffineForm(self.constant + other.constant, parts)

    def __neg__(self) -> AffineForm:
        return self.map(lambda f: -f)

    def __sub__(self, other: Union[AffineForm, Form]) -> AffineForm:
        other = other if isinstance(other, AffineForm) else AffineForm(other)
        return self + (-other)

    def scale(self, factor: float) -> AffineForm:
        return self.map(lambda f: f.scale(factor))

    def __mul__(self, other: Form) -> AffineForm:
        return self.map(lambda f: f * other)

    def value(self, values: Mapping[int, float]) -> Form:
        out = self.constant
        for v, p in self.parts.items():
            out = out + p.scale(values[v])
        return out

    def support(self) -> set[MultiIndex]:
        keys = set(self.constant.terms)
        for p in self.parts.values():
            keys |= set(p.terms)
        return keys


class ScalarRef(NamedTuple):
    index: int


class EntryRef(NamedTuple):
    block: int
    i: int
    j: int


Ref = Union[ScalarRef, EntryRef]


class SosBlock(NamedTuple):
    block: int
    basis: MonomialBasis
    target: AffineForm
    equations: int
    label: str


class ProgramSolution:
    """Solver output of a :class:`SosProgram`, with the primal point polished onto the equalities."""

    def __init__(self, program: SosProgram, problem: ConicProblem, solution: ConicSolution):
        self.program = program
        self.problem = problem
        self.solution = solution
        x = solution.x
        if solution.status == SolverStatus.OPTIMAL and problem.n_rows:
            x = polish(problem, x)
        self.x = x
        self.blocks, nonneg, free = problem.split(x)
        self._scalars: dict[int, float] = {}
        for pos, k in enumerate(program.nonneg_vars):
            self._scalars[k] = float(nonneg[pos])
        for pos, k in enumerate(program.free_vars):
            self._scalars[k] = float(free[pos])

    @property
    def status(self) -> SolverStatus:
        return self.solution.status

    @property
    def margin(self) -> Optional[float]:
        return self.solution.margin

    def scalar(self, index: int) -> float:
        return self._scalars[index]

    def scalars(self) -> dict[int, float]:
        return dict(self._scalars)

    def block(self, index: int) -> np.ndarray:
        return self.blocks[index]

    def form(self, affine: AffineForm) -> Form:
        return affine.value(self._scalars)


class SosProgram:
    def __init__(self, name: str = "sos"):
        self.name = name
        self._kinds: list[str] = []
        self._block_sizes: list[int] = []
        self._rows: list[tuple[dict[Ref, float], float]] = []
        self._objective: dict[Ref, float] = {}
        self.sos_blocks: list[SosBlock] = []

    @property
    def nonneg_vars(self) -> list[int]:
        return [k for k, kind in enumerate(self._kinds) if kind == "nonneg"]

    @property
    def free_vars(self) -> list[int]:
        return [k for k, kind in enumerate(self._kinds) if kind == "free"]

    def new_free(self, count: int = 1) -> list[int]:
        start = len(self._kinds)
        self._kinds.extend(["free"] * count)
        return list(range(start, start + count))

    def new_nonneg(self, count: int = 1) -> list[int]:
        start = len(self._kinds)
        self._kinds.extend(["nonneg"] * count)
        return list(range(start, start + count))

    def new_psd_block(self, size: int) -> int:
        if size < 1:
            raise ValueError(f"block size must be positive, got {size}")
        self._block_sizes.append(size)
        return len(self._block_sizes) - 1

    @staticmethod
    def entry(block: int, i: int, j: int) -> EntryRef:
        return EntryRef(block, min(i, j), max(i, j))

    def add_equality(self, terms: Mapping[Ref, float], rhs: float) -> None:
        self._rows.append((dict(terms), float(rhs)))

    def minimize(self, terms: Mapping[Ref, float]) -> None:
        self._objective = dict(terms)

    def add_sos(
        self,
        target: Union[Form, Biform, AffineForm],
        basis: Optional[MonomialBasis] = None,
        label: str = "",
    ) -> SosBlock:
        """Requires ``target`` to be a sum of squares over ``basis``.

        The default basis is every half-degree monomial, or ``{x^beta y_i}`` for a biform quadratic in ``y``.
        """
        if isinstance(target, Biform):
            if basis is None and target.deg_y == 2 and target.deg_x % 2 == 0:
                basis = biform_basis(target.n_x, target.n_y, target.deg_x // 2)
            target = target.stack()
        affine = target if isinstance(target, AffineForm) else AffineForm(target)
        if affine.degree % 2:
            raise FormError(f"an SOS target must have even degree, got {affine.degree}")
        if basis is None:
            basis = monomial_basis(affine.n_vars, affine.degree // 2)
        if basis.n_vars != affine.n_vars or 2 * basis.degree != affine.degree:
            raise FormError(
                f"basis of degree {basis.degree} in {basis.n_vars} variables cannot represent "
                f"a degree-{affine.degree} target in {affine.n_vars} variables"
            )
        block = self.new_psd_block(len(basis))
        products = basis.products
        alphas = sorted(set(products) | affine.support(), reverse=True)
        for alpha in alphas:
            row: dict[Ref, float] = {}
            for p, q in products.get(alpha, []):
                row[self.entry(block, p, q)] = 1.0 if p == q else 2.0
            for var, part in affine.parts.items():
                coeff = part.coefficient(alpha)
                if coeff:
                    row[ScalarRef(var)] = row.get(ScalarRef(var), 0.0) - coeff
            self.add_equality(row, affine.constant.coefficient(alpha))
        sos_block = SosBlock(block, basis, affine, len(alphas), label or f"block{block}")
        self.sos_blocks.append(sos_block)
        logger.debug(
            "%s: %s adds a block of size %d and %d equations", self.name, sos_block.label, len(basis), len(alphas)
        )
        return sos_block

    def compile(self) -> ConicProblem:
        offsets, pos = [], 0
        for n in self._block_sizes:
            offsets.append(pos)
            pos += svec_size(n)
        columns: dict[int, int] = {}
        for k in self.nonneg_vars:
            columns[k] = pos
            pos += 1
        for k in self.free_vars:
            columns[k] = pos
            pos += 1
        n_cols = pos

        def column(ref: Ref) -> int:
            if isinstance(ref, ScalarRef):
                return columns[ref.index]
            n = self._block_sizes[ref.block]
            return offsets[ref.block] + svec_index(n, ref.i, ref.j)

        rows, cols, vals = [], [], []
        b = np.zeros(len(self._rows))
        for r, (terms, rhs) in enumerate(self._rows):
            for ref, coeff in terms.items():
                rows.append(r)
                cols.append(column(ref))
                vals.append(coeff)
            b[r] = rhs
        a = sp.csr_matrix((vals, (rows, cols)), shape=(len(self._rows), n_cols))
        c = np.zeros(n_cols)
        for ref, coeff in self._objective.items():
            c[column(ref)] += coeff
        return ConicProblem(self._block_sizes, len(self.nonneg_vars), len(self.free_vars), a, b, c)

    def solve(self, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ProgramSolution:
        problem = self.compile()
        logger.info("%s: solving %r", self.name, problem)
        if problem.is_feasibility():
            solution = solve_feasibility(problem, tolerances)
        else:
            solution = solve(problem, tolerances)
        return ProgramSolution(self, problem, solution)


def sos_constraint(
    program: SosProgram,
    target: Union[Form, Biform, AffineForm],
    basis: Optional[MonomialBasis] = None,
    label: str = "",
) -> SosBlock:
    """Adds ``target is SOS`` to ``program``: one PSD block plus coefficient-matching equations."""
    return program.add_sos(target, basis, label)
