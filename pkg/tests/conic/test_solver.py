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
import numpy as np
import pytest

from polynorm.conic import ConicProblem, SolverStatus, polish, smallest_eigenvalue, solve, solve_feasibility
from polynorm.schema.config import Tolerances


def _unit_diagonal(off_diagonal=None, objective=None, scale=1.0) -> ConicProblem:
    """2x2 block with diagonal ``scale``; optionally pins ``X[0,1]`` to ``scale * off_diagonal`` or minimizes it."""
    rows = [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]
    b = [scale, scale]
    if off_diagonal is not None:
        rows.append([0.0, 1.0, 0.0])
        b.append(scale * off_diagonal)
    return ConicProblem([2], 0, 0, np.array(rows), b, objective)


def test__solve__minimizes_correlation():
    # WHEN minimizing X[0,1] over 2x2 correlation matrices
    solution = solve(_unit_diagonal(objective=[0.0, 1.0, 0.0]))

    # THEN the optimum sits on the boundary at -1
    assert solution.status == SolverStatus.OPTIMAL
    assert solution.objective == pytest.approx(-1.0, abs=1e-6)
    np.testing.assert_allclose(solution.blocks[0], [[1.0, -1.0], [-1.0, 1.0]], atol=1e-5)
    assert solution.primal_residual <= 1e-8
    assert solution.gap <= 1e-6


def test__solve__handles_nonnegative_and_free_scalars():
    # min s  s.t.  s - w = 1, X[0,0] = 1, s >= 0, w free
    a = np.array([[0.0, 0.0, 0.0, 1.0, -1.0], [1.0, 0.0, 0.0, 0.0, 0.0]])
    problem = ConicProblem([2], 1, 1, a, [1.0, 1.0], [0.0, 0.0, 0.0, 1.0, 0.0])

    solution = solve(problem)

    assert solution.status == SolverStatus.OPTIMAL
    assert solution.objective == pytest.approx(0.0, abs=1e-6)
    assert solution.free[0] == pytest.approx(-1.0, abs=1e-5)


def test__solve__inconsistent_equalities_are_infeasible():
    a = np.array([[1.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
    problem = ConicProblem([2], 0, 0, a, [1.0, 2.0], [0.0, 0.0, 1.0])

    solution = solve(problem)

    assert solution.status == SolverStatus.INFEASIBLE
    assert "inconsistent" in solution.message


def test__solve__routes_zero_objective_to_feasibility():
    solution = solve(_unit_diagonal(off_diagonal=0.5))

    assert solution.margin is not None


@pytest.mark.parametrize(
    "off_diagonal,status,margin",
    [(0.5, SolverStatus.OPTIMAL, 0.5), (0.0, SolverStatus.OPTIMAL, 1.0), (2.0, SolverStatus.INFEASIBLE, -1.0)],
)
def test__solve_feasibility__classifies_by_margin(off_diagonal, status, margin):
    # WHEN the off-diagonal entry is pinned: eigenvalues are 1 +- off_diagonal
    solution = solve_feasibility(_unit_diagonal(off_diagonal))

    # THEN the margin is the smallest eigenvalue
    assert solution.status == status
    assert solution.margin == pytest.approx(margin, abs=1e-5)


def test__solve_feasibility__feasible_point_satisfies_equalities():
    problem = _unit_diagonal(off_diagonal=0.5)

    solution = solve_feasibility(problem)

    np.testing.assert_allclose(problem.a @ solution.x, problem.b, atol=1e-7)
    assert np.linalg.eigvalsh(solution.blocks[0])[0] > 0.0


@pytest.mark.parametrize("scale", [1e-3, 1.0, 1e3])
@pytest.mark.parametrize(
    "off_diagonal,status", [(0.5, SolverStatus.OPTIMAL), (1.0, SolverStatus.OPTIMAL), (2.0, SolverStatus.INFEASIBLE)]
)
def test__solve_feasibility__status_ignores_scale(off_diagonal, status, scale):
    solution = solve_feasibility(_unit_diagonal(off_diagonal, scale=scale))

    assert solution.status == status
    assert solution.margin == pytest.approx(scale * (1.0 - off_diagonal), abs=1e-5 * scale)


def test__solve_feasibility__boundary_point_is_feasible():
    # X[0,1] - s = 1 with s >= 0 leaves only the singular X = [[1, 1], [1, 1]]
    a = np.array([[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 1.0, 0.0, -1.0]])
    problem = ConicProblem([2], 1, 0, a, [1.0, 1.0, 1.0])

    solution = solve_feasibility(problem)

    assert solution.status == SolverStatus.OPTIMAL
    assert smallest_eigenvalue(problem, solution.x) >= -1e-7
    np.testing.assert_allclose(solution.blocks[0], [[1.0, 1.0], [1.0, 1.0]], atol=1e-4)


def test__smallest_eigenvalue__covers_blocks_and_nonnegatives():
    problem = ConicProblem([2], 1, 1, np.zeros((0, 5)), [])

    assert smallest_eigenvalue(problem, np.array([1.0, 2.0, 1.0, 0.5, -7.0])) == pytest.approx(-1.0)
    assert smallest_eigenvalue(problem, np.array([1.0, 0.0, 1.0, -0.5, -7.0])) == pytest.approx(-0.5)


def test__solve_feasibility__no_rows_is_trivially_feasible():
    problem = ConicProblem([3], 0, 0, np.zeros((0, 6)), [])

    solution = solve_feasibility(problem)

    assert solution.status == SolverStatus.OPTIMAL
    assert solution.margin == float("inf")
    assert solution.diagnostics()["margin"] == "inf"


def test__solve__iteration_limit_is_a_status():
    solution = solve(_unit_diagonal(objective=[0.0, 1.0, 0.0]), Tolerances(max_iters=1))

    assert solution.status == SolverStatus.ITER_LIMIT
    assert solution.iterations <= 1


def test__polish__projects_onto_equalities():
    problem = _unit_diagonal(off_diagonal=0.25)
    x = np.array([1.1, 0.2, 0.9])

    polished = polish(problem, x)

    np.testing.assert_allclose(problem.a @ polished, problem.b, atol=1e-12)


def test__solution__diagnostics_omit_vectors():
    diagnostics = solve(_unit_diagonal(off_diagonal=0.5)).diagnostics()

    assert set(diagnostics) == {
        "status",
        "iterations",
        "margin",
        "objective",
        "primal_residual",
        "dual_residual",
        "gap",
        "message",
    }
