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
"""Dense primal-dual interior-point solver.

Infeasible-start path following with Nesterov-Todd scaling and Mehrotra's predictor-corrector,
applied to the problem left after presolve:

1. free scalars are eliminated with a column-pivoted QR of their columns;
2. linearly dependent rows are dropped with a pivoted QR of the remaining constraint matrix,
   inconsistent ones make the problem infeasible;
3. rows are scaled to unit norm.

Feasibility problems (zero objective) are solved by maximizing a uniform eigenvalue margin
``t`` with every block written as ``X' + t I``, after scaling ``b`` to unit max-norm; the sign of
the optimal ``t`` classifies the problem. Margins too close to zero to call are settled by
repairing the solver point with alternating projections and checking its smallest eigenvalue.
"""

from __future__ import annotations

import logging
import math
from typing import NamedTuple, Optional

import numpy as np
import scipy.linalg as la

from polynorm.conic.problem import ConicProblem, pack_block, svec_size, unpack_block
from polynorm.conic.solution import ConicSolution, SolverStatus
from polynorm.schema.config import DEFAULT_TOLERANCES, Tolerances

logger = logging.getLogger(__name__)

RANK_TOL = 1e-10
RAY_TOL = 1e-6
_DIVERGENCE = 1e13
_STALL_ITERS = 3
CAP_FACTOR = 4.0
CAP_GROWTH = 100.0
CAP_RETRIES = 2
CAP_SLACK = 1e-3
REPAIR_ITERS = 500
REPAIR_TARGET = 0.01


class _IpmResult(NamedTuple):
    status: SolverStatus
    blocks: list[np.ndarray]
    lp: np.ndarray
    y: np.ndarray
    iterations: int
    pres: float
    dres: float
    gap: float
    message: str


class _Reduction(NamedTuple):
    """Bookkeeping to map a presolved solution back onto the original variables and rows."""

    q: Optional[np.ndarray]  # rotation applied to the rows when free scalars were eliminated
    r11: Optional[np.ndarray]
    free_pivots: np.ndarray
    free_rank: int
    mu1: np.ndarray
    qa1: np.ndarray  # rows of the rotated cone matrix that determine the free scalars
    qb1: np.ndarray
    kept: np.ndarray
    row_scale: np.ndarray
    n_rows2: int


def _sym(a: np.ndarray) -> np.ndarray:
    return (a + a.T) / 2.0


class _InteriorPoint:
    """One solve of ``min <C,X> + c.u  s.t.  <A_i,X> + a_i.u = b_i,  X >= 0, u >= 0``."""

    def __init__(
        self,
        block_sizes: tuple[int, ...],
        lp_count: int,
        a: np.ndarray,
        b: np.ndarray,
        c: np.ndarray,
        tolerances: Tolerances,
        detect_infeasibility: bool,
    ):
        self.sizes = block_sizes
        self.m = b.size
        self.b = b
        self.tol = tolerances.solver_tol
        self.max_iters = tolerances.max_iters
        self.detect_infeasibility = detect_infeasibility

        self.a_blocks: list[np.ndarray] = []
        self.c_blocks: list[np.ndarray] = []
        pos = 0
        for n in block_sizes:
            k = svec_size(n)
            rows, cols = np.triu_indices(n)
            off = rows != cols
            mats = np.zeros((self.m, n, n))
            coeffs = a[:, pos : pos + k].copy()
            coeffs[:, off] /= 2.0
            mats[:, rows, cols] = coeffs
            mats[:, cols, rows] = coeffs
            self.a_blocks.append(mats)
            cvec = c[pos : pos + k].copy()
            cvec[off] /= 2.0
            self.c_blocks.append(unpack_block(cvec, n))
            pos += k
        self.a_lp = a[:, pos : pos + lp_count]
        self.c_lp = c[pos : pos + lp_count]
        self.nu = sum(block_sizes) + lp_count
        self.b_norm = 1.0 + float(np.max(np.abs(b), initial=0.0))
        self.c_norm = 1.0 + float(np.max(np.abs(c), initial=0.0))

    def _op_a(self, xs: list[np.ndarray], u: np.ndarray) -> np.ndarray:
        out = self.a_lp @ u
        for mats, x in zip(self.a_blocks, xs):
            out = out + np.einsum("ipq,pq->i", mats, x)
        return out

    def _op_at(self, y: np.ndarray) -> tuple[list[np.ndarray], np.ndarray]:
        return [np.einsum("i,ipq->pq", y, mats) for mats in self.a_blocks], self.a_lp.T @ y

    def _result(
        self,
        status: SolverStatus,
        it: int,
        xs: list[np.ndarray],
        u: np.ndarray,
        y: np.ndarray,
        stats: tuple[float, float, float],
        message: str,
    ) -> _IpmResult:
        return _IpmResult(status, xs, u, y, it, stats[0], stats[1], stats[2], message)

    def run(self) -> _IpmResult:
        nu = max(self.nu, 1)
        xi = max(10.0, math.sqrt(nu), self.b_norm)
        eta = max(10.0, math.sqrt(nu), self.c_norm)
        xs = [xi * np.eye(n) for n in self.sizes]
        ss = [eta * np.eye(n) for n in self.sizes]
        u = np.full(self.a_lp.shape[1], xi)
        v = np.full(self.a_lp.shape[1], eta)
        y = np.zeros(self.m)
        stalled = 0
        stats = (math.inf, math.inf, math.inf)

        logger.debug("%4s %11s %11s %11s %11s %7s %7s", "iter", "mu", "pres", "dres", "gap", "ap", "ad")
        for it in range(self.max_iters + 1):
            rp = self.b - self._op_a(xs, u)
            aty, aty_lp = self._op_at(y)
            rd = [c - t - s for c, t, s in zip(self.c_blocks, aty, ss)]
            rd_lp = self.c_lp - aty_lp - v
            pobj = sum(float(np.sum(c * x)) for c, x in zip(self.c_blocks, xs)) + float(self.c_lp @ u)
            dobj = float(self.b @ y)
            mu = (sum(float(np.sum(x * s)) for x, s in zip(xs, ss)) + float(u @ v)) / nu
            pres = float(np.max(np.abs(rp), initial=0.0)) / self.b_norm
            dres = max([float(np.max(np.abs(r))) for r in rd] + [float(np.max(np.abs(rd_lp), initial=0.0))])
            dres /= self.c_norm
            gap = abs(pobj - dobj) / (1.0 + abs(pobj) + abs(dobj))
            stats = (pres, dres, gap)

            if pres <= self.tol and dres <= self.tol and gap <= self.tol:
                return self._result(SolverStatus.OPTIMAL, it, xs, u, y, stats, "converged")

            if self.detect_infeasibility:
                if dobj > 0 and pres > self.tol:
                    ray = max(
                        [float(np.max(np.abs(t + s))) for t, s in zip(aty, ss)]
                        + [float(np.max(np.abs(aty_lp + v), initial=0.0))]
                    )
                    if ray / dobj <= RAY_TOL:
                        return self._result(
                            SolverStatus.INFEASIBLE, it, xs, u, y, stats, "dual improving ray found"
                        )
                if pobj < 0 and dres > self.tol:
                    ray = float(np.max(np.abs(self._op_a(xs, u)), initial=0.0))
                    if ray / -pobj <= RAY_TOL:
                        return self._result(
                            SolverStatus.UNDECIDED, it, xs, u, y, stats, "primal improving ray found (dual infeasible)"
                        )

            if it == self.max_iters:
                break
            size = max([float(np.max(np.abs(x))) for x in xs] + [float(np.max(np.abs(y), initial=0.0))])
            if size > _DIVERGENCE:
                return self._result(SolverStatus.UNDECIDED, it, xs, u, y, stats, "iterates diverged")

            # Nesterov-Todd scaling: R^T S R = R^{-1} X R^{-T} = diag(lam)
            scal_r, scal_rinv, lams = [], [], []
            try:
                for x, s in zip(xs, ss):
                    l1 = la.cholesky(x, lower=True)
                    l2 = la.cholesky(s, lower=True)
                    uu, lam, vt = la.svd(l2.T @ l1)
                    inv_sqrt = 1.0 / np.sqrt(lam)
                    scal_r.append((l1 @ vt.T) * inv_sqrt)
                    scal_rinv.append((uu.T @ l2.T) * inv_sqrt[:, None])
                    lams.append(lam)
            except (la.LinAlgError, ValueError):
                return self._result(SolverStatus.UNDECIDED, it, xs, u, y, stats, "non-PD scaling matrix")
            w_lp = np.sqrt(u / v)
            lam_lp = np.sqrt(u * v)

            atil = [
                (r.T @ mats @ r).reshape(self.m, -1) for r, mats in zip(scal_r, self.a_blocks)
            ]
            atil_lp = self.a_lp * w_lp
            schur = atil_lp @ atil_lp.T
            for at in atil:
                schur = schur + at @ at.T
            factor = _factorize(schur) if self.m else None
            if self.m and factor is None:
                return self._result(SolverStatus.UNDECIDED, it, xs, u, y, stats, "singular Schur complement")

            rd_scaled = [r.T @ d @ r for r, d in zip(scal_r, rd)]
            rd_lp_scaled = w_lp * rd_lp

            def direction(
                g: list[np.ndarray], g_lp: np.ndarray
            ) -> tuple[list[np.ndarray], np.ndarray, np.ndarray, list[np.ndarray], np.ndarray]:
                rhs = rp + atil_lp @ (rd_lp_scaled - g_lp)
                for at, rds, gk in zip(atil, rd_scaled, g):
                    rhs = rhs + at @ (rds - gk).ravel()
                dy = la.cho_solve(factor, rhs) if factor is not None else np.zeros(0)
                dst = [
                    r.T @ (d - np.einsum("i,ipq->pq", dy, mats)) @ r for r, d, mats in zip(scal_r, rd, self.a_blocks)
                ]
                dxt = [gk - dsk for gk, dsk in zip(g, dst)]
                ds_lp = w_lp * (rd_lp - self.a_lp.T @ dy)
                dx_lp = g_lp - ds_lp
                return dxt, dx_lp, dy, dst, ds_lp

            # predictor
            g_aff = [-np.diag(lam) for lam in lams]
            dxa, dxa_lp, _, dsa, dsa_lp = direction(g_aff, -lam_lp)
            ap_aff = _max_step(lams, lam_lp, dxa, dxa_lp)
            ad_aff = _max_step(lams, lam_lp, dsa, dsa_lp)
            ap_aff, ad_aff = min(1.0, ap_aff), min(1.0, ad_aff)
            mu_aff = sum(
                float(np.sum((np.diag(lam) + ap_aff * dx) * (np.diag(lam) + ad_aff * ds)))
                for lam, dx, ds in zip(lams, dxa, dsa)
            )
            mu_aff += float((lam_lp + ap_aff * dxa_lp) @ (lam_lp + ad_aff * dsa_lp))
            mu_aff /= nu
            sigma = min(1.0, max(0.0, (mu_aff / mu) ** 3)) if mu > 0 else 0.0

            # corrector
            g_cor = []
            for lam, dx, ds in zip(lams, dxa, dsa):
                rc = sigma * mu * np.eye(lam.size) - np.diag(lam**2) - _sym(dx @ ds)
                g_cor.append(2.0 * rc / (lam[:, None] + lam[None, :]))
            g_cor_lp = (sigma * mu - lam_lp**2 - dxa_lp * dsa_lp) / lam_lp if lam_lp.size else lam_lp
            dxt, dx_lp, dy, dst, ds_lp = direction(g_cor, g_cor_lp)

            tau = 0.9 + 0.09 * min(ap_aff, ad_aff)
            ap = min(1.0, tau * _max_step(lams, lam_lp, dxt, dx_lp))
            ad = min(1.0, tau * _max_step(lams, lam_lp, dst, ds_lp))
            logger.debug("%4d %11.3e %11.3e %11.3e %11.3e %7.4f %7.4f", it, mu, pres, dres, gap, ap, ad)

            xs = [_sym(x + ap * (r @ dx @ r.T)) for x, r, dx in zip(xs, scal_r, dxt)]
            ss = [_sym(s + ad * (ri.T @ ds @ ri)) for s, ri, ds in zip(ss, scal_rinv, dst)]
            u = u + ap * w_lp * dx_lp
            v = v + ad * ds_lp / w_lp
            y = y + ad * dy

            stalled = stalled + 1 if max(ap, ad) < 1e-10 else 0
            if stalled >= _STALL_ITERS:
                return self._result(SolverStatus.UNDECIDED, it, xs, u, y, stats, "step length stalled")

        return self._result(SolverStatus.ITER_LIMIT, self.max_iters, xs, u, y, stats, "iteration limit reached")


def _factorize(schur: np.ndarray) -> Optional[tuple[np.ndarray, bool]]:
    try:
        return la.cho_factor(schur, lower=True)  # type: ignore[no-any-return]
    except la.LinAlgError:
        pass
    shift = 1e-12 * max(1.0, float(np.max(np.diag(schur), initial=1.0)))
    try:
        return la.cho_factor(schur + shift * np.eye(schur.shape[0]), lower=True)  # type: ignore[no-any-return]
    except la.LinAlgError:
        return None


def _max_step(lams: list[np.ndarray], lam_lp: np.ndarray, ds: list[np.ndarray], ds_lp: np.ndarray) -> float:
    """Largest ``alpha`` keeping ``diag(lam) + alpha * ds`` in the cone."""
    step = math.inf
    for lam, d in zip(lams, ds):
        inv = 1.0 / np.sqrt(lam)
        lowest = float(la.eigvalsh(_sym(d) * inv[:, None] * inv[None, :], subset_by_index=[0, 0])[0])
        if lowest < 0:
            step = min(step, -1.0 / lowest)
    neg = ds_lp < 0
    if np.any(neg):
        step = min(step, float(np.min(-lam_lp[neg] / ds_lp[neg])))
    return step


def _presolve(
    problem: ConicProblem, a: np.ndarray, b: np.ndarray, c: np.ndarray
) -> tuple[Optional[_Reduction], np.ndarray, np.ndarray, np.ndarray, str]:
    """Returns the reduction record and the reduced ``(A, b, c)`` on the cone variables.

    The reduction record is ``None`` when the constraints are inconsistent or the objective is
    unbounded along the free scalars; the message says which.
    """
    n_cone = problem.cone_size
    a_cone, a_free = a[:, :n_cone], a[:, n_cone:]
    c_cone, c_free = c[:n_cone], c[n_cone:]

    q: Optional[np.ndarray] = None
    r11: Optional[np.ndarray] = None
    piv = np.arange(problem.free_count)
    rank_f = 0
    mu1 = np.zeros(0)
    qa1 = np.zeros((0, n_cone))
    qb1 = np.zeros(0)
    a2, b2, c2 = a_cone, b, c_cone
    if problem.free_count:
        q, r, piv = la.qr(a_free, pivoting=True)
        diag = np.abs(np.diag(r))
        rank_f = int(np.sum(diag > RANK_TOL * max(float(diag[0]) if diag.size else 0.0, 1e-300)))
        r11 = r[:rank_f, :rank_f]
        c_piv = c_free[piv]
        mu1 = la.solve_triangular(r11, c_piv[:rank_f], trans="T") if rank_f else np.zeros(0)
        leftover = c_piv[rank_f:] - r[:rank_f, rank_f:].T @ mu1
        if np.any(np.abs(leftover) > RANK_TOL * (1.0 + float(np.max(np.abs(c_free))))):
            return None, a2, b2, c2, "objective unbounded along free variables"
        rotated_a = q.T @ a_cone
        rotated_b = q.T @ b
        qa1, qb1 = rotated_a[:rank_f], rotated_b[:rank_f]
        a2, b2 = rotated_a[rank_f:], rotated_b[rank_f:]
        c2 = c_cone - qa1.T @ mu1

    m2 = a2.shape[0]
    kept = np.arange(m2)
    if m2:
        _, r2, piv2 = la.qr(a2.T, mode="economic", pivoting=True)
        diag2 = np.abs(np.diag(r2))
        top = float(diag2[0]) if diag2.size else 0.0
        rank2 = int(np.sum(diag2 > RANK_TOL * top)) if top > 0 else 0
        kept = np.sort(piv2[:rank2])
        dropped = np.setdiff1d(np.arange(m2), kept)
        if dropped.size:
            if kept.size:
                combo = la.lstsq(a2[kept].T, a2[dropped].T)[0]
                predicted = combo.T @ b2[kept]
            else:
                predicted = np.zeros(dropped.size)
            if np.any(np.abs(b2[dropped] - predicted) > 1e-8 * (1.0 + float(np.max(np.abs(b2))))):
                return None, a2, b2, c2, "inconsistent equality constraints"
            logger.debug("presolve dropped %d dependent rows", dropped.size)
    a3 = a2[kept]
    scale = np.linalg.norm(a3, axis=1) if kept.size else np.zeros(0)
    a3 = a3 / scale[:, None] if kept.size else a3
    b3 = b2[kept] / scale if kept.size else np.zeros(0)
    reduction = _Reduction(q, r11, piv, rank_f, mu1, qa1, qb1, kept, scale, m2)
    return reduction, a3, b3, c2, ""


def _solve_standard(problem: ConicProblem, tolerances: Tolerances, detect_infeasibility: bool = True) -> ConicSolution:
    a = problem.a.toarray()
    b, c = problem.b, problem.c
    empty = np.zeros(0)
    reduction, a3, b3, c3, why = _presolve(problem, a, b, c)
    if reduction is None:
        status = SolverStatus.INFEASIBLE if why.startswith("inconsistent") else SolverStatus.UNDECIDED
        logger.info("conic solve: %s (%s)", status, why)
        return ConicSolution(status=status, x=np.zeros(problem.n_variables), y=np.zeros(problem.n_rows), message=why)

    ipm = _InteriorPoint(
        problem.block_sizes, problem.nonneg_count, a3, b3, c3, tolerances, detect_infeasibility
    )
    result = ipm.run()

    # map back
    x_cone = np.concatenate([bl[np.triu_indices(bl.shape[0])] for bl in result.blocks] + [result.lp]) if (
        result.blocks or result.lp.size
    ) else empty
    y2 = np.zeros(reduction.n_rows2)
    if reduction.kept.size:
        y2[reduction.kept] = result.y / reduction.row_scale
    w = np.zeros(problem.free_count)
    if reduction.q is not None:
        if reduction.free_rank:
            rhs = reduction.qb1 - reduction.qa1 @ x_cone
            w[reduction.free_pivots[: reduction.free_rank]] = la.solve_triangular(reduction.r11, rhs)
        y = reduction.q @ np.concatenate([reduction.mu1, y2])
    else:
        y = y2
    x = np.concatenate([x_cone, w])
    blocks, nonneg, free = problem.split(x)
    objective = float(c @ x)
    pres = float(np.max(np.abs(problem.a @ x - b), initial=0.0)) / (1.0 + float(np.max(np.abs(b), initial=0.0)))
    logger.info(
        "conic solve: %s after %d iterations (pres %.2e, dres %.2e, gap %.2e)",
        result.status,
        result.iterations,
        pres,
        result.dres,
        result.gap,
    )
    return ConicSolution(
        status=result.status,
        x=x,
        y=y,
        blocks=blocks,
        nonneg=nonneg,
        free=free,
        objective=objective,
        iterations=result.iterations,
        primal_residual=pres,
        dual_residual=result.dres,
        gap=result.gap,
        message=result.message,
    )


def solve(problem: ConicProblem, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ConicSolution:
    """Solves ``problem``; a zero objective is routed to :func:`solve_feasibility`."""
    if problem.is_feasibility():
        return solve_feasibility(problem, tolerances)
    return _solve_standard(problem, tolerances)


def solve_feasibility(problem: ConicProblem, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ConicSolution:
    """Decides feasibility by maximizing the uniform margin ``t`` with ``X - t I >= 0`` on every block.

    The margin is computed with ``b`` scaled to unit max-norm, so the verdict does not change when
    the data are multiplied by a constant; the reported margin is mapped back to the caller's scale.
    A normalized margin ``<= -not_sos_margin`` is INFEASIBLE. Below ``eig_tol`` the solver point is
    repaired by alternating projections onto the equalities and the cone, and the problem is
    feasible (OPTIMAL) when the margin or the repaired point's smallest eigenvalue is
    ``>= -eig_tol``; otherwise it is UNDECIDED. A negative margin with the trace cap binding is
    re-solved under a larger cap before it counts as INFEASIBLE.
    """
    e = problem.trace_vector()
    if problem.n_rows == 0:
        x = e.copy()
        blocks, nonneg, free = problem.split(x)
        return ConicSolution(
            status=SolverStatus.OPTIMAL,
            x=x,
            y=np.zeros(0),
            blocks=blocks,
            nonneg=nonneg,
            free=free,
            margin=math.inf,
            primal_residual=0.0,
            dual_residual=0.0,
            gap=0.0,
            message="no constraints",
        )

    scale = float(np.max(np.abs(problem.b), initial=0.0)) or 1.0
    normalized = ConicProblem(
        problem.block_sizes, problem.nonneg_count, problem.free_count, problem.a, problem.b / scale, problem.c
    )
    n_cone = problem.cone_size
    factor = CAP_FACTOR
    for attempt in range(CAP_RETRIES + 1):
        margin_problem, cap = _margin_problem(normalized, e, factor)
        inner = _solve_standard(margin_problem, tolerances, detect_infeasibility=False)
        z = inner.x
        t = float(z[-1])
        binding = float(z[n_cone]) <= CAP_SLACK * cap
        if inner.status != SolverStatus.OPTIMAL or t > -tolerances.not_sos_margin or not binding:
            break
        if attempt < CAP_RETRIES:
            logger.debug("trace cap %.3e binds at normalized margin %.3e, enlarging", cap, t)
            factor *= CAP_GROWTH
    x_cone = z[:n_cone] + t * e[:n_cone]
    w = z[n_cone + 1 : n_cone + 1 + problem.free_count]
    x = np.concatenate([x_cone, w])

    status = inner.status
    message = inner.message
    if inner.status == SolverStatus.OPTIMAL:
        if t <= -tolerances.not_sos_margin:
            status = SolverStatus.INFEASIBLE
            message = f"normalized margin {t:.3e}"
        elif t < tolerances.eig_tol:
            x, lowest = _repair(normalized, x, tolerances.eig_tol)
            if t >= -tolerances.eig_tol or lowest >= -tolerances.eig_tol:
                status = SolverStatus.OPTIMAL
            else:
                status = SolverStatus.UNDECIDED
            message = f"normalized margin {t:.3e}, smallest eigenvalue {lowest:.3e} after repair"
    elif inner.status == SolverStatus.INFEASIBLE:
        # only reachable through inconsistent equalities found in presolve
        status = SolverStatus.INFEASIBLE

    x = x * scale
    blocks, nonneg, free = problem.split(x)
    pres = float(np.max(np.abs(problem.a @ x - problem.b), initial=0.0)) / (
        1.0 + float(np.max(np.abs(problem.b), initial=0.0))
    )
    logger.info("feasibility: %s, normalized margin %.3e, trace cap %.3e, scale %.3e", status, t, cap, scale)
    return ConicSolution(
        status=status,
        x=x,
        y=inner.y[: problem.n_rows],
        blocks=blocks,
        nonneg=nonneg,
        free=free,
        objective=0.0,
        margin=t * scale if inner.status == SolverStatus.OPTIMAL else None,
        iterations=inner.iterations,
        primal_residual=pres,
        dual_residual=inner.dual_residual,
        gap=inner.gap,
        message=message,
    )


def _margin_problem(problem: ConicProblem, e: np.ndarray, factor: float = CAP_FACTOR) -> tuple[ConicProblem, float]:
    """Builds ``max t  s.t.  A (x' + t e) = b,  trace(x' + t e) + s = T,  x' in cone, s >= 0``.

    The trace cap ``T`` keeps ``t`` bounded. It is a small multiple of the barrier parameter plus the
    size of the least-norm solution of ``A x = b``, scaled by ``factor``. The absolute error in ``t``
    grows with ``T``.
    """
    a = problem.a.toarray()
    n_cone = problem.cone_size
    x0 = la.lstsq(a, problem.b)[0]
    nu = problem.cone_order
    cap = factor * (nu + abs(float(e @ x0)) + nu * float(np.max(np.abs(x0), initial=0.0)))

    m = problem.n_rows
    n_free = problem.free_count
    e_cone = e[:n_cone]
    cols = n_cone + 1 + n_free + 1
    big = np.zeros((m + 1, cols))
    big[:m, :n_cone] = a[:, :n_cone]
    big[:m, n_cone + 1 : n_cone + 1 + n_free] = a[:, n_cone:]
    big[:m, -1] = a[:, :n_cone] @ e_cone
    big[m, :n_cone] = e_cone
    big[m, n_cone] = 1.0
    big[m, -1] = float(nu)
    rhs = np.concatenate([problem.b, [cap]])
    obj = np.zeros(cols)
    obj[-1] = -1.0
    return ConicProblem(problem.block_sizes, problem.nonneg_count + 1, n_free + 1, big, rhs, obj), cap


def smallest_eigenvalue(problem: ConicProblem, x: np.ndarray) -> float:
    """Smallest eigenvalue over the PSD blocks of ``x``, and smallest of its nonnegative scalars."""
    blocks, nonneg, _ = problem.split(x)
    values = [float(la.eigvalsh(block, subset_by_index=[0, 0])[0]) for block in blocks]
    if nonneg.size:
        values.append(float(np.min(nonneg)))
    return min(values, default=math.inf)


def _clip(problem: ConicProblem, x: np.ndarray) -> np.ndarray:
    """Nearest cone point in the Frobenius metric; free scalars are left alone."""
    out = x.copy()
    for n, offset in zip(problem.block_sizes, problem.block_offsets):
        k = svec_size(n)
        lam, vecs = la.eigh(unpack_block(x[offset : offset + k], n))
        out[offset : offset + k] = pack_block((vecs * np.maximum(lam, 0.0)) @ vecs.T)
    out[problem.psd_size : problem.cone_size] = np.maximum(x[problem.psd_size : problem.cone_size], 0.0)
    return out


def _repair(problem: ConicProblem, x: np.ndarray, eig_tol: float) -> tuple[np.ndarray, float]:
    """Alternating projections between ``{A x = b}`` and the cone, both in the Frobenius metric.

    Returns the equality-feasible iterate with the largest smallest eigenvalue, stopping once that
    eigenvalue is above ``-REPAIR_TARGET * eig_tol``.
    """
    weights = np.ones(problem.n_variables)
    for n, offset in zip(problem.block_sizes, problem.block_offsets):
        rows, cols = np.triu_indices(n)
        weights[offset + np.flatnonzero(rows != cols)] = 2.0
    root = np.sqrt(weights)
    a = problem.a.toarray() / root
    basis = la.orth(a.T)
    anchor = la.lstsq(a, problem.b)[0]

    def onto_equalities(v: np.ndarray) -> np.ndarray:
        z = v * root
        return np.asarray((z - basis @ (basis.T @ z) + anchor) / root)

    current = onto_equalities(x)
    best, best_lowest = current, smallest_eigenvalue(problem, current)
    rounds = 0
    while rounds < REPAIR_ITERS and best_lowest < -REPAIR_TARGET * eig_tol:
        step = onto_equalities(_clip(problem, current))
        rounds += 1
        if float(np.max(np.abs(step - current), initial=0.0)) <= 1e-15:
            break
        current = step
        lowest = smallest_eigenvalue(problem, current)
        if lowest > best_lowest:
            best, best_lowest = current, lowest
    logger.debug("repair: smallest eigenvalue %.3e after %d projections", best_lowest, rounds)
    return best, best_lowest


def polish(problem: ConicProblem, x: np.ndarray) -> np.ndarray:
    """Least-norm correction of ``x`` onto ``{A x = b}``; used before certificates are extracted."""
    if problem.n_rows == 0:
        return x
    a = problem.a.toarray()
    correction = la.lstsq(a, a @ x - problem.b)[0]
    return np.asarray(x - correction)
