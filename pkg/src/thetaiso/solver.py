"""Projection-splitting solver for the doubly nonnegative relaxation.

Consensus ADMM over three copies of the variable: one projected onto the
affine rows of the compiled program, one onto the positive semidefinite cone,
one onto the nonnegative orthant.  Each sweep averages the copies, updates the
scaled dual offsets, and rebalances the step size when the primal and dual
residuals drift apart.  The maximization objective enters through the affine
copy as a linear tilt C / rho.

``project_affine`` and ``project_psd`` are also the public single-step
operators; the affine one replaces each constrained entry group by its plain
average, which is the nearest point when every entry is counted once.
Internally the sweep uses a variant weighted by matrix multiplicity (the
mirrored omega column counts twice), so the three projections measure
distance in the same Frobenius geometry and the splitting converges like the
textbook method.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .eigensolver import eigh_backend
from .program import objective_value

__all__ = [
    "SolverStatus",
    "SolverConfig",
    "SolverResult",
    "project_psd",
    "project_affine",
    "solve",
    "initial_point",
]


class SolverStatus(str, Enum):
    CONVERGED = "Converged"
    MAX_ITER = "MaxIter"
    DIVERGED = "Diverged"


@dataclass(frozen=True)
class SolverConfig:
    tol_primal: float = 1e-7
    tol_dual: float = 1e-7
    max_iter: int = 50000
    step_rho: float = 1.0
    zero_eps: float = 1e-6
    seed: int = 0
    oracle_fallback: bool = False
    eig_backend: str = "numpy"

    def __post_init__(self):
        if self.tol_primal <= 0 or self.tol_dual <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.step_rho <= 0:
            raise ValueError("step_rho must be positive")
        if self.zero_eps <= 0:
            raise ValueError("zero_eps must be positive")
        eigh_backend(self.eig_backend)  # validates the name


@dataclass(frozen=True)
class SolverResult:
    status: SolverStatus
    objective: float
    Y: np.ndarray
    iterations: int
    primal_residual: float
    dual_residual: float
    solve_seconds: float

    @property
    def converged(self):
        return self.status is SolverStatus.CONVERGED


def project_psd(M, eig_backend_name="numpy"):
    """Nearest positive semidefinite matrix in Frobenius norm.

    M must be symmetric (a tiny numerical asymmetry is averaged away);
    negative eigenvalues are clipped to zero and the matrix rebuilt.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got {M.shape}")
    if not np.isfinite(M).all():
        raise ValueError("matrix contains non-finite entries")
    asym = float(np.abs(M - M.T).max())
    scale = 1.0 + float(np.abs(M).max())
    if asym > 1e-8 * scale:
        raise ValueError(f"matrix is not symmetric: max |M - M^T| = {asym:.3e}")
    M = 0.5 * (M + M.T)
    eigh = eigh_backend(eig_backend_name)
    w, V = eigh(M)
    if w[0] >= 0.0:
        return M.copy()
    w = np.maximum(w, 0.0)
    out = (V * w) @ V.T
    return 0.5 * (out + out.T)


def _apply_affine(M, p, link_weight):
    """Overwrite the affine-row entries of M in place.

    Each zeroed pair, the omega corner, and each diagonal/omega link group is
    replaced by the point nearest in a weighted least-squares sense; the
    diagonal entry of a link group carries weight 1 and the omega pair carries
    weight ``link_weight`` (1 treats each stored value once, 2 counts the
    mirrored matrix entry twice, i.e. plain Frobenius distance).
    """
    d = p.pair_diag
    omega = p.omega
    x = 0.5 * (M[d, omega] + M[omega, d])
    y = M[d, d]
    m = (link_weight * x + y) / (link_weight + 1.0)
    M[d, omega] = m
    M[omega, d] = m
    M[d, d] = m
    M[omega, omega] = 1.0
    M[p.zero_rows, p.zero_cols] = 0.0
    return M


def project_affine(M, p):
    """Project onto the affine rows of a program, treating each constrained
    entry group as a single averaged value."""
    M = np.asarray(M, dtype=float)
    if M.shape != (p.dim, p.dim):
        raise ValueError(f"expected a {p.dim} x {p.dim} matrix, got {M.shape}")
    if not np.isfinite(M).all():
        raise ValueError("matrix contains non-finite entries")
    return _apply_affine(M.copy(), p, link_weight=1.0)


def initial_point(p):
    """Affine-feasible starting matrix: uniform diagonal mass 1/n with the
    matching omega column and unit corner."""
    n = p.n
    Z = np.zeros((p.dim, p.dim))
    d = p.pair_diag
    Z[d, d] = 1.0 / n
    Z[d, p.omega] = 1.0 / n
    Z[p.omega, d] = 1.0 / n
    Z[p.omega, p.omega] = 1.0
    return Z


def _polish(Z, p, eigh, max_sweeps=2000):
    """Restore feasibility of a converged iterate by cyclic projections.

    The consensus average sits a hair outside every set, which can leave the
    reported objective above the true ceiling n.  Cycling nonneg -> affine ->
    psd walks it into the feasible region (the last step keeps it exactly
    positive semidefinite); the walk covers a distance of the order of the
    final primal residual, so the objective moves well within tolerance.
    """
    d = p.pair_diag
    omega = p.omega
    W = Z.copy()
    for sweep in range(1, max_sweeps + 1):
        np.clip(W, 0.0, None, out=W)
        _apply_affine(W, p, link_weight=2.0)
        w, V = eigh(0.5 * (W + W.T))
        if w[0] < 0.0:
            W = (V * np.maximum(w, 0.0)) @ V.T
            W = 0.5 * (W + W.T)
        viol = max(
            float(np.abs(W[p.zero_rows, p.zero_cols]).max(initial=0.0)),
            float(np.abs(W[d, omega] - W[d, d]).max()),
            abs(float(W[omega, omega]) - 1.0),
            max(0.0, -float(W.min())),
        )
        excess = objective_value(W, p) - p.n
        if viol <= 1e-10 and excess <= 5e-7:
            break
    return W


def solve(p, cfg=None):
    """Run the splitting iteration on a compiled program."""
    if cfg is None:
        cfg = SolverConfig()
    t0 = time.perf_counter()
    eigh = eigh_backend(cfg.eig_backend)
    n = p.n
    dim = p.dim
    rho = cfg.step_rho
    C = p.objective

    Z = initial_point(p)
    U1 = np.zeros((dim, dim))
    U2 = np.zeros((dim, dim))
    U3 = np.zeros((dim, dim))
    tilt = C / rho

    sqrt3 = np.sqrt(3.0)
    status = SolverStatus.MAX_ITER
    r_norm = s_norm = float("inf")
    best_combined = float("inf")
    it = 0
    for it in range(1, cfg.max_iter + 1):
        X1 = _apply_affine(Z - U1 + tilt, p, link_weight=2.0)
        W = Z - U2
        W = 0.5 * (W + W.T)
        w, V = eigh(W)
        if w[0] >= 0.0:
            X2 = W
        else:
            X2 = (V * np.maximum(w, 0.0)) @ V.T
            X2 = 0.5 * (X2 + X2.T)
        X3 = np.maximum(Z - U3, 0.0)

        Z_new = (X1 + X2 + X3 + U1 + U2 + U3) / 3.0
        s_norm = rho * sqrt3 * float(np.linalg.norm(Z_new - Z))
        U1 += X1 - Z_new
        U2 += X2 - Z_new
        U3 += X3 - Z_new
        Z = Z_new
        r_norm = max(
            float(np.linalg.norm(X1 - Z)),
            float(np.linalg.norm(X2 - Z)),
            float(np.linalg.norm(X3 - Z)),
        )

        scale = min(1.0 + float(np.linalg.norm(Z)), 8.0)
        if r_norm <= cfg.tol_primal * scale and s_norm <= cfg.tol_dual * scale:
            status = SolverStatus.CONVERGED
            break
        # A primal-feasible point cannot score above n, so hitting n with a
        # small primal residual already pins the optimum.
        if r_norm <= cfg.tol_primal * scale and objective_value(Z, p) >= n - 1e-8:
            status = SolverStatus.CONVERGED
            break

        combined = max(r_norm, s_norm)
        if it >= 50:
            if combined > 1e6 * best_combined:
                status = SolverStatus.DIVERGED
                break
        best_combined = min(best_combined, combined)

        if it % 10 == 0:
            if r_norm > 10.0 * s_norm and rho < 1e6:
                rho *= 2.0
                U1 *= 0.5
                U2 *= 0.5
                U3 *= 0.5
                tilt = C / rho
            elif s_norm > 10.0 * r_norm and rho > 1e-6:
                rho *= 0.5
                U1 *= 2.0
                U2 *= 2.0
                U3 *= 2.0
                tilt = C / rho

    Y = 0.5 * (Z + Z.T)
    if status is SolverStatus.CONVERGED:
        Y = _polish(Y, p, eigh)
    return SolverResult(
        status=status,
        objective=objective_value(Y, p),
        Y=Y,
        iterations=it,
        primal_residual=r_norm,
        dual_residual=s_norm,
        solve_seconds=time.perf_counter() - t0,
    )
