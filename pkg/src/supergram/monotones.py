"""Superposition monotones and their extremal bounds.

The l1 monotone sums the off-diagonal moduli of the basis-bilinear
coefficient matrix; the relative-entropy monotone minimizes S(rho || sigma)
over free states sigma = sum_k q_k |c_k><c_k| by exponentiated-gradient
descent on the probability simplex.  Golden states saturate the setting's
bounds (d - 1) / lambda_min and ln(d / lambda_min).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gram import GramSetting, eigensystem, embedding
from .states import DensityOperator, SuperpositionState

__all__ = [
    "BoundCheck",
    "MonotoneReport",
    "RelEntropyInfo",
    "bound_check",
    "constant_trace_overlaps",
    "l1_superposition",
    "monotone_report",
    "rel_entropy_superposition",
]

# interior floor keeping ln(sigma) finite while some q_k -> 0
_Q_FLOOR = 1e-12
# eigenvalue floor for the matrix logarithm
_LOG_FLOOR = 1e-300


def _coefficient_bilinear(rho) -> tuple[np.ndarray, GramSetting]:
    """Coefficient matrix and setting for a state, density operator, or a
    raw coefficient-bilinear matrix paired with its setting."""
    if isinstance(rho, SuperpositionState):
        return np.outer(rho.coeffs, rho.coeffs.conj()), rho.setting
    if isinstance(rho, DensityOperator):
        return rho.coefficient_matrix(), rho.setting
    raise TypeError("expected a SuperpositionState or DensityOperator")


def l1_superposition(rho) -> float:
    """Sum of off-diagonal moduli of the basis-bilinear coefficients.

    For a pure state this is sum_{i != j} |psi_i| |psi_j|; zero exactly on
    superposition-free states (diagonal mixtures of basis projectors).
    """
    C, _ = _coefficient_bilinear(rho)
    A = np.abs(C)
    return float(A.sum() - np.trace(A))


def _log_herm(M: np.ndarray) -> np.ndarray:
    evals, evecs = np.linalg.eigh(M)
    logs = np.log(np.clip(evals, _LOG_FLOOR, None))
    return (evecs * logs) @ evecs.conj().T


def _entropy_term(rho: np.ndarray) -> float:
    evals = np.linalg.eigvalsh(rho)
    evals = evals[evals > 1e-15]
    return float(np.sum(evals * np.log(evals)))


def _loewner_log(w: np.ndarray) -> np.ndarray:
    """Divided-difference table of ln on the (floored) eigenvalues:
    L_ij = (ln w_i - ln w_j) / (w_i - w_j), with 1/w on coincidences."""
    w = np.clip(w, _Q_FLOOR * 1e-6, None)
    lw = np.log(w)
    diff = w[:, None] - w[None, :]
    num = lw[:, None] - lw[None, :]
    small = np.abs(diff) <= 1e-12 * np.maximum(w[:, None], w[None, :])
    mean_inv = 2.0 / (w[:, None] + w[None, :])
    return np.where(small, mean_inv, num / np.where(small, 1.0, diff))


@dataclass(frozen=True)
class RelEntropyInfo:
    value: float
    q: np.ndarray
    iterations: int
    gradient_norm: float
    converged: bool


def rel_entropy_superposition(
    rho,
    grad_tol: float = 1e-8,
    max_iter: int = 20000,
    full_output: bool = False,
):
    """min_q S(rho || sum_k q_k |c_k><c_k|) over the probability simplex.

    The objective tr(rho ln rho) - tr(rho ln sigma(q)) is convex in q, and
    sigma(q) = V diag(q) V^dag in the embedding frame.  Exponentiated
    gradient steps with backtracking keep q strictly inside the simplex
    (floor 1e-12); the iteration stops once the simplex-projected gradient
    norm falls below ``grad_tol``.

    With ``full_output`` the optimizer diagnostics are returned alongside
    the value.
    """
    if isinstance(rho, SuperpositionState):
        setting = rho.setting
        V = embedding(setting)
        w0 = V @ rho.coeffs
        rho_emb = np.outer(w0, w0.conj())
    elif isinstance(rho, DensityOperator):
        setting = rho.setting
        V = embedding(setting)
        rho_emb = rho.matrix
    else:
        raise TypeError("expected a SuperpositionState or DensityOperator")
    d = setting.d
    const = _entropy_term(rho_emb)

    def objective_grad(q):
        sigma = (V * q) @ V.conj().T
        w, U = np.linalg.eigh(sigma)
        w = np.clip(w, _LOG_FLOOR, None)
        logs = np.log(w)
        A = U.conj().T @ rho_emb @ U
        val = const - float(np.real(np.sum(np.diag(A) * logs)))
        L = _loewner_log(w)
        W = U.conj().T @ V
        M = A.T * L
        grad = -np.real(np.einsum("ik,ij,jk->k", W, M, W.conj()))
        return val, grad

    q = np.full(d, 1.0 / d)
    val, grad = objective_grad(q)
    iterations = 0
    pg_norm = _projected_gradient_norm(q, grad)
    eta = 1.0
    while pg_norm > grad_tol and iterations < max_iter:
        step = eta
        accepted = False
        for _ in range(60):
            expo = np.clip(-step * (grad - float(q @ grad)), -60.0, 60.0)
            cand = q * np.exp(expo)
            cand = np.clip(cand, _Q_FLOOR, None)
            cand /= cand.sum()
            cand_val, cand_grad = objective_grad(cand)
            if cand_val <= val + 1e-15:
                accepted = True
                break
            step /= 2.0
        if not accepted:
            break
        stalled = cand_val > val - 1e-18 and float(np.linalg.norm(cand - q)) < 1e-15
        q, val, grad = cand, cand_val, cand_grad
        eta = min(step * 2.0, 1e3)
        pg_norm = _projected_gradient_norm(q, grad)
        iterations += 1
        if stalled:
            break

    value = max(val, 0.0)
    info = RelEntropyInfo(
        value=value,
        q=q,
        iterations=iterations,
        gradient_norm=pg_norm,
        converged=bool(pg_norm <= grad_tol),
    )
    return (value, info) if full_output else value


def _projected_gradient_norm(q: np.ndarray, grad: np.ndarray) -> float:
    """KKT residual on the simplex: interior coordinates must share one
    multiplier, floored coordinates may only push outward."""
    active = q <= _Q_FLOOR * 10.0
    if np.all(active):
        active = np.zeros_like(active)
    mu = float(np.sum(q[~active] * grad[~active]) / np.sum(q[~active]))
    r = grad - mu
    r[active] = np.minimum(r[active], 0.0)
    return float(np.linalg.norm(r * np.where(active, 1.0, q)))


def constant_trace_overlaps(psi) -> np.ndarray:
    """Overlaps tr(rho |c_i><c_i|) with every basis projector.

    For a pure state this is |<Psi|c_i>|^2 = |(G psi)_i|^2; a golden state
    has all components equal to lambda_min / d.
    """
    if isinstance(psi, SuperpositionState):
        g = psi.setting.gram @ psi.coeffs
        return np.abs(g) ** 2
    if isinstance(psi, DensityOperator):
        V = embedding(psi.setting)
        return np.real(np.einsum("ij,jk,ki->i", V.conj().T, psi.matrix, V)).copy()
    raise TypeError("expected a SuperpositionState or DensityOperator")


@dataclass(frozen=True)
class BoundCheck:
    l1_within: bool
    rel_entropy_within: bool
    l1_attained: bool
    rel_entropy_attained: bool


@dataclass(frozen=True, eq=False)
class MonotoneReport:
    l1: float
    rel_entropy: float
    overlaps: np.ndarray
    l1_bound: float
    rel_entropy_bound: float
    iterations: int
    gradient_norm: float

    def to_json(self) -> dict:
        return {
            "l1": self.l1,
            "rel_entropy": self.rel_entropy,
            "overlaps": [float(x) for x in self.overlaps],
            "bounds": {"l1_max": self.l1_bound, "rel_ent_max": self.rel_entropy_bound},
            "attained": bool(
                abs(self.l1 - self.l1_bound) <= 1e-9
                and abs(self.rel_entropy - self.rel_entropy_bound) <= 1e-5
            ),
        }


def monotone_report(rho, rel_entropy_tol: float = 1e-8) -> MonotoneReport:
    """Evaluate both monotones, the basis overlaps, and the setting's
    extremal bounds for one state."""
    _, setting = _coefficient_bilinear(rho)
    lam_min = eigensystem(setting).lambda_min
    value, info = rel_entropy_superposition(rho, grad_tol=rel_entropy_tol, full_output=True)
    return MonotoneReport(
        l1=l1_superposition(rho),
        rel_entropy=value,
        overlaps=constant_trace_overlaps(rho),
        l1_bound=(setting.d - 1) / lam_min,
        rel_entropy_bound=float(np.log(setting.d / lam_min)),
        iterations=info.iterations,
        gradient_norm=info.gradient_norm,
    )


def bound_check(report: MonotoneReport, setting: GramSetting) -> BoundCheck:
    """Verify the monotone values against the setting's upper bounds and
    flag attainment (golden states attain both)."""
    lam_min = eigensystem(setting).lambda_min
    l1_max = (setting.d - 1) / lam_min
    re_max = float(np.log(setting.d / lam_min))
    return BoundCheck(
        l1_within=bool(report.l1 <= l1_max + 1e-9),
        rel_entropy_within=bool(report.rel_entropy <= re_max + 1e-5),
        l1_attained=bool(abs(report.l1 - l1_max) <= 1e-9),
        rel_entropy_attained=bool(abs(report.rel_entropy - re_max) <= 1e-5),
    )
