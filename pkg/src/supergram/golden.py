"""Detection and construction of golden (maximal) superposition states.

A golden state of an inner-product setting can be converted into every
other state of the same dimension by superposition-free operations.  Two
necessary conditions pin its form: it must be an eigenvector of the Gram
matrix for the smallest eigenvalue, and its tilde vector diag(psi*) G psi
must equal (1/d, ..., 1/d).  Together they force coefficients of common
modulus 1/sqrt(d * lambda_min) with free phases.

Necessity alone does not certify convertibility.  The free-channel
construction used throughout :mod:`supergram.freeops` succeeds for every
target exactly when its residual at the extreme target vanishes, which in
terms of the candidate phases u_i = psi_i / |psi_i| reads

    G_il = (lambda_min - 1) / (d - 1) * u_i * conj(u_l)   for all i != l.

``detect`` therefore scores candidates by both deviations.  This matters
for degenerate minimal eigenspaces: at the equal-overlap setting s = 1/2
in dimension 3, complex eigenspace combinations such as (1, w, w^2) with
w = exp(2 pi i / 3) do satisfy the uniform-tilde condition, yet no free
channel built from them is trace preserving, and the setting admits no
golden state.  The search reports how far the best eigenspace vector
remains from a certified golden state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .gram import (
    DEGENERACY_REL_TOL,
    MIN_EIG_TOL,
    GramSetting,
    build_setting,
    eigensystem,
    fix_phase,
)
from .states import SuperpositionState, normalize

__all__ = [
    "ACCEPT_TOL",
    "DETECT_SEED",
    "N_STARTS",
    "REJECT_TOL",
    "TABLE1_FAMILIES",
    "D3DegeneracyReport",
    "GoldenCandidate",
    "GoldenSearchReport",
    "candidate_form",
    "closed_form_d2",
    "closed_form_equal_real",
    "degeneracy_required_d3",
    "degenerate_family_d3",
    "detect",
    "random_frame_d3",
    "report_to_json",
    "table1_row",
    "table1_setting",
]

# a candidate is accepted when both deviations fall below ACCEPT_TOL; a
# best deviation above REJECT_TOL is confident evidence of nonexistence,
# anything in between is flagged inconclusive
ACCEPT_TOL = 1e-9
REJECT_TOL = 1e-6
N_STARTS = 50
DETECT_SEED = 1905


@dataclass(frozen=True)
class GoldenCandidate:
    """An accepted golden state with its certification numbers."""

    state: SuperpositionState
    lambda_min: float
    tilde_deviation: float
    eigen_residual: float


@dataclass(frozen=True)
class GoldenSearchReport:
    """Outcome of golden-state detection on one setting.

    ``best_deviation`` is the smallest certified-goldenness deviation seen
    (max of tilde deviation and free-channel residual); it is meaningful
    when the outcome is "none".  ``inconclusive`` marks the gray zone
    between acceptance and confident rejection.
    """

    outcome: str
    candidate: GoldenCandidate | None
    best_deviation: float
    inconclusive: bool
    multiplicity: int
    n_starts: int


def report_to_json(report: GoldenSearchReport) -> dict:
    out = {
        "outcome": report.outcome,
        "lambda_min": None,
        "coefficients": None,
        "tilde_deviation": None,
        "eigen_residual": None,
        "best_deviation": report.best_deviation,
        "inconclusive": report.inconclusive,
        "multiplicity": report.multiplicity,
        "n_starts": report.n_starts,
    }
    if report.candidate is not None:
        c = report.candidate
        out["lambda_min"] = c.lambda_min
        out["coefficients"] = [
            {"re": float(z.real), "im": float(z.imag)} for z in c.state.coeffs
        ]
        out["tilde_deviation"] = c.tilde_deviation
        out["eigen_residual"] = c.eigen_residual
    return out


def candidate_form(setting: GramSetting, lambda_min: float, phases) -> SuperpositionState:
    """The candidate maximal state sqrt(1/(d lambda_min)) (e^{i theta_1}, ...).

    Raises if the resulting vector is not normalized for this setting,
    which happens whenever (lambda_min, phases) do not actually describe a
    minimal eigenvector of the Gram matrix.
    """
    if lambda_min <= 0:
        raise ValueError("lambda_min must be positive")
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (setting.d,):
        raise ValueError(f"expected {setting.d} phases")
    coeffs = np.exp(1j * phases) / math.sqrt(setting.d * lambda_min)
    n2 = float(np.real(np.vdot(coeffs, setting.gram @ coeffs)))
    if abs(n2 - 1.0) > 1e-8:
        raise ValueError(
            f"candidate form is not normalized (psi^dag G psi = {n2}); "
            "lambda_min and phases are inconsistent with this setting"
        )
    return SuperpositionState(coeffs, setting)


def _tilde_deviation(setting: GramSetting, coeffs: np.ndarray) -> float:
    t = coeffs.conj() * (setting.gram @ coeffs)
    return float(np.max(np.abs(t - 1.0 / setting.d)))


def _structural_deviation(setting: GramSetting, coeffs: np.ndarray, lam: float) -> float:
    """Largest off-diagonal entry of the free-channel residual at the
    extreme target, G_il - c u_i conj(u_l) with c = (lam - 1)/(d - 1)."""
    d = setting.d
    mods = np.abs(coeffs)
    u = np.where(mods > 1e-12, coeffs / np.where(mods > 1e-12, mods, 1.0), 1.0)
    c = (lam - 1.0) / (d - 1)
    M = setting.gram - c * np.outer(u, u.conj())
    np.fill_diagonal(M, 0.0)
    return float(np.max(np.abs(M)))


def _deviation(setting: GramSetting, coeffs: np.ndarray, lam: float) -> float:
    return max(
        _tilde_deviation(setting, coeffs),
        _structural_deviation(setting, coeffs, lam),
    )


def _normalized_from_raw(setting: GramSetting, raw: np.ndarray) -> np.ndarray:
    n2 = float(np.real(np.vdot(raw, setting.gram @ raw)))
    return raw / math.sqrt(n2)


def _search_objective(params: np.ndarray, X: np.ndarray, setting: GramSetting, lam: float) -> float:
    """Smooth surrogate for the combined deviation over the eigenspace.

    ``params`` are the real and imaginary parts of the span coefficients;
    the squared tilde deviation plus the squared (modulus-weighted)
    residual identity vanish exactly at certified golden states.
    """
    a = params[0::2] + 1j * params[1::2]
    v = X @ a
    nrm = np.linalg.norm(v)
    if nrm < 1e-12:
        return 1e6
    psi = _normalized_from_raw(setting, v / nrm)
    d = setting.d
    t = psi.conj() * (setting.gram @ psi)
    f = float(np.sum(np.abs(t - 1.0 / d) ** 2))
    mods = np.abs(psi)
    c = (lam - 1.0) / (d - 1)
    scale = d * lam
    E = scale * (setting.gram * np.outer(mods, mods) - c * np.outer(psi, psi.conj()))
    np.fill_diagonal(E, 0.0)
    return f + float(np.sum(np.abs(E) ** 2))


def _deviation_of_params(params: np.ndarray, X: np.ndarray, setting: GramSetting, lam: float) -> float:
    a = params[0::2] + 1j * params[1::2]
    v = X @ a
    nrm = np.linalg.norm(v)
    if nrm < 1e-12:
        return 1e6
    psi = _normalized_from_raw(setting, v / nrm)
    return _deviation(setting, psi, lam)


def _degenerate_search(setting, X, lam, n_starts, seed, accept_tol=ACCEPT_TOL):
    """Multistart quasi-Newton search of the degenerate minimal eigenspace,
    followed by a derivative-free polish of the reported deviation.

    Returns (best deviation, best coefficient vector, starts run).
    """
    d, m = X.shape
    rng = np.random.default_rng(seed)

    starts = []
    a0 = X.conj().T @ np.ones(d)
    if np.linalg.norm(a0) > 1e-9:
        p0 = np.empty(2 * m)
        p0[0::2], p0[1::2] = a0.real, a0.imag
        starts.append(p0)
        # cheap exit for the orthonormal-limit style cases
        dev0 = _deviation_of_params(p0, X, setting, lam)
        if dev0 <= accept_tol:
            a = p0[0::2] + 1j * p0[1::2]
            v = X @ a
            return dev0, _normalized_from_raw(setting, v / np.linalg.norm(v)), 1
    while len(starts) < n_starts:
        starts.append(rng.standard_normal(2 * m))

    converged = []
    for p in starts:
        res = minimize(
            _search_objective,
            p,
            args=(X, setting, lam),
            method="L-BFGS-B",
            options={"gtol": 1e-12, "ftol": 1e-16, "maxiter": 500},
        )
        converged.append((float(res.fun), res.x))
        if res.fun < 1e-22:
            # a certified golden point; no further starts needed
            break
    converged.sort(key=lambda item: item[0])

    best_dev = np.inf
    best_x = converged[0][1]
    for _, x in converged[:3]:
        polish = minimize(
            _deviation_of_params,
            x,
            args=(X, setting, lam),
            method="Nelder-Mead",
            options={"xatol": 1e-12, "fatol": 1e-14, "maxfev": 1500},
        )
        cand_dev = float(polish.fun)
        if cand_dev < best_dev:
            best_dev = cand_dev
            best_x = polish.x
    for _, x in converged:
        dev = _deviation_of_params(x, X, setting, lam)
        if dev < best_dev:
            best_dev = dev
            best_x = x

    a = best_x[0::2] + 1j * best_x[1::2]
    v = X @ a
    psi = _normalized_from_raw(setting, v / np.linalg.norm(v))
    return best_dev, psi, len(converged)


def detect(
    setting: GramSetting,
    degeneracy_rel_tol: float = DEGENERACY_REL_TOL,
    n_starts: int = N_STARTS,
    seed: int = DETECT_SEED,
    accept_tol: float = ACCEPT_TOL,
    reject_tol: float = REJECT_TOL,
) -> GoldenSearchReport:
    """Decide whether a setting admits a golden state and construct it.

    For a nondegenerate minimal eigenvalue the minimal eigenvector is
    accepted when its components share one modulus and its tilde vector is
    uniform (both within ``accept_tol``).  For a degenerate minimal
    eigenvalue of multiplicity m the unit sphere of the eigenspace is
    searched over 2m - 2 effective real parameters with ``n_starts``
    multistarts; acceptance additionally requires the free-channel
    residual identity, and the report carries the smallest combined
    deviation found when no vector qualifies.

    The search is deterministic for a fixed ``seed``.
    """
    es = eigensystem(setting, degeneracy_rel_tol)
    if es.lambda_min <= MIN_EIG_TOL:
        raise ValueError("setting is not positive definite (dependent basis)")
    group = list(es.min_group)
    m = len(group)
    lam = float(np.mean(es.eigenvalues[group]))

    if m == 1:
        x = es.eigenvectors[:, 0]
        psi = fix_phase(_normalized_from_raw(setting, x))
        tdev = _tilde_deviation(setting, psi)
        mods = np.abs(psi)
        spread = float(mods.max() - mods.min())
        if tdev <= accept_tol and spread <= accept_tol:
            cand = _make_candidate(setting, psi, lam)
            return GoldenSearchReport("found", cand, tdev, False, 1, 0)
        best = max(tdev, spread)
        return GoldenSearchReport("none", None, best, best <= reject_tol, 1, 0)

    X = es.eigenvectors[:, group]
    best_dev, psi, starts_run = _degenerate_search(setting, X, lam, n_starts, seed, accept_tol)
    tdev = _tilde_deviation(setting, psi)
    sdev = _structural_deviation(setting, psi, lam)
    if tdev <= accept_tol and sdev <= accept_tol:
        cand = _make_candidate(setting, fix_phase(psi), lam)
        return GoldenSearchReport("found", cand, best_dev, False, m, starts_run)
    return GoldenSearchReport("none", None, best_dev, best_dev <= reject_tol, m, starts_run)


def _make_candidate(setting: GramSetting, psi: np.ndarray, lam: float) -> GoldenCandidate:
    state = SuperpositionState(psi, setting)
    residual = float(np.linalg.norm(setting.gram @ psi - lam * psi))
    return GoldenCandidate(
        state=state,
        lambda_min=lam,
        tilde_deviation=_tilde_deviation(setting, psi),
        eigen_residual=residual,
    )


def closed_form_d2(s_modulus: float, theta: float = 0.0, sign: str = "-") -> SuperpositionState:
    """Golden state of a qubit setting with overlap s e^{i theta}.

    The "-" branch uses eigenvalue 1 - s and coefficients
    (1, -e^{-i theta}) / sqrt(2 (1 - s)); it is minimal for s >= 0.  The
    "+" branch mirrors it for s <= 0.
    """
    s = float(s_modulus)
    if abs(s) >= 1.0:
        raise ValueError("|s| must be < 1")
    if sign not in ("-", "+"):
        raise ValueError("sign must be '-' or '+'")
    if sign == "-" and s < 0:
        raise ValueError("the '-' branch (eigenvalue 1 - s) is not minimal for s < 0")
    if sign == "+" and s > 0:
        raise ValueError("the '+' branch (eigenvalue 1 + s) is not minimal for s > 0")
    setting = build_setting(2, [(1, 2, s * np.exp(1j * theta))])
    pm = -1.0 if sign == "-" else 1.0
    lam = 1.0 + pm * s
    coeffs = np.array([1.0, pm * np.exp(-1j * theta)], dtype=complex) / math.sqrt(2.0 * lam)
    return SuperpositionState(coeffs, setting)


def closed_form_equal_real(d: int, s: float) -> SuperpositionState:
    """Golden state (1, ..., 1) / sqrt(d (1 + (d-1) s)) of the equal real
    overlap setting, valid for s in (1/(1-d), 0]."""
    if d < 2:
        raise ValueError("dimension must be >= 2")
    lo = 1.0 / (1.0 - d)
    if not (lo < s <= 0.0):
        raise ValueError(
            f"equal real overlap s must lie in ({lo}, 0] for the uniform state "
            f"to be the minimal eigenvector, got s = {s}"
        )
    setting = build_setting(d, [(i, j, s) for i in range(1, d + 1) for j in range(i + 1, d + 1)])
    lam = 1.0 + (d - 1) * s
    coeffs = np.ones(d, dtype=complex) / math.sqrt(d * lam)
    return SuperpositionState(coeffs, setting)


# the nine three-dimensional sign-pattern families: overlap multipliers for
# (s12, s13, s23), the minimal eigenvalue as (a + b s), the eigenvector
# pattern, and the admissible half-open range of s
TABLE1_FAMILIES = {
    "s,s,s": ((1, 1, 1), (1.0, 2.0), (1, 1, 1), (-0.5, 0.0)),
    "-s,s,s": ((-1, 1, 1), (1.0, -2.0), (1, 1, -1), (0.0, 0.5)),
    "s,-s,s": ((1, -1, 1), (1.0, -2.0), (1, -1, 1), (0.0, 0.5)),
    "s,s,-s": ((1, 1, -1), (1.0, -2.0), (-1, 1, 1), (0.0, 0.5)),
    "s,-s,-s": ((1, -1, -1), (1.0, 2.0), (1, 1, -1), (-0.5, 0.0)),
    "-s,s,-s": ((-1, 1, -1), (1.0, 2.0), (1, -1, 1), (-0.5, 0.0)),
    "-s,-s,s": ((-1, -1, 1), (1.0, 2.0), (-1, 1, 1), (-0.5, 0.0)),
    "-s,-s,-s": ((-1, -1, -1), (1.0, -2.0), (1, 1, 1), (0.0, 0.5)),
    "s,is,-is": ((1, 1j, -1j), (1.0, -2.0), (-1j, 1j, 1), (0.0, 0.5)),
}


def table1_setting(family: str, s: float) -> GramSetting:
    """Build the Gram setting of one sign-pattern family at parameter s."""
    if family not in TABLE1_FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(TABLE1_FAMILIES)}")
    mults, _, _, (lo, hi) = TABLE1_FAMILIES[family]
    if lo == 0.0:
        ok = 0.0 <= s < hi
    else:
        ok = lo < s <= 0.0
    if not ok:
        raise ValueError(f"family {family!r} requires s in "
                         f"{'[0, %g)' % hi if lo == 0.0 else '(%g, 0]' % lo}, got {s}")
    m12, m13, m23 = mults
    return build_setting(3, [(1, 2, m12 * s), (1, 3, m13 * s), (2, 3, m23 * s)])


def table1_row(family: str, s: float) -> GoldenCandidate:
    """Golden state of one sign-pattern family, verified through ``detect``.

    The returned candidate carries the family's minimal eigenvalue and the
    detected state, which matches the family's eigenvector pattern up to a
    global phase.
    """
    setting = table1_setting(family, s)
    _, (a, b), pattern, _ = TABLE1_FAMILIES[family]
    lam_expected = a + b * s
    report = detect(setting)
    if report.outcome != "found":
        raise RuntimeError(f"family {family!r} at s = {s} unexpectedly admits no golden state")
    cand = report.candidate
    if abs(cand.lambda_min - lam_expected) > 1e-9:
        raise RuntimeError(
            f"family {family!r} at s = {s}: detected lambda_min {cand.lambda_min} "
            f"differs from the family value {lam_expected}"
        )
    expected = normalize(np.asarray(pattern, dtype=complex), setting)
    if _phase_aligned_distance(expected.coeffs, cand.state.coeffs) > 1e-9:
        raise RuntimeError(f"family {family!r} at s = {s}: detected state deviates from the pattern")
    return cand


def _phase_aligned_distance(a: np.ndarray, b: np.ndarray) -> float:
    ov = np.vdot(a, b)
    phase = ov / abs(ov) if abs(ov) > 1e-15 else 1.0
    return float(np.linalg.norm(a * phase - b))


def random_frame_d3(rng: np.random.Generator, phases=None) -> np.ndarray:
    """A 3x3 unitary whose first column has equal-modulus entries
    e^{i theta_k} / sqrt(3); the remaining columns complete it."""
    if phases is None:
        phases = rng.uniform(0.0, 2.0 * np.pi, size=3)
    col0 = np.exp(1j * np.asarray(phases, dtype=float)) / math.sqrt(3.0)
    A = np.column_stack([col0, rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))])
    Q, _ = np.linalg.qr(A)
    # keep the intended first column exactly (QR fixes its phase arbitrarily)
    Q[:, 0] = col0
    Q[:, 1] -= col0 * np.vdot(col0, Q[:, 1])
    Q[:, 1] /= np.linalg.norm(Q[:, 1])
    Q[:, 2] -= col0 * np.vdot(col0, Q[:, 2]) + Q[:, 1] * np.vdot(Q[:, 1], Q[:, 2])
    Q[:, 2] /= np.linalg.norm(Q[:, 2])
    return Q


def degenerate_family_d3(lambda1: float, frame: np.ndarray) -> GramSetting:
    """Member of the three-dimensional golden-admitting family.

    Given lambda1 in (0, 1] and a unitary frame whose first column is a
    golden direction (equal-modulus entries), the unique unit-diagonal
    Gram matrix with spectrum {lambda1, lambda2, lambda2},
    lambda2 = (3 - lambda1) / 2, and that minimal eigenvector is

        G = lambda2 I + (lambda1 - lambda2) x1 x1^dag.

    lambda1 = 1 gives the identity (orthonormal limit).
    """
    lam1 = float(lambda1)
    if not (0.0 < lam1 <= 1.0):
        raise ValueError(f"lambda1 must lie in (0, 1], got {lam1}")
    frame = np.asarray(frame, dtype=complex)
    if frame.shape != (3, 3):
        raise ValueError("frame must be a 3x3 unitary")
    if np.linalg.norm(frame.conj().T @ frame - np.eye(3)) > 1e-10:
        raise ValueError("frame must be unitary")
    x1 = frame[:, 0]
    if np.max(np.abs(np.abs(x1) - 1.0 / math.sqrt(3.0))) > 1e-9:
        raise ValueError("frame's first column must have equal-modulus entries (golden form)")
    lam2 = (3.0 - lam1) / 2.0
    G = lam2 * np.eye(3, dtype=complex) + (lam1 - lam2) * np.outer(x1, x1.conj())
    if np.max(np.abs(np.diag(G) - 1.0)) > 1e-10:
        raise ValueError("construction failed to produce a unit diagonal")
    return build_setting(3, [(1, 2, G[0, 1]), (1, 3, G[0, 2]), (2, 3, G[1, 2])])


@dataclass(frozen=True)
class D3DegeneracyReport:
    """Whether a d = 3 setting admits a golden state, whether its two
    largest eigenvalues coincide, and whether the two facts agree with the
    rule that golden-admitting settings have a degenerate pair."""

    admits_golden: bool
    degenerate_pair: bool
    consistent: bool


def degeneracy_required_d3(setting: GramSetting, rel_tol: float = 1e-8) -> D3DegeneracyReport:
    """Check the d = 3 degeneracy rule on one setting.

    Returns a report rather than asserting, so a violation (none is known)
    would be visible instead of fatal.
    """
    if setting.d != 3:
        raise ValueError("this check is specific to three-dimensional settings")
    report = detect(setting)
    es = eigensystem(setting)
    lam2, lam3 = float(es.eigenvalues[1]), float(es.eigenvalues[2])
    pair = abs(lam3 - lam2) <= rel_tol * max(abs(lam3), 1.0)
    admits = report.outcome == "found"
    return D3DegeneracyReport(
        admits_golden=admits,
        degenerate_pair=pair,
        consistent=(not admits) or pair,
    )
