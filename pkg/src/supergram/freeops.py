"""Superposition-free Kraus operators in the matrix picture.

A Kraus matrix acting on coefficient vectors is free when every column has
at most one nonzero entry.  Two families realize golden-state conversions:

* S1 operators, one per permutation sigma, carry the transformation,
  K[sigma(j), j] = sqrt(1/d!) phi_{sigma(j)} / psi_j, so each maps the
  initial coefficient vector to sqrt(1/d!) times the target.
* S2 operators, one nonzero row each, annihilate the initial state and
  complete the channel: writing R = G - sum K^dag G K, an
  eigendecomposition R = sum_m w_m w_m^dag yields single-row operators
  with row m equal to conj(w_m), contributing exactly w_m w_m^dag because
  the Gram diagonal is one.

The whole set is trace preserving precisely when R is positive
semidefinite and annihilates the initial vector; the certificate records
both margins together with the Frobenius completeness residual.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .gram import GramSetting, embedding, same_setting
from .states import DensityOperator, SuperpositionState, density_pure

__all__ = [
    "MAX_ENUM_DIM",
    "ChannelCertificate",
    "FreeKraus",
    "KrausSet",
    "ResidualReport",
    "TraceCertificate",
    "apply_map",
    "apply_mixed",
    "build_kraus_set",
    "build_s1",
    "build_s2",
    "is_free_kraus",
    "kraus_sum",
    "residual",
    "verify_trace_preserving",
]

# the d! enumeration is refused beyond this dimension (8! = 40320 operators)
MAX_ENUM_DIM = 8

FROBENIUS_TOL = 1e-9
PSD_TOL = 1e-10
ANNIHILATION_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class FreeKraus:
    """One free Kraus matrix; ``kind`` is "s1", "s2" or "general"."""

    matrix: np.ndarray
    kind: str = "general"

    def __post_init__(self):
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=complex))
        self.matrix.setflags(write=False)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "matrix": [
                [{"re": float(z.real), "im": float(z.imag)} for z in row]
                for row in self.matrix
            ],
        }


def is_free_kraus(M: np.ndarray, tol: float = 1e-10) -> bool:
    """True when every column of M has at most one entry above ``tol``."""
    M = np.asarray(M)
    return bool(np.all(np.count_nonzero(np.abs(M) > tol, axis=0) <= 1))


def build_s1(psi: SuperpositionState, phi: SuperpositionState) -> list[FreeKraus]:
    """The d! permutation-structured operators converting psi to phi.

    Operator n places, at position (sigma_n(j), j) for the n-th
    lexicographic permutation, the value sqrt(1/d!) phi_{sigma_n(j)} /
    psi_j; every operator maps psi's coefficient vector to sqrt(1/d!)
    times phi's.  Requires every psi_j nonzero (full superposition rank).
    Target coefficients may vanish; the corresponding entries are zero.
    """
    if not same_setting(psi.setting, phi.setting):
        raise ValueError("initial and target state must share one setting")
    d = psi.setting.d
    if d > MAX_ENUM_DIM:
        raise ValueError(f"refusing the {d}! operator enumeration beyond d = {MAX_ENUM_DIM}")
    if np.min(np.abs(psi.coeffs)) <= 1e-12:
        raise ValueError("initial state must have full superposition rank (no zero coefficient)")
    root = math.sqrt(1.0 / math.factorial(d))
    ratios = root * phi.coeffs[:, None] / psi.coeffs[None, :]
    ops = []
    for sigma in permutations(range(d)):
        K = np.zeros((d, d), dtype=complex)
        for j in range(d):
            K[sigma[j], j] = ratios[sigma[j], j]
        ops.append(FreeKraus(K, "s1"))
    return ops


def kraus_sum(setting: GramSetting, ops) -> np.ndarray:
    """The completeness matrix sum_n K_n^dag G K_n."""
    G = setting.gram
    total = np.zeros_like(G)
    for op in ops:
        K = op.matrix if isinstance(op, FreeKraus) else np.asarray(op, dtype=complex)
        total += K.conj().T @ G @ K
    return total


@dataclass(frozen=True, eq=False)
class ResidualReport:
    """The residual R = G - sum K^dag G K and its certificate margins."""

    matrix: np.ndarray
    psd_margin: float
    annihilation: float
    diagonally_dominant: bool

    def __post_init__(self):
        self.matrix.setflags(write=False)


def residual(setting: GramSetting, ksum: np.ndarray, psi: SuperpositionState) -> ResidualReport:
    """Certificate data for R = G - ksum against the initial state psi.

    ``psd_margin`` is the smallest eigenvalue of the Hermitian part of R;
    ``annihilation`` is |R psi|.  Diagonal dominance, when it holds, is an
    independent witness of positive semidefiniteness.
    """
    R = setting.gram - np.asarray(ksum, dtype=complex)
    H = (R + R.conj().T) / 2.0
    margin = float(np.linalg.eigvalsh(H)[0])
    ann = float(np.linalg.norm(R @ psi.coeffs))
    absR = np.abs(R)
    off = absR.sum(axis=1) - np.diag(absR)
    dom = bool(np.all(np.real(np.diag(R)) >= -1e-12) and np.all(np.diag(absR) + 1e-12 >= off))
    return ResidualReport(matrix=R, psd_margin=margin, annihilation=ann, diagonally_dominant=dom)


def build_s2(
    R: np.ndarray,
    psi: SuperpositionState,
    psd_tol: float = PSD_TOL,
    annihilation_tol: float = ANNIHILATION_TOL,
) -> list[FreeKraus]:
    """Single-row operators decomposing a PSD residual that kills psi.

    Eigenvectors of R with positive eigenvalue, scaled to w_m, become
    operators whose only nonzero row is conj(w_m); each contributes
    w_m w_m^dag to the completeness sum and annihilates psi.
    """
    R = np.asarray(R, dtype=complex)
    H = (R + R.conj().T) / 2.0
    evals, evecs = np.linalg.eigh(H)
    if float(evals[0]) < -psd_tol:
        raise ValueError(f"residual is not positive semidefinite (min eigenvalue {evals[0]})")
    ann = float(np.linalg.norm(R @ psi.coeffs))
    if ann > annihilation_tol:
        raise ValueError(f"residual does not annihilate the initial state (|R psi| = {ann})")
    d = psi.setting.d
    ops = []
    row = 0
    for lam, vec in zip(evals, evecs.T):
        if lam <= 1e-13:
            continue
        w = math.sqrt(float(lam)) * vec
        F = np.zeros((d, d), dtype=complex)
        F[row, :] = w.conj()
        ops.append(FreeKraus(F, "s2"))
        row += 1
    return ops


@dataclass(frozen=True)
class TraceCertificate:
    frobenius_residual: float
    passed: bool


def verify_trace_preserving(setting: GramSetting, ops, tol: float = FROBENIUS_TOL) -> TraceCertificate:
    """Check sum K^dag G K = G over all supplied operators (S1 and S2
    alike) in Frobenius norm."""
    total = kraus_sum(setting, ops)
    res = float(np.linalg.norm(total - setting.gram))
    return TraceCertificate(frobenius_residual=res, passed=bool(res <= tol))


@dataclass(frozen=True)
class ChannelCertificate:
    """Full evidence bundle for one constructed channel."""

    n_s1: int
    n_s2: int
    frobenius_residual: float
    psd_margin: float
    annihilation: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "n_s1": self.n_s1,
            "n_s2": self.n_s2,
            "frobenius_residual": self.frobenius_residual,
            "psd_margin": self.psd_margin,
            "annihilation": self.annihilation,
            "pass": self.passed,
        }


@dataclass(frozen=True, eq=False)
class KrausSet:
    """A certified superposition-free channel taking ``source`` to
    ``target`` with uniform branch probability 1/d!."""

    setting: GramSetting
    s1: tuple
    s2: tuple
    probability: float
    source: SuperpositionState
    target: SuperpositionState
    certificate: ChannelCertificate
    full_rank_target: bool

    def operators(self):
        return list(self.s1) + list(self.s2)


def build_kraus_set(psi: SuperpositionState, phi: SuperpositionState) -> KrausSet:
    """Build and certify the full S1 + S2 channel for psi -> phi.

    Raises when the residual left by the S1 family is not a valid S2
    decomposition problem (not PSD, or not annihilating psi), which is the
    numerical signature that psi is not a golden state of its setting.
    """
    setting = psi.setting
    s1 = build_s1(psi, phi)
    ksum = kraus_sum(setting, s1)
    res = residual(setting, ksum, psi)
    s2 = build_s2(res.matrix, psi)
    trace_cert = verify_trace_preserving(setting, s1 + s2)
    cert = ChannelCertificate(
        n_s1=len(s1),
        n_s2=len(s2),
        frobenius_residual=trace_cert.frobenius_residual,
        psd_margin=res.psd_margin,
        annihilation=res.annihilation,
        passed=bool(
            trace_cert.passed
            and res.psd_margin >= -PSD_TOL
            and res.annihilation <= ANNIHILATION_TOL
        ),
    )
    full_rank = bool(np.min(np.abs(phi.coeffs)) > 1e-12)
    return KrausSet(
        setting=setting,
        s1=tuple(s1),
        s2=tuple(s2),
        probability=1.0 / math.factorial(setting.d),
        source=psi,
        target=phi,
        certificate=cert,
        full_rank_target=full_rank,
    )


def apply_map(kraus_set: KrausSet, rho: DensityOperator) -> DensityOperator:
    """Apply the channel to a density operator in the embedding frame."""
    if not kraus_set.certificate.passed:
        raise ValueError("refusing to apply a channel whose certificate failed")
    if not same_setting(kraus_set.setting, rho.setting):
        raise ValueError("channel and state belong to different settings")
    V = embedding(kraus_set.setting)
    C = rho.coefficient_matrix()
    out = np.zeros_like(C)
    for op in kraus_set.operators():
        out += op.matrix @ C @ op.matrix.conj().T
    return DensityOperator(V @ out @ V.conj().T, kraus_set.setting)


def apply_mixed(psi: SuperpositionState, targets, weights) -> DensityOperator:
    """Convex combination of golden-state conversions: channels psi ->
    phi_i applied to |psi><psi| and mixed with the given weights."""
    targets = list(targets)
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (len(targets),):
        raise ValueError("need one weight per target")
    if np.any(weights < -1e-12) or abs(weights.sum() - 1.0) > 1e-10:
        raise ValueError("weights must be a probability vector")
    rho = density_pure(psi)
    total = np.zeros((psi.setting.d, psi.setting.d), dtype=complex)
    for p, phi in zip(weights, targets):
        out = apply_map(build_kraus_set(psi, phi), rho)
        total += p * out.matrix
    return DensityOperator(total, psi.setting)
