"""Seeded random settings and states for sweeps, verification and demos."""

from __future__ import annotations

import numpy as np

from .gram import GramSetting, build_setting, eigensystem
from .states import SuperpositionState, normalize

__all__ = ["random_setting", "random_state"]


def random_setting(
    d: int,
    rng: np.random.Generator,
    min_eigenvalue: float = 1e-3,
    min_gap: float = 0.0,
) -> GramSetting:
    """A random valid setting, built as G = W^dag W from unit columns.

    ``min_eigenvalue`` keeps the basis comfortably independent; a positive
    ``min_gap`` (relative to lambda_max) additionally forces a
    nondegenerate spectrum.
    """
    while True:
        W = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        W /= np.linalg.norm(W, axis=0, keepdims=True)
        G = W.conj().T @ W
        setting = build_setting(
            d, [(i + 1, j + 1, G[i, j]) for i in range(d) for j in range(i + 1, d)]
        )
        es = eigensystem(setting)
        if es.lambda_min <= min_eigenvalue:
            continue
        if min_gap > 0.0:
            gaps = np.diff(es.eigenvalues)
            if np.min(gaps) <= min_gap * es.lambda_max:
                continue
        return setting


def random_state(
    setting: GramSetting,
    rng: np.random.Generator,
    full_rank: bool = False,
    min_modulus: float = 0.05,
) -> SuperpositionState:
    """A random normalized state; with ``full_rank`` every coefficient is
    bounded away from zero (required of conversion targets)."""
    while True:
        v = rng.standard_normal(setting.d) + 1j * rng.standard_normal(setting.d)
        psi = normalize(v, setting)
        if not full_rank:
            return psi
        mods = np.abs(psi.coeffs)
        if mods.min() >= min_modulus * mods.max():
            return psi
