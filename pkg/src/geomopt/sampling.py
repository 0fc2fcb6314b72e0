"""Seeded random draws shared by the verification suite and the tests."""
from __future__ import annotations

import numpy as np

from .tensors import Metric4, MINKOWSKI

__all__ = [
    "random_lorentzian_metric",
    "random_antisymmetric4",
    "random_symmetric_connection",
    "random_spd3",
]


def random_lorentzian_metric(
    rng: np.random.Generator,
    *,
    scale: float = 0.3,
    min_g00: float = 0.05,
    min_frame_det: float = 0.15,
) -> Metric4:
    """Well-conditioned random metric of signature (+,-,-,-) with g_00 > 0.

    Built as L eta L^T for a frame L near the identity, which fixes the
    signature by congruence; draws are rejected until the frame determinant
    and g_00 clear the floors.
    """
    eta = MINKOWSKI.matrix
    while True:
        frame = np.eye(4) + rng.normal(0.0, scale, size=(4, 4))
        if abs(np.linalg.det(frame)) < min_frame_det:
            continue
        g = frame @ eta @ frame.T
        if g[0, 0] < min_g00:
            continue
        return Metric4(0.5 * (g + g.T))


def random_antisymmetric4(rng: np.random.Generator, *, scale: float = 1.0) -> np.ndarray:
    a = rng.normal(0.0, scale, size=(4, 4))
    return a - a.T


def random_symmetric_connection(
    rng: np.random.Generator, *, scale: float = 1.0
) -> np.ndarray:
    """Random Gamma^d_{ab} symmetric in the lower index pair."""
    gamma = rng.normal(0.0, scale, size=(4, 4, 4))
    return 0.5 * (gamma + gamma.transpose(0, 2, 1))


def random_spd3(rng: np.random.Generator, *, scale: float = 0.5) -> np.ndarray:
    """Random symmetric positive-definite 3x3 matrix."""
    a = rng.normal(0.0, scale, size=(3, 3))
    return a @ a.T + np.eye(3)
