"""Maps between space-time metrics and effective material tensors.

The forward map turns a Lorentzian metric into an impedance-matched medium:

    eps^{ij} = mu^{ij} = -(sqrt(-g) / sqrt(-gamma)) g^{ij} / g_00,
    w_i = g_{i0} / g_00,

where g^{ij} is the spatial block of the full 4x4 inverse metric and gamma
is the metric of the background coordinate system (Minkowski in Cartesian
mode, so sqrt(-gamma) = 1).  The inverse map lifts an isotropic refractive
index n to the metric diag(1, -n^2, -n^2, -n^2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .constitutive import MaterialTensors
from .errors import NonPositiveIndex, UnitIndexSingularity, ZeroG00
from .tensors import (
    FieldTensor,
    Metric4,
    MINKOWSKI,
    TensorKind,
    Variance,
    metric_inverse,
    sqrt_minus_det,
)

__all__ = [
    "GeometrizationResult",
    "MetricField",
    "plebanski_cartesian",
    "plebanski_curvilinear",
    "geometrized_constitutive",
    "fourdim_constitutive",
    "isotropic_metric_from_index",
    "index_profile_field",
    "leonhardt_velocity",
    "metric_identity_residual",
    "coordinate_field",
]


@dataclass(frozen=True)
class GeometrizationResult:
    """Material tensors plus the geometric scalars they came from.

    ``negative_g00`` flags metrics with g_00 < 0, where the returned eps may
    lose positive definiteness.
    """

    material: MaterialTensors
    sqrt_minus_g: float
    sqrt_minus_gamma: float
    g00: float
    negative_g00: bool


def _check_g00(g: Metric4) -> float:
    g00 = float(g.matrix[0, 0])
    scale = max(float(np.abs(g.matrix).max()), np.finfo(float).tiny)
    if abs(g00) < 1e-12 * scale:
        raise ZeroG00("geometrization needs g_00 != 0")
    return g00


def _plebanski(g: Metric4, sqrt_minus_gamma: float) -> GeometrizationResult:
    s = sqrt_minus_det(g)
    g00 = _check_g00(g)
    ginv = metric_inverse(g).matrix
    eps = (-s / (sqrt_minus_gamma * g00)) * ginv[1:, 1:] + 0.0  # -0.0 -> +0.0
    w = g.matrix[1:, 0] / g00 + 0.0
    material = MaterialTensors(eps=eps, mu=eps, w=w)
    return GeometrizationResult(
        material=material,
        sqrt_minus_g=s,
        sqrt_minus_gamma=sqrt_minus_gamma,
        g00=g00,
        negative_g00=g00 < 0.0,
    )


def plebanski_cartesian(g: Metric4) -> GeometrizationResult:
    """Material tensors of the effective medium for metric g, Cartesian frame."""
    return _plebanski(g, 1.0)


def plebanski_curvilinear(g: Metric4, gamma: Metric4) -> GeometrizationResult:
    """Material tensors for metric g seen from the coordinate metric gamma.

    With gamma = Minkowski this reproduces :func:`plebanski_cartesian`
    bit for bit.
    """
    return _plebanski(g, sqrt_minus_det(gamma))


def geometrized_constitutive(
    res: GeometrizationResult | MaterialTensors, e, h
) -> tuple[np.ndarray, np.ndarray]:
    """D^i = eps^{ij} E_j + (w x H)^i and B^i = mu^{ij} H_j - (w x E)^i."""
    material = res.material if isinstance(res, GeometrizationResult) else res
    e = np.asarray(e, dtype=float)
    h = np.asarray(h, dtype=float)
    d = material.eps @ e + np.cross(material.w, h)
    b = material.mu @ h - np.cross(material.w, e)
    return d, b


def fourdim_constitutive(g: Metric4, gamma: Metric4, f: FieldTensor) -> FieldTensor:
    """G^{ab} = (sqrt(-g)/sqrt(-gamma)) g^{ac} g^{bd} F_{cd}."""
    if f.variance is not Variance.COVARIANT or f.kind is not TensorKind.F:
        raise ValueError("fourdim_constitutive needs a covariant field-strength tensor")
    factor = sqrt_minus_det(g) / sqrt_minus_det(gamma)
    ginv = metric_inverse(g).matrix
    out = factor * (ginv @ f.matrix @ ginv.T)
    out = 0.5 * (out - out.T)
    return FieldTensor(out, Variance.CONTRAVARIANT, TensorKind.G)


def isotropic_metric_from_index(n: float) -> Metric4:
    """Metric diag(1, -n^2, -n^2, -n^2) whose effective medium is eps = mu = n I."""
    if not (np.isfinite(n) and n > 0.0):
        raise NonPositiveIndex(f"refractive index must be positive, got {n}")
    n2 = float(n) * float(n)
    return Metric4(np.diag([1.0, -n2, -n2, -n2]))


@dataclass(frozen=True)
class MetricField:
    """Static metric over space: a position (x, y, z) -> Metric4 evaluator.

    ``inverse_evaluate`` is an optional fast path returning the 4x4 inverse
    matrix directly; when absent the inverse is computed numerically.
    Evaluators must be reentrant, so fields can be sampled in parallel.
    """

    evaluate: Callable[[np.ndarray], Metric4]
    name: str | None = None
    inverse_evaluate: Callable[[np.ndarray], np.ndarray] | None = None

    def metric_at(self, point) -> Metric4:
        return self.evaluate(np.asarray(point, dtype=float))

    def inverse_at(self, point) -> np.ndarray:
        p = np.asarray(point, dtype=float)
        if self.inverse_evaluate is not None:
            return self.inverse_evaluate(p)
        return metric_inverse(self.evaluate(p)).matrix

    @classmethod
    def constant(cls, g: Metric4, name: str | None = None) -> "MetricField":
        ginv = metric_inverse(g).matrix
        return cls(
            evaluate=lambda p, _g=g: _g,
            name=name,
            inverse_evaluate=lambda p, _m=ginv: _m,
        )


def index_profile_field(
    profile: Callable[[np.ndarray], float], name: str | None = None
) -> MetricField:
    """Pointwise lift of an isotropic index profile n(x, y, z) to a MetricField."""

    def evaluate(p: np.ndarray) -> Metric4:
        return isotropic_metric_from_index(profile(p))

    def inverse_evaluate(p: np.ndarray) -> np.ndarray:
        n = profile(p)
        if not (np.isfinite(n) and n > 0.0):
            raise NonPositiveIndex(f"refractive index must be positive, got {n}")
        s = -1.0 / (n * n)
        out = np.zeros((4, 4))
        out[0, 0] = 1.0
        out[1, 1] = out[2, 2] = out[3, 3] = s
        return out

    return MetricField(evaluate=evaluate, name=name, inverse_evaluate=inverse_evaluate)


def leonhardt_velocity(
    g: Metric4, n: float, *, c: float = 1.0, tol: float = 1e-9
) -> np.ndarray:
    """Moving-frame reading of the coupling term:

        u_i = (g_{i0} / g_00) * c * sqrt(|det g_{ij}|) / (n^2 - 1).

    The spatial determinant is taken in absolute value (it is negative in
    this signature).  Raises UnitIndexSingularity when n^2 is within ``tol``
    of 1.
    """
    if not (np.isfinite(n) and n > 0.0):
        raise NonPositiveIndex(f"refractive index must be positive, got {n}")
    denom = n * n - 1.0
    if abs(denom) <= tol:
        raise UnitIndexSingularity(f"n = {n} is too close to 1")
    g00 = _check_g00(g)
    spatial_det = float(np.linalg.det(g.spatial))
    return (g.matrix[1:, 0] / g00) * (c * math.sqrt(abs(spatial_det)) / denom)


def metric_identity_residual(g: Metric4) -> float:
    """Max-abs residual of (g_{ik} - g_{0i} g_{0k} / g_00) g^{kj} = delta_i^j."""
    g00 = _check_g00(g)
    ginv = metric_inverse(g).matrix
    g0 = g.matrix[1:, 0]
    reduced = g.spatial - np.outer(g0, g0) / g00
    return float(np.abs(reduced @ ginv[1:, 1:] - np.eye(3)).max())


def _spherical_metric(p: np.ndarray) -> Metric4:
    r, theta = p[0], p[1]
    return Metric4(np.diag([1.0, -1.0, -(r * r), -((r * math.sin(theta)) ** 2)]))


def _cylindrical_metric(p: np.ndarray) -> Metric4:
    rho = p[0]
    return Metric4(np.diag([1.0, -1.0, -(rho * rho), -1.0]))


def coordinate_field(system: str) -> MetricField:
    """Coordinate metric gamma for a named system.

    ``cartesian`` is flat Minkowski; ``spherical`` interprets positions as
    (r, theta, phi); ``cylindrical`` as (rho, phi, z).
    """
    if system == "cartesian":
        return MetricField.constant(MINKOWSKI, name="cartesian")
    if system == "spherical":
        return MetricField(evaluate=_spherical_metric, name="spherical")
    if system == "cylindrical":
        return MetricField(evaluate=_cylindrical_metric, name="cylindrical")
    raise ValueError(f"unknown coordinate system {system!r}")
