"""Null-geodesic ray tracing through static effective metrics.

Rays are integrated in Hamiltonian form with H = (1/2) g^{ab} k_a k_b:

    dx^a / dlam = g^{ab} k_b,      dk_a / dlam = -(1/2) d_a g^{bc} k_b k_c,

using a classical fixed-step fourth-order scheme.  Metric gradients come
from central differences of the field's inverse-metric evaluator, so any
user-supplied static metric works without analytic derivatives.  Because
metrics here are time-independent, dk_0 vanishes identically and the
frequency k_0 is conserved bit for bit.

The catalog provides the classic gradient-index validation media, each
lifted to a metric via diag(1, -n^2, -n^2, -n^2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import NonNullLaunch, NonPositiveIndex
from .geometrize import MetricField, index_profile_field

__all__ = [
    "RayState",
    "RayTrajectory",
    "MediumCatalogEntry",
    "hamiltonian",
    "project_to_null",
    "launch_state",
    "trace_ray",
    "maxwell_fisheye",
    "luneburg_lens",
    "homogeneous_medium",
    "catalog",
    "catalog_entry",
]


@dataclass(frozen=True)
class RayState:
    """Four-position, wave covector and affine parameter of a ray sample."""

    x: np.ndarray
    k: np.ndarray
    lam: float = 0.0

    def __post_init__(self) -> None:
        x = np.asarray(self.x, dtype=float)
        k = np.asarray(self.k, dtype=float)
        if x.shape != (4,) or k.shape != (4,):
            raise ValueError("ray state needs 4-component position and covector")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "k", k)


@dataclass(frozen=True)
class RayTrajectory:
    """Sampled ray: affine parameters, positions, covectors and null drift."""

    lam: np.ndarray          # (n,)
    x: np.ndarray            # (n, 4)
    k: np.ndarray            # (n, 4)
    hamiltonians: np.ndarray  # (n,)
    exited_domain: bool = False

    def __len__(self) -> int:
        return self.lam.shape[0]

    def state(self, i: int) -> RayState:
        return RayState(x=self.x[i], k=self.k[i], lam=float(self.lam[i]))

    @property
    def max_null_drift(self) -> float:
        return float(np.abs(self.hamiltonians).max())


def hamiltonian(g_inv, k) -> float:
    """H = (1/2) g^{ab} k_a k_b; zero on null rays."""
    m = getattr(g_inv, "matrix", g_inv)
    k = np.asarray(k, dtype=float)
    return 0.5 * float(k @ m @ k)


def project_to_null(g_inv, k) -> np.ndarray:
    """Rescale the spatial part of k so that H(k) = 0, keeping k_0 fixed."""
    m = np.asarray(getattr(g_inv, "matrix", g_inv), dtype=float)
    k = np.asarray(k, dtype=float).copy()
    ks = k[1:]
    a = float(ks @ m[1:, 1:] @ ks)
    b = 2.0 * float(k[0] * (m[0, 1:] @ ks))
    c = float(m[0, 0] * k[0] * k[0])
    if a == 0.0:
        raise NonNullLaunch("cannot project a covector with no spatial part")
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        raise NonNullLaunch("no real null projection for this covector")
    root = math.sqrt(disc)
    candidates = [(-b + root) / (2.0 * a), (-b - root) / (2.0 * a)]
    positive = [s for s in candidates if s > 0.0]
    if not positive:
        raise NonNullLaunch("null projection flips the propagation direction")
    s = min(positive, key=lambda v: abs(v - 1.0))
    k[1:] = s * ks
    return k


def launch_state(
    field: MetricField, origin, direction, *, frequency: float = 1.0,
    project: bool = True,
) -> RayState:
    """Launch at spatial ``origin`` moving along ``direction``.

    The covector starts as (frequency, -frequency * unit direction) and, with
    ``project=True``, is rescaled onto the null shell of the local metric.
    """
    origin = np.asarray(origin, dtype=float)
    direction = np.asarray(direction, dtype=float)
    norm = float(np.linalg.norm(direction))
    if norm == 0.0:
        raise ValueError("direction must be nonzero")
    k = np.concatenate(([frequency], -frequency * direction / norm))
    if project:
        k = project_to_null(field.inverse_at(origin), k)
    return RayState(x=np.concatenate(([0.0], origin)), k=k)


def _in_bounds(p: np.ndarray, bounds) -> bool:
    return all(lo <= v <= hi for v, (lo, hi) in zip(p, bounds))


def trace_ray(
    field: MetricField,
    x0,
    k0,
    step: float,
    n_steps: int,
    *,
    grad_delta: float = 1e-6,
    project: bool = False,
    bounds: Sequence[tuple[float, float]] | None = None,
    null_tol: float = 1e-9,
    refine_drift_tol: float = 1e-11,
    max_refine_depth: int = 26,
) -> RayTrajectory:
    """Integrate a null ray for ``n_steps`` fixed steps of size ``step``.

    ``bounds``, when given, is one (lo, hi) pair per spatial axis; a ray
    leaving the box returns the partial trajectory with the exit flag set.
    Launch covectors must satisfy |H| <= null_tol (relative to the quadratic
    scale) unless ``project=True``, which rescales the spatial part first.

    H is conserved exactly by the flow, so a per-step jump in H beyond
    ``refine_drift_tol`` (relative) flags a medium discontinuity inside the
    step (a lens rim, say), where a single fixed step is only first-order
    accurate.  Such a step is deterministically re-integrated by recursive
    bisection, accepting subintervals once a full step and two half steps
    agree; smooth media never trigger this and the affine sample grid is
    unchanged.
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    if n_steps < 1:
        raise ValueError("n_steps must be at least 1")
    x = np.asarray(x0, dtype=float).copy()
    k = np.asarray(k0, dtype=float).copy()
    if x.shape != (4,) or k.shape != (4,):
        raise ValueError("x0 and k0 must have 4 components")

    ginv = field.inverse_at(x[1:])
    if project:
        k = project_to_null(ginv, k)
    h0 = hamiltonian(ginv, k)
    scale = max(0.5 * float(np.abs(ginv).max() * (k @ k)), 1.0)
    if abs(h0) > null_tol * scale:
        raise NonNullLaunch(
            f"launch covector has |H| = {abs(h0)}, above tolerance; "
            "pass project=True to project onto the null shell"
        )

    def rhs(xc: np.ndarray, kc: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        gi = field.inverse_at(xc[1:])
        dx = gi @ kc
        dk = np.zeros(4)
        for i in (1, 2, 3):
            plus = xc[1:].copy()
            minus = xc[1:].copy()
            plus[i - 1] += grad_delta
            minus[i - 1] -= grad_delta
            hp = float(kc @ field.inverse_at(plus) @ kc)
            hm = float(kc @ field.inverse_at(minus) @ kc)
            dk[i] = -(hp - hm) / (4.0 * grad_delta)
        return dx, dk

    def rk4(xc, kc, width):
        dx1, dk1 = rhs(xc, kc)
        dx2, dk2 = rhs(xc + 0.5 * width * dx1, kc + 0.5 * width * dk1)
        dx3, dk3 = rhs(xc + 0.5 * width * dx2, kc + 0.5 * width * dk2)
        dx4, dk4 = rhs(xc + width * dx3, kc + width * dk3)
        xn = xc + (width / 6.0) * (dx1 + 2.0 * dx2 + 2.0 * dx3 + dx4)
        kn = kc + (width / 6.0) * (dk1 + 2.0 * dk2 + 2.0 * dk3 + dk4)
        return xn, kn

    budget = [20000]

    def refine(xc, kc, width, depth):
        xa, ka = rk4(xc, kc, 0.5 * width)
        xb, kb = rk4(xa, ka, 0.5 * width)
        budget[0] -= 3
        if depth < max_refine_depth and budget[0] > 0:
            x_full, k_full = rk4(xc, kc, width)
            mismatch = max(
                float(np.abs(x_full - xb).max()), float(np.abs(k_full - kb).max())
            )
            node_scale = max(1.0, float(np.abs(kc).max()), float(np.abs(xc).max()))
            if mismatch > 1e-12 * node_scale:
                xa, ka = refine(xc, kc, 0.5 * width, depth + 1)
                return refine(xa, ka, 0.5 * width, depth + 1)
        return xb, kb

    lam = np.empty(n_steps + 1)
    xs = np.empty((n_steps + 1, 4))
    ks = np.empty((n_steps + 1, 4))
    hs = np.empty(n_steps + 1)
    lam[0], xs[0], ks[0], hs[0] = 0.0, x, k, h0

    exited = False
    count = 0
    h_now = h0
    for istep in range(n_steps):
        x_new, k_new = rk4(x, k, step)
        h_new = hamiltonian(field.inverse_at(x_new[1:]), k_new)
        if abs(h_new - h_now) > refine_drift_tol * scale:
            budget[0] = 20000
            x_new, k_new = refine(x, k, step, 0)
            h_new = hamiltonian(field.inverse_at(x_new[1:]), k_new)
        x, k, h_now = x_new, k_new, h_new
        count = istep + 1
        lam[count] = count * step
        xs[count] = x
        ks[count] = k
        hs[count] = h_now
        if bounds is not None and not _in_bounds(x[1:], bounds):
            exited = True
            break

    end = count + 1
    return RayTrajectory(
        lam=lam[:end], x=xs[:end], k=ks[:end], hamiltonians=hs[:end],
        exited_domain=exited,
    )


@dataclass(frozen=True)
class MediumCatalogEntry:
    """Named isotropic index profile with its domain of validity."""

    name: str
    index: Callable[[np.ndarray], float]
    domain: str

    def index_at(self, point) -> float:
        return float(self.index(np.asarray(point, dtype=float)))

    def metric_field(self) -> MetricField:
        return index_profile_field(self.index, name=self.name)


def maxwell_fisheye() -> MediumCatalogEntry:
    """n(r) = 2 / (1 + r^2); every ray is a closed circle."""

    def index(p: np.ndarray) -> float:
        return 2.0 / (1.0 + float(p @ p))

    return MediumCatalogEntry(name="maxwell_fisheye", index=index, domain="all space")


def luneburg_lens() -> MediumCatalogEntry:
    """n(r) = sqrt(2 - r^2) inside the unit ball, 1 outside; focuses parallel
    rays onto the opposite rim point."""

    def index(p: np.ndarray) -> float:
        r2 = float(p @ p)
        return math.sqrt(2.0 - r2) if r2 <= 1.0 else 1.0

    return MediumCatalogEntry(
        name="luneburg", index=index, domain="all space (lens inside r <= 1)"
    )


def homogeneous_medium(n: float = 1.0) -> MediumCatalogEntry:
    """Constant index n; rays are straight lines at speed c/n."""
    if not (np.isfinite(n) and n > 0.0):
        raise NonPositiveIndex(f"refractive index must be positive, got {n}")

    def index(p: np.ndarray) -> float:
        return float(n)

    return MediumCatalogEntry(name="homogeneous", index=index, domain="all space")


def catalog() -> list[MediumCatalogEntry]:
    """The built-in validation media."""
    return [maxwell_fisheye(), luneburg_lens(), homogeneous_medium(1.0)]


_ALIASES = {
    "maxwell_fisheye": "maxwell_fisheye",
    "fisheye": "maxwell_fisheye",
    "luneburg": "luneburg",
    "homogeneous": "homogeneous",
}


def catalog_entry(name: str, **params) -> MediumCatalogEntry:
    """Look up a catalog medium by name; ``homogeneous`` accepts ``n``."""
    key = _ALIASES.get(name)
    if key == "maxwell_fisheye":
        return maxwell_fisheye()
    if key == "luneburg":
        return luneburg_lens()
    if key == "homogeneous":
        return homogeneous_medium(float(params.get("n", 1.0)))
    raise KeyError(f"unknown catalog medium {name!r}")
