"""Acceptance suite: one test per release criterion, each printing a verdict
line (run with ``pytest -s tests/test_acceptance.py`` to see them live).

Expected values come from independent routes wherever a criterion checks a
computation: linear solves for inverses, explicit component formulas for the
reconstructions, least-squares geometry fits for rays.
"""
import json
import math
from contextlib import contextmanager

import numpy as np

from geomopt import (
    MINKOWSKI,
    IsotropicMedium,
    MediumVelocity,
    Metric4,
    bianchi_residual_grid,
    build_F_lower,
    cyclic_covariant_sum,
    cyclic_partial_sum,
    divergence_residual,
    dual_F,
    extract_DH,
    fourdim_constitutive,
    isotropic_metric_from_index,
    launch_state,
    levi_civita3,
    lower_field_tensor,
    luneburg_lens,
    maxwell_fisheye,
    homogeneous_medium,
    metric_identity_residual,
    minkowski_moving_3d,
    plebanski_cartesian,
    plebanski_curvilinear,
    tamm_moving_anisotropic_3d,
    trace_ray,
)
from geomopt.cli import main
from geomopt.sampling import (
    random_antisymmetric4,
    random_lorentzian_metric,
    random_symmetric_connection,
)
from geomopt.verify import FieldGrid, sine_wave_potential, transverse_wave_inductions

SEED = 193707


@contextmanager
def criterion(num: int, name: str):
    try:
        yield
    except BaseException:
        print(f"criterion {num:02d} ({name}): FAIL")
        raise
    print(f"criterion {num:02d} ({name}): PASS")


def test_c01_vacuum_identity():
    with criterion(1, "vacuum identity"):
        res = plebanski_cartesian(MINKOWSKI)
        eps, mu, w = res.material.eps, res.material.mu, res.material.w
        off = ~np.eye(3, dtype=bool)
        assert np.all(eps[off] == 0.0)
        assert np.all(mu[off] == 0.0)
        assert np.all(w == 0.0)
        assert np.abs(np.diag(eps) - 1.0).max() <= 1e-15
        assert np.abs(np.diag(mu) - 1.0).max() <= 1e-15


def test_c02_impedance_matching():
    with criterion(2, "impedance matching"):
        rng = np.random.default_rng(SEED)
        for _ in range(1000):
            g = random_lorentzian_metric(rng)
            assert g.matrix[0, 0] > 0.0
            material = plebanski_cartesian(g).material
            scale = max(float(np.abs(material.eps).max()), 1.0)
            assert np.abs(material.eps - material.mu).max() == 0.0
            assert np.abs(material.eps - material.eps.T).max() <= 1e-12 * scale


def reconstruct_e(g: Metric4, d, h):
    """Intensity from inductions, written out with explicit loops."""
    m = g.matrix
    s = math.sqrt(-np.linalg.det(m))
    sym = levi_civita3()
    out = np.zeros(3)
    for i in range(3):
        acc = 0.0
        for j in range(3):
            acc += (m[0, j + 1] * m[i + 1, 0] - m[0, 0] * m[i + 1, j + 1]) * d[j]
            for k in range(3):
                for l in range(3):
                    acc -= m[0, j + 1] * m[i + 1, k + 1] * sym[j, k, l] * h[l]
        out[i] = acc / s
    return out


def reconstruct_h(g: Metric4, e, b):
    """Intensity from the dual route, written out with explicit loops."""
    m = g.matrix
    s = math.sqrt(-np.linalg.det(m))
    sym = levi_civita3()
    out = np.zeros(3)
    for i in range(3):
        acc = 0.0
        for j in range(3):
            acc += (m[0, j + 1] * m[i + 1, 0] - m[0, 0] * m[i + 1, j + 1]) * b[j]
            for k in range(3):
                for l in range(3):
                    acc += m[0, j + 1] * m[i + 1, k + 1] * sym[j, k, l] * e[l]
        out[i] = acc / s
    return out


def test_c03_fourdim_oracle_equivalence():
    with criterion(3, "4d/3d oracle equivalence"):
        rng = np.random.default_rng(SEED + 3)
        for _ in range(1000):
            g = random_lorentzian_metric(rng)
            e = rng.normal(size=3)
            b = rng.normal(size=3)
            d, h = extract_DH(fourdim_constitutive(g, MINKOWSKI, build_F_lower(e, b)))
            scale = max(1.0, np.abs(e).max(), np.abs(h).max())
            assert np.abs(reconstruct_e(g, d, h) - e).max() <= 1e-10 * scale
            assert np.abs(reconstruct_h(g, e, b) - h).max() <= 1e-10 * scale


def test_c04_christoffel_cancellation():
    with criterion(4, "christoffel cancellation"):
        rng = np.random.default_rng(SEED + 4)
        for _ in range(1000):
            df = rng.normal(size=(4, 4, 4))
            df = 0.5 * (df - df.transpose(0, 2, 1))
            f = random_antisymmetric4(rng)
            gamma = random_symmetric_connection(rng)
            lhs = cyclic_covariant_sum(df, f, gamma)
            rhs = cyclic_partial_sum(df)
            scale = max(np.abs(gamma).max() * np.abs(f).max(), np.abs(df).max(), 1.0)
            assert np.abs(lhs - rhs).max() <= 1e-12 * scale
        # negative control: breaking the lower-index symmetry breaks the
        # cancellation
        df = rng.normal(size=(4, 4, 4))
        df = 0.5 * (df - df.transpose(0, 2, 1))
        f = random_antisymmetric4(rng)
        asymmetric = rng.normal(size=(4, 4, 4))
        lhs = cyclic_covariant_sum(df, f, asymmetric, validate=False)
        assert np.abs(lhs - cyclic_partial_sum(df)).max() > 1e-6


def test_c05_metric_identity():
    with criterion(5, "reduced spatial metric identity"):
        rng = np.random.default_rng(SEED + 5)
        for _ in range(1000):
            assert metric_identity_residual(random_lorentzian_metric(rng)) < 1e-10


def test_c06_double_dual():
    with criterion(6, "double dual is -F"):
        rng = np.random.default_rng(SEED + 6)
        for _ in range(1000):
            g = random_lorentzian_metric(rng)
            f = build_F_lower(rng.normal(size=3), rng.normal(size=3))
            once = lower_field_tensor(dual_F(f, g), g)
            twice = lower_field_tensor(dual_F(once, g), g)
            scale = max(float(np.abs(f.matrix).max()), 1.0)
            assert np.abs(twice.matrix + f.matrix).max() <= 1e-10 * scale


def test_c07_inverse_round_trip():
    with criterion(7, "index lift round trip"):
        for n in (0.5, 1.0, 2.0, 4.0):
            eps = plebanski_cartesian(isotropic_metric_from_index(n)).material.eps
            assert np.abs(eps - n * np.eye(3)).max() <= 1e-12


def test_c08_moving_media_reductions():
    with criterion(8, "moving media reductions"):
        rng = np.random.default_rng(SEED + 8)
        # u = 0 reduces exactly
        for _ in range(50):
            eps = float(rng.uniform(0.3, 4.0))
            mu = float(rng.uniform(0.3, 4.0))
            e, h = rng.normal(size=3), rng.normal(size=3)
            d, b = minkowski_moving_3d(
                IsotropicMedium(eps, mu), MediumVelocity(np.zeros(3)), e, h
            )
            assert np.array_equal(d, eps * e)
            assert np.array_equal(b, mu * h)
        # eps * mu = 1 kills the coupling for any velocity (dyadic pairs make
        # the product exactly one in floating point)
        for eps in (0.25, 0.5, 2.0, 4.0, 8.0):
            medium = IsotropicMedium(eps, 1.0 / eps)
            for _ in range(10):
                v = MediumVelocity(rng.uniform(-0.6, 0.6, size=3))
                e, h = rng.normal(size=3), rng.normal(size=3)
                d, b = minkowski_moving_3d(medium, v, e, h)
                assert np.array_equal(d, eps * e)
                assert np.array_equal(b, h / eps)
        # the coupled anisotropic solve agrees with the isotropic closed form;
        # the closed form drops O((u/c)^2) terms, so the draws keep |u| small
        # enough that only the first-order content is compared at 1e-10
        for _ in range(100):
            eps = float(rng.uniform(0.5, 3.0))
            mu = float(rng.uniform(0.5, 3.0))
            u = np.zeros(3)
            u[int(rng.integers(0, 3))] = rng.uniform(1e-7, 3e-7) * rng.choice([-1, 1])
            v = MediumVelocity(u)
            e, h = rng.normal(size=3), rng.normal(size=3)
            d_ref, b_ref = minkowski_moving_3d(IsotropicMedium(eps, mu), v, e, h)
            d, b = tamm_moving_anisotropic_3d(eps * np.eye(3), mu * np.eye(3), v, e, h)
            scale = max(1.0, np.abs(d_ref).max(), np.abs(b_ref).max())
            assert np.abs(d - d_ref).max() <= 1e-10 * scale
            assert np.abs(b - b_ref).max() <= 1e-10 * scale


def test_c09_grid_convergence_order():
    with criterion(9, "grid residual convergence order"):
        h = 0.02
        n = round(0.8 / h)
        coarse = bianchi_residual_grid(
            sine_wave_potential, np.zeros(4), (2 * n + 1, 3, 3, n + 1), (h / 2, h, h, h)
        )
        fine = bianchi_residual_grid(
            sine_wave_potential,
            np.zeros(4),
            (4 * n + 1, 3, 3, 2 * n + 1),
            (h / 4, h / 2, h / 2, h / 2),
        )
        bianchi_order = math.log2(coarse / fine)
        assert bianchi_order >= 1.9

        def wave_residual(h_t, h_x, nt, nx):
            grid = FieldGrid.from_function(
                transverse_wave_inductions, np.zeros(4), (nt, nx, 3, 3),
                (h_t, h_x, h_x, h_x),
            )
            return divergence_residual(grid)

        coarse = wave_residual(h / 2, h, 2 * n + 1, n + 1)
        fine = wave_residual(h / 4, h / 2, 4 * n + 1, 2 * n + 1)
        divergence_order = math.log2(coarse / fine)
        assert divergence_order >= 1.9


def test_c10_ray_validation():
    with criterion(10, "ray validation"):
        step = 1e-3
        # Luneburg fan: 11 parallel rays focus on the rim point (1, 0)
        lens = luneburg_lens().metric_field()
        box = ((-2.2, 1.4), (-1.6, 1.6), (-1.0, 1.0))  # trimmed past the focus
        worst_miss = 0.0
        worst_drift = 0.0
        for y in np.linspace(-0.8, 0.8, 11):
            state = launch_state(lens, [-2.0, y, 0.0], [1.0, 0.0, 0.0])
            tr = trace_ray(lens, state.x, state.k, step, 4500, bounds=box)
            miss = float(np.hypot(tr.x[:, 1] - 1.0, tr.x[:, 2]).min())
            worst_miss = max(worst_miss, miss)
            worst_drift = max(worst_drift, tr.max_null_drift)
        assert worst_miss < 1e-2

        # fish-eye closure after one period
        fisheye = maxwell_fisheye().metric_field()
        state = launch_state(fisheye, [0.5, 0.0, 0.0], [0.0, 1.0, 0.0])
        tr = trace_ray(fisheye, state.x, state.k, step, 7000)
        worst_drift = max(worst_drift, tr.max_null_drift)
        dist = np.hypot(tr.x[:, 1] - 0.5, tr.x[:, 2])
        far = int(np.argmax(dist))
        assert dist[far] > 1.0
        assert dist[far:].min() < 1e-2

        # straight-line propagation in homogeneous media, exact per unit length
        flat = homogeneous_medium(1.0).metric_field()
        state = launch_state(flat, [0.0, 0.0, 0.0], [1.0, 0.0, 0.0])
        tr = trace_ray(flat, state.x, state.k, step, 5000)
        worst_drift = max(worst_drift, tr.max_null_drift)
        length = float(tr.x[-1, 1])
        assert np.abs(tr.x[:, 1] - tr.lam).max() < 1e-10 * max(length, 1.0)
        assert float(np.abs(tr.x[:, 2:]).max()) == 0.0

        # null drift throughout every trace above
        assert worst_drift < 1e-6


def test_c11_curvilinear_vacuum():
    with criterion(11, "curvilinear vacuum identity"):
        rng = np.random.default_rng(SEED + 11)
        for _ in range(100):
            r = rng.uniform(0.5, 3.0)
            theta = rng.uniform(0.3, math.pi - 0.3)
            gamma = Metric4(
                np.diag([1.0, -1.0, -(r**2), -((r * math.sin(theta)) ** 2)])
            )
            res = plebanski_curvilinear(gamma, gamma)
            e, h = rng.normal(size=3), rng.normal(size=3)
            from geomopt import geometrized_constitutive, metric_inverse

            d, b = geometrized_constitutive(res, e, h)
            raising = -metric_inverse(gamma).matrix[1:, 1:]
            assert np.abs(d - raising @ e).max() <= 1e-12
            assert np.abs(b - raising @ h).max() <= 1e-12
        # flat background: bit-identical to the Cartesian map
        for _ in range(100):
            g = random_lorentzian_metric(rng)
            cart = plebanski_cartesian(g)
            curv = plebanski_curvilinear(g, MINKOWSKI)
            assert np.array_equal(cart.material.eps, curv.material.eps)
            assert np.array_equal(cart.material.w, curv.material.w)


def test_c12_cli_determinism(tmp_path, capsys):
    with criterion(12, "cli determinism"):
        config = {
            "mode": "geometrize",
            "metric": {"index": {"name": "maxwell_fisheye"}},
            "grid": {
                "origin": [-1.0, -1.0, 0.0],
                "extents": [2.0, 2.0, 0.0],
                "resolution": [6, 6, 1],
            },
            "seed": 6174,
        }
        path_a = tmp_path / "a.json"
        path_b = tmp_path / "b.json"
        path_a.write_text(json.dumps({**config, "out_dir": str(tmp_path / "a")}))
        path_b.write_text(json.dumps({**config, "out_dir": str(tmp_path / "b")}))
        assert main(["--config", str(path_a)]) == 0
        assert main(["--config", str(path_b)]) == 0
        bytes_a = (tmp_path / "a" / "materials.csv").read_bytes()
        bytes_b = (tmp_path / "b" / "materials.csv").read_bytes()
        assert bytes_a == bytes_b
        assert (tmp_path / "a" / "summary.json").read_bytes() == (
            tmp_path / "b" / "summary.json"
        ).read_bytes()

        assert main(["verify"]) == 0
        capsys.readouterr()
