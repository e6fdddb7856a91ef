import math

import numpy as np
import pytest

from su3geom.euler import EulerAngles, PHI_PERIOD, compose_many
from su3geom.haar import (AngleRanges, RANGES_COVER, RANGES_QUAD, RANGES_STATED,
                          character, character_many, density,
                          density_from_coframe, group_volume, integrate_mc,
                          integrate_quadrature, sample, sample_angles,
                          volume_report)

from conftest import qr_haar_su3

PI = math.pi


def test_density_examples():
    x = EulerAngles(0, PI / 4, 0, PI / 4, 0, PI / 4, 0, 0)
    assert density(x) == pytest.approx(0.5, abs=1e-15)
    assert density(EulerAngles(0.3, 0.5, 0.1, 0.0, 0.2, 0.4, 0.9, 1.0)) == 0.0
    assert density(EulerAngles(0.3, 0.0, 0.1, 0.7, 0.2, 0.4, 0.9, 1.0)) == 0.0


def test_density_batch():
    xs = sample_angles(64, 77)
    d = density(xs)
    assert d.shape == (64,)
    assert np.all(d >= 0.0)


# ---------------------------------------------------------------------------
# sampler
# ---------------------------------------------------------------------------


def test_sampler_deterministic():
    a = sample_angles(500, 42)
    b = sample_angles(500, 42)
    assert np.array_equal(a, b)
    c = sample_angles(500, 43)
    assert not np.array_equal(a, c)


def test_sampler_workers_deterministic():
    a = sample_angles(501, 42, workers=3)
    b = sample_angles(501, 42, workers=3)
    assert np.array_equal(a, b)


def test_sampler_ranges():
    xs = sample_angles(20_000, 3)
    lo = np.array([r[0] for r in RANGES_COVER.as_tuples()])
    hi = np.array([r[1] for r in RANGES_COVER.as_tuples()])
    assert np.all(xs >= lo) and np.all(xs < hi)


def test_sampler_theta_moment():
    # E[sin^2 theta] under density 4 sin^3 cos is 2/3; cross-check the
    # constant by one-dimensional quadrature before using it
    t, w = np.polynomial.legendre.leggauss(64)
    th = PI / 4 * t + PI / 4
    wt = w * PI / 4
    pdf = np.sin(2 * th) * np.sin(th) ** 2
    target = float(np.sum(wt * np.sin(th) ** 2 * pdf) / np.sum(wt * pdf))
    assert target == pytest.approx(2.0 / 3.0, abs=1e-12)

    xs = sample_angles(400_000, 11)
    vals = np.sin(xs[:, 3]) ** 2
    se = vals.std() / math.sqrt(len(vals))
    assert abs(vals.mean() - target) <= 4 * se


def test_sampler_beta_cdf():
    n = 400_000
    xs = sample_angles(n, 12)
    target = math.sin(0.5) ** 2
    se = math.sqrt(target * (1 - target) / n)
    assert abs(np.mean(xs[:, 1] <= 0.5) - target) <= 4 * se


def test_sampler_matches_qr_reference():
    n = 300_000
    us = compose_many(sample_angles(n, 5))
    ur = qr_haar_su3(n, 6)
    for f in (lambda u: np.einsum("nii->n", u),
              lambda u: np.abs(np.einsum("nii->n", u)) ** 2,
              lambda u: np.abs(u[:, 0, 0]) ** 2):
        a, b = f(us), f(ur)
        se = math.hypot(np.abs(a).std(), np.abs(b).std()) / math.sqrt(n)
        assert abs(a.mean() - b.mean()) <= 5 * se


def test_sample_objects():
    samples = sample(5, 123)
    assert len(samples) == 5
    for s in samples:
        U = s.element
        assert np.linalg.norm(U.conj().T @ U - np.eye(3)) <= 1e-12
        assert s.weight == pytest.approx(float(density(s.angles)))


def test_sample_rejects_zero():
    with pytest.raises(ValueError):
        sample_angles(0, 1)


# ---------------------------------------------------------------------------
# Monte Carlo integration
# ---------------------------------------------------------------------------


def test_mc_constant():
    r = integrate_mc(lambda u: 1.0 + 0.0j, 1000, 4)
    assert r.estimate == pytest.approx(1.0)
    assert r.std_error == pytest.approx(0.0, abs=1e-12)
    assert r.method == "mc" and r.n == 1000


def test_mc_fundamental_character():
    r = integrate_mc(lambda us: np.einsum("nii->n", us), 200_000, 9,
                     vectorized=True)
    assert abs(r.estimate) <= 4 * r.std_error + 1e-12
    assert 0.5e-3 < r.std_error < 5e-3


def test_mc_fundamental_squared():
    r = integrate_mc(
        lambda us: (np.abs(np.einsum("nii->n", us)) ** 2).astype(complex),
        200_000, 10, vectorized=True)
    assert abs(r.estimate - 1.0) <= 4 * r.std_error


def test_mc_entry_moment():
    r = integrate_mc(lambda us: (np.abs(us[:, 0, 0]) ** 2).astype(complex),
                     200_000, 14, vectorized=True)
    assert abs(r.estimate - 1.0 / 3.0) <= 4 * r.std_error


def test_mc_error_reports_sample_index():
    def bad(u):
        raise RuntimeError("boom")

    with pytest.raises(RuntimeError, match="sample 0"):
        integrate_mc(bad, 10, 3)


def test_mc_workers_deterministic():
    f = lambda us: np.einsum("nii->n", us)
    a = integrate_mc(f, 5000, 3, workers=4, vectorized=True)
    b = integrate_mc(f, 5000, 3, workers=4, vectorized=True)
    assert a.estimate == b.estimate


def test_mc_needs_two_samples():
    with pytest.raises(ValueError):
        integrate_mc(lambda u: 1.0, 1, 0)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------


def test_quadrature_constant_is_exact():
    r = integrate_quadrature(lambda x: 1.0 + 0.0j, 3)
    assert r.estimate == pytest.approx(1.0, abs=1e-14)
    assert r.std_error is None and r.method == "quadrature"


def test_quadrature_characters_five_nodes():
    def f2(xs):
        return (np.abs(np.einsum("nii->n", compose_many(xs))) ** 2).astype(complex)

    r = integrate_quadrature(f2, 5, vectorized=True)
    assert abs(r.estimate - 1.0) <= 1e-3

    def f1(xs):
        return np.einsum("nii->n", compose_many(xs))

    r = integrate_quadrature(f1, 4, vectorized=True)
    assert abs(r.estimate) <= 1e-6


def test_quadrature_node_cap():
    with pytest.raises(ValueError, match="cap"):
        integrate_quadrature(lambda x: 1.0, 7)


def test_quadrature_warns_above_eight():
    with pytest.warns(RuntimeWarning):
        with pytest.raises(ValueError):
            integrate_quadrature(lambda x: 1.0, 9)


def test_quadrature_minimum_nodes():
    with pytest.raises(ValueError):
        integrate_quadrature(lambda x: 1.0, 1)


def test_quadrature_over_stated_ranges_is_biased():
    # the stated box does not tile the group: the fundamental-character
    # average over it is far from the Haar value 0
    def f1(xs):
        return np.einsum("nii->n", compose_many(xs))

    r = integrate_quadrature(f1, 6, ranges=RANGES_STATED, vectorized=True)
    assert abs(r.estimate) > 0.05


# ---------------------------------------------------------------------------
# volume
# ---------------------------------------------------------------------------


def test_volume_stated_is_pi5():
    assert group_volume() == pytest.approx(PI ** 5, rel=1e-12)


def test_volume_phi_linear():
    doubled = AngleRanges(phi=(0.0, 4 * PI))
    assert group_volume(doubled) == pytest.approx(2 * PI ** 5, rel=1e-12)


def test_volume_theta_factor():
    ranges = AngleRanges(alpha=(0, 1), gamma=(0, 1), a=(0, 1), c=(0, 1),
                         phi=(0, 1))
    # flat lengths 1, beta and b factors integrate to 1, theta to 1/2
    assert group_volume(ranges) == pytest.approx(0.5, rel=1e-12)


def test_volume_cover():
    assert group_volume(RANGES_COVER) == pytest.approx(
        2 * math.sqrt(3.0) * PI ** 5, rel=1e-12)
    assert group_volume(RANGES_QUAD) == pytest.approx(
        16 * math.sqrt(3.0) * PI ** 5, rel=1e-12)


def test_volume_report_fields():
    rep = volume_report()
    assert rep["analytic"] == pytest.approx(PI ** 5, rel=1e-12)
    assert rep["ratio"] == pytest.approx(1.0, abs=1e-10)
    assert rep["sphere_product_target"] == pytest.approx(2 * PI ** 5)
    assert rep["analytic_over_target"] == pytest.approx(0.5, rel=1e-12)
    assert "note" in rep


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------


def test_character_values():
    I3 = np.eye(3, dtype=complex)
    assert character(I3, "fundamental") == 3.0
    assert character(I3, "adjoint") == 8.0
    assert character(I3, "antifundamental") == 3.0


def test_character_adjoint_real():
    us = compose_many(sample_angles(20, 33))
    vals = character_many(us, "adjoint")
    assert np.max(np.abs(vals.imag)) == 0.0
    for u in us[:5]:
        assert character(u, "adjoint").imag == 0.0


def test_character_unknown_rep():
    with pytest.raises(ValueError, match="representation"):
        character(np.eye(3), "sextet")


def test_density_from_coframe_agrees(interior_points):
    for x in interior_points[:5]:
        assert density_from_coframe(x) == pytest.approx(float(density(x)) / 2,
                                                        rel=1e-10)
