import math
import random

import numpy as np
import pytest

from su2n import (
    AlgebraElement,
    GroupElement,
    InsufficientRange,
    MuShape,
    SampleCloud,
    SymbolicShape,
    exp_closed,
    fit_exponents,
    mu,
    rho_norm,
    rho_norm_oracle,
    sample_compact_pair,
    shape_check,
    sup_norm,
)
from su2n.metrics import NonFinite, basis_change, fit_log_power
from su2n.elements import gram_matrix


def test_sup_norm():
    assert sup_norm(GroupElement.identity(3, "float")) == 1.0
    a = GroupElement.diagonal(3, 4.0, 2.0, mode="float")
    assert sup_norm(a) == 4.0
    g = exp_closed(AlgebraElement(3, xx=7, mode="float"))
    assert sup_norm(g) == pytest.approx(7.0)


def test_rho_norm_chamber_and_oracle():
    a = GroupElement.diagonal(4, 4.0, 2.0, mode="float")
    assert rho_norm(a) == 8.0
    assert rho_norm(GroupElement.identity(4, "float")) == 1.0
    rng = np.random.default_rng(1)
    for _ in range(25):
        n = int(rng.integers(3, 6))
        u = AlgebraElement(n, mode="float",
                           phi=complex(rng.normal(), rng.normal()),
                           x=[complex(rng.normal()) for _ in range(n - 2)],
                           y=[complex(0, rng.normal()) for _ in range(n - 2)],
                           eta=complex(rng.normal(), rng.normal()),
                           xx=float(rng.normal()), yy=float(rng.normal()))
        g = exp_closed(u)
        assert rho_norm(g) == pytest.approx(rho_norm_oracle(g), rel=1e-9)


def test_basis_change_diagonalizes_form():
    for n in (3, 5):
        S = basis_change(n)
        J = np.asarray(gram_matrix(n, "float"), dtype=complex)
        D = S.T @ J @ S
        want = np.ones(n + 2)
        want[-2:] = -1
        assert np.allclose(D, np.diag(want), atol=1e-12)


def test_mu_fixes_chamber_points():
    a = GroupElement.diagonal(3, 4.0, 2.0, mode="float")
    pt = mu(a)
    assert pt.as_tuple() == pytest.approx((4.0, 2.0))
    assert mu(GroupElement.identity(3, "float")).as_tuple() == pytest.approx((1.0, 1.0))


def test_mu_bi_invariance_and_inversion():
    rng = np.random.default_rng(2)
    a = GroupElement.diagonal(4, 50.0, 7.0, mode="float")
    for _ in range(10):
        k1 = sample_compact_pair(4, rng)
        k2 = sample_compact_pair(4, rng)
        g = k1 @ a @ k2
        assert mu(g).as_tuple() == pytest.approx((50.0, 7.0), rel=1e-8)
        assert mu(g.inverse()).as_tuple() == pytest.approx((50.0, 7.0), rel=1e-8)


def test_mu_rejects_non_finite():
    bad = np.full((5, 5), np.nan)
    with pytest.raises(NonFinite):
        mu(bad)


def test_compact_samples_preserve_form():
    rng = np.random.default_rng(3)
    J = np.asarray(gram_matrix(4, "float"), dtype=complex)
    for _ in range(5):
        k = sample_compact_pair(4, rng)
        assert np.allclose(k.mat.conj().T @ J @ k.mat, J, atol=1e-10)


def _chamber_ray_cloud(slope_a2, npts=200):
    pts = []
    for lam in np.linspace(0.1, 8, npts):
        a1 = 10.0 ** lam
        a2 = a1 ** slope_a2
        a = GroupElement.diagonal(3, a1, a2, mode="float")
        pts.append((sup_norm(a), rho_norm(a), "ray"))
    return SampleCloud.collect(pts)


def test_fit_exponents_on_chamber_rays():
    s_lo, s_hi, conf = fit_exponents(_chamber_ray_cloud(0.0))
    assert abs(s_lo - 1) < 0.05 and abs(s_hi - 1) < 0.05
    s_lo, s_hi, conf = fit_exponents(_chamber_ray_cloud(1.0))
    assert abs(s_lo - 2) < 0.05 and abs(s_hi - 2) < 0.05


def test_fit_exponents_band():
    rng = np.random.default_rng(4)
    pts = []
    for _ in range(800):
        lam = rng.uniform(0.2, 8)
        a1 = 10.0 ** lam
        a2 = a1 ** rng.uniform(0, 1)
        a = GroupElement.diagonal(3, a1, a2, mode="float")
        pts.append((sup_norm(a), rho_norm(a), "grid"))
    cloud = SampleCloud.collect(pts)
    s_lo, s_hi, _ = fit_exponents(cloud)
    assert abs(s_lo - 1) < 0.08 and abs(s_hi - 2) < 0.08
    rep = shape_check(cloud, MuShape.full_chamber())
    assert rep.verdict
    rep = shape_check(cloud, MuShape.curve(2))
    assert not rep.verdict


def test_insufficient_range():
    pts = [(10.0 ** 0.5, 3.0, "x")] * 40
    cloud = SampleCloud.collect(pts)
    with pytest.raises(InsufficientRange):
        fit_exponents(cloud)
    with pytest.raises(InsufficientRange):
        fit_exponents(SampleCloud.collect([(100.0, 10.0, "x")] * 8))


def test_shape_check_rejects_symbolic():
    cloud = _chamber_ray_cloud(0.0)
    with pytest.raises(SymbolicShape):
        shape_check(cloud, MuShape.band(1, None))


def test_fit_log_power_recovers_powers():
    for p in (-1.0, 0.5, 1.0):
        pts = []
        for lam in np.linspace(0.8, 8, 120):
            nrm = 10.0 ** lam
            rho = nrm ** 1.5 * math.log(nrm) ** p
            pts.append((nrm, rho, "c"))
        cloud = SampleCloud.collect(pts)
        assert fit_log_power(cloud, 1.5) == pytest.approx(p, abs=0.1)


def test_z_cloud_shapes(alg):
    # a doubled-beta line grows linearly; checking the wrong curve fails
    pts = []
    for t in np.geomspace(2, 1e7, 80):
        g = exp_closed(alg(3, yy=1, mode="float").scale(float(t)))
        pts.append((sup_norm(g), rho_norm(g), "z"))
    cloud = SampleCloud.collect(pts)
    assert shape_check(cloud, MuShape.curve(1)).verdict
    assert not shape_check(cloud, MuShape.curve(2)).verdict
