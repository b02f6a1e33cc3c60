import random
from fractions import Fraction

import numpy as np
import pytest

from su2n import AlgebraElement, Subalgebra
from su2n.metrics import rho_norm, sup_norm
from su2n.nilclassify import (
    FloatingModeUnsupported,
    NotInN,
    check_linear,
    check_square,
    classify,
    cubic_c,
    match_notcds,
    normalizer_in_A,
    pair_e,
    q_center,
    r_alpha,
    witness_curve,
)
from su2n.scalars import QQi
from su2n.shapes import MuShape


def test_square_condition_examples(alg, sub):
    assert check_square(sub(alg(4, x=[1, 0], y=[0, 1]))).condition_id == 1
    assert check_square(sub(alg(3, eta=1, xx=1))).condition_id == 2
    assert check_square(sub(alg(3, yy=1))) is None


def test_square_condition_three(alg, sub):
    # u with independent-ish x against a central z with nonzero pairing
    h = sub(alg(4, x=[1, 0], y=[QQi(0, 2), 0], xx=1), alg(4, yy=1))
    w = check_square(h)
    assert w.condition_id == 3
    assert q_center(w.elements["z"]) == 0 or True  # z cited by the condition
    u, z = w.elements["u"], w.elements["z"]
    from su2n.nilclassify import t_pair
    assert t_pair(u, z) != 0 and not u.phi


def test_square_conditions_four_to_seven(alg, sub):
    assert check_square(sub(alg(3, phi=1, x=[2], eta=-2))).condition_id == 4
    assert check_square(sub(alg(3, phi=1, yy=1), alg(3, xx=1))).condition_id == 5
    assert check_square(sub(alg(4, phi=1, y=[1, 0]),
                            alg(4, x=[0, 1]))).condition_id == 6
    h7 = sub(alg(4, phi=1, y=[1, 0]), alg(4, x=[QQi(0, -1), 0], yy=1),
             alg(4, xx=1))
    assert check_square(h7).condition_id == 7


def test_linear_condition_examples(alg, sub):
    assert check_linear(sub(alg(3, eta=1, xx=1, yy=1))).condition_id == 1
    assert check_linear(sub(alg(4, phi=1, x=[1, 0]))).condition_id == 3
    assert check_linear(sub(alg(3, phi=1))) is None
    assert check_linear(sub(alg(4, x=[1, 0]))).condition_id == 2


def test_linear_condition_two_locked(alg, sub):
    # x = i*y with the cubic vanishing: xx = -1 balances yy = +1
    h = sub(alg(3, y=[1], x=[QQi(0, 1)], xx=-1, yy=1))
    w = check_linear(h)
    assert w.condition_id == 2
    assert cubic_c(w.elements["u"]) == 0


def test_linear_conditions_four_five(alg, sub):
    h = sub(alg(3, phi=1, yy=1), alg(3, eta=1))
    assert check_linear(h).condition_id == 4
    h = sub(alg(3, phi=1, y=[1]), alg(3, eta=1))
    w = check_linear(h)
    assert w.condition_id == 5
    assert pair_e(w.elements["u"], w.elements["z"]) == 0


def test_mode_and_membership_guards(alg, sub):
    hf = Subalgebra([alg(3, phi=1, mode="float")])
    with pytest.raises(FloatingModeUnsupported):
        check_square(hf)
    with pytest.raises(NotInN):
        check_square(sub(alg(3, t1=1)))
    with pytest.raises(ValueError):
        classify(sub(alg(3)))


def test_template_examples(alg, sub):
    m = match_notcds(sub(alg(3, yy=1)))
    assert m.type_id == 1 and m.shape == MuShape.curve(1)
    m = match_notcds(sub(alg(4, y=[1, 0]), alg(4, y=[QQi(0, 1), 0]),
                         alg(4, y=[0, 1]), alg(4, y=[0, QQi(0, 1)]),
                         alg(4, yy=1)))
    assert m.type_id == 3 and m.subcase == "b" and m.shape == MuShape.curve(1)
    assert m.evidence["lambda"] == QQi(0)
    m = match_notcds(sub(alg(3, phi=1)))
    assert m.type_id == 10 and m.shape == MuShape.curve(2)
    m = match_notcds(sub(alg(3, phi=1, y=[1]), alg(3, eta=1, xx=1)))
    assert m.type_id == 11 and m.shape == MuShape.band(Fraction(5, 4), 2)


def test_template_lambda_and_phi0_lock_globally(alg, sub):
    h = sub(alg(4, y=[1, 0], x=[QQi(0, 1), 0], xx=1),
            alg(4, eta=-1, xx=1, yy=1))
    m = match_notcds(h)
    assert m.type_id == 3 and m.subcase == "a"
    assert m.evidence["lambda"] == QQi(0, 1)
    for b in h.basis:
        assert all(xv == m.evidence["lambda"] * yv for xv, yv in zip(b.x, b.y))
    h = sub(alg(3, phi=QQi(2), yy=1))
    m = match_notcds(h)
    assert m.type_id == 5 and m.evidence["phi0"] == QQi(2)


def test_classify_double_entry(alg, sub):
    r = classify(sub(alg(4, x=[1, 0], y=[0, 1]), alg(4, eta=1, xx=1, yy=1)))
    assert r.verdict == "CDS"
    assert r.square.condition_id == 1 and r.linear.condition_id == 1
    assert r.template is None
    r = classify(sub(alg(4, x=[1, 0]), alg(4, x=[QQi(0, 1), 0]),
                     alg(4, x=[0, 1]), alg(4, x=[0, QQi(0, 1)]), alg(4, xx=1)))
    assert r.verdict == "NotCDS" and r.template.type_id == 4
    assert r.square is None and r.linear is not None


def test_classify_witness_pattern_matches_shape(alg, sub):
    # the 5/4..2 band has a square sequence but no linear one
    r = classify(sub(alg(3, phi=1, y=[1]), alg(3, eta=1, xx=1)))
    assert r.square is not None and r.linear is None
    # curve(3/2) families have neither
    r = classify(sub(alg(3, x=[1], yy=1)))
    assert r.square is None and r.linear is None


def test_normalizer_examples(alg, sub):
    assert str(normalizer_in_A(sub(alg(3, yy=1)))) == "A"
    assert str(normalizer_in_A(sub(alg(3, eta=1, xx=1, yy=1)))) == "ker(alpha)"
    assert str(normalizer_in_A(sub(alg(4, phi=1, x=[1, 0], eta=QQi(0, -1),
                                       yy=2)))) == "trivial"
    assert str(normalizer_in_A(sub(alg(3, x=[1], yy=1)))) == "ker(alpha-beta)"


def _curve_slope(curve, tmax=1e4, npts=40):
    pts = []
    for t in np.geomspace(1.0, tmax, npts):
        g = curve(float(t))
        nrm = sup_norm(g)
        if 1.0 < nrm <= 1e8:
            pts.append((np.log10(nrm), np.log10(rho_norm(g))))
    a = np.array(pts)
    return np.polyfit(a[:, 0], a[:, 1], 1)[0]


@pytest.mark.parametrize("basis_kw,expect", [
    ([dict(x=[1, 0], y=[0, 1], eta=(2, 1), xx=3)], 2.0),
    ([dict(eta=1, xx=1)], 2.0),
    ([dict(phi=1, x=[2, 0], eta=-2)], 2.0),
])
def test_square_witness_curves(alg, sub, basis_kw, expect):
    els = []
    for kw in basis_kw:
        kw = dict(kw)
        if "eta" in kw and isinstance(kw["eta"], tuple):
            kw["eta"] = QQi(*kw["eta"])
        els.append(alg(4, **kw))
    h = sub(*els)
    w = check_square(h)
    assert w is not None
    slope = _curve_slope(witness_curve(w, h))
    assert abs(slope - expect) < 0.08


@pytest.mark.parametrize("make,expect", [
    (lambda alg: [alg(3, eta=1, xx=1, yy=1)], 1.0),
    (lambda alg: [alg(3, y=[1], x=[QQi(0, 1)], xx=-1, yy=1)], 1.0),
    (lambda alg: [alg(3, phi=1, yy=1), alg(3, eta=1)], 1.0),
    (lambda alg: [alg(3, phi=1, y=[1]), alg(3, eta=1)], 1.0),
])
def test_linear_witness_curves(alg, sub, make, expect):
    h = sub(*make(alg))
    w = check_linear(h)
    assert w is not None
    slope = _curve_slope(witness_curve(w, h), tmax=3e4)
    assert abs(slope - expect) < 0.08


def test_classify_runs_on_saturated_randoms():
    from su2n.corpus import random_corpus
    for cid, h in random_corpus(count=60, seed=42, include_gallery=False):
        r = classify(h, seed=0)
        assert r.verdict in ("CDS", "NotCDS")
        if r.verdict == "NotCDS":
            assert (r.square is not None) == r.shape.upper_touches_square()
            assert (r.linear is not None) == r.shape.lower_touches_linear()


def test_type6_ratio_bounded_along_random_sequences(alg, sub):
    # for curve(2) matches, rho/|h|^2 stays within the (n+2)^4 corridor
    import random as _random
    h = sub(alg(4, x=[1, 0], y=[0, 1]))
    r = classify(h)
    assert r.template.type_id == 6
    hf = h.to_float()
    rng = _random.Random(3)
    from su2n.elements import exp_closed
    C = (4 + 2) ** 4
    for _ in range(20):
        t = 10 ** rng.uniform(0.5, 4)
        g = exp_closed(hf.basis[0].scale(t))
        ratio = rho_norm(g) / sup_norm(g) ** 2
        assert 1 / C <= ratio <= C


def test_witness_curves_on_random_cds_examples():
    from su2n.corpus import random_corpus
    checked = 0
    for cid, h in random_corpus(count=60, seed=11, include_gallery=False):
        r = classify(h, seed=0)
        if r.verdict != "CDS" or checked >= 4:
            continue
        checked += 1
        for w, expect in ((r.square, 2.0), (r.linear, 1.0)):
            slope = _curve_slope(witness_curve(w, h), tmax=1e5)
            assert abs(slope - expect) < 0.08, (cid, w.condition_id, slope)
    assert checked >= 2


def test_irrational_isotropic_plane(alg, sub):
    # the central form -a^2 + 2b^2 has real but no rational zeros: the
    # decision stays exact (signature), the witness is approximate
    h = sub(alg(3, eta=1, xx=1, yy=2), alg(3, eta=2, xx=1, yy=2))
    r = classify(h, seed=0)
    assert r.verdict == "CDS"
    assert r.linear.condition_id == 1 and not r.linear.exact
    slope = _curve_slope(witness_curve(r.linear, h), tmax=3e4)
    assert abs(slope - 1.0) < 0.08


def test_linear_five_with_xx_component(alg, sub):
    # E = xx_z |y_u|^2 - phi_u yy_u conj(eta_z) cancels between both terms
    h = sub(alg(3, phi=1, y=[1], yy=1), alg(3, eta=1, xx=1))
    r = classify(h, seed=0)
    assert r.verdict == "CDS" and r.linear.condition_id == 5
    slope = _curve_slope(witness_curve(r.linear, h), tmax=3e4)
    assert abs(slope - 1.0) < 0.08
