import math

import numpy as np
import pytest

import pvrh


def test_random_pair_is_valid():
    p = pvrh.random_pair(7)
    rep = pvrh.validate(p)
    assert rep["valid"]
    assert abs(pvrh.fricke_residual(p)) < 1e-9
    assert p.m0.shape == (2, 2)


def test_json_round_trip():
    p = pvrh.random_pair(11)
    q = pvrh.Pair.from_json(p.to_json())
    assert pvrh.pair_distance(p, q) == 0.0


def test_malformed_pair():
    with pytest.raises(pvrh.PvrhError, match="MalformedInput"):
        pvrh.Pair([0.1, 0.2], np.eye(2), np.eye(2))


def test_monodromy_shift_inverse():
    p = pvrh.random_pair(3)
    q = pvrh.monodromy_shift(pvrh.monodromy_shift(p, 2), -2)
    assert pvrh.pair_distance(p, q) < 1e-8


def test_boutroux_real_periods():
    s = pvrh.solve_boutroux(0.0)
    assert abs(s["omegaA"].imag) < 1e-12
    assert abs(s["omegaB"].real) < 1e-12
    assert max(s["residuals"]) < 1e-10


def test_gamma():
    assert abs(pvrh.gamma(5.0) - 24.0) < 1e-12
    assert abs(pvrh.gamma(0.5) - math.sqrt(math.pi)) < 1e-14


def test_solve_rh_and_evaluate():
    p = pvrh.random_pair(5)
    d = pvrh.solve_rh(p, 0.3)
    assert d["variant"] == "Elliptic"
    y, yp, z = pvrh.evaluate(d, 200.0 * np.exp(0.3j))
    assert np.isfinite(y) and np.isfinite(yp)


def test_verify_truncated_family():
    theta = [1 / 3, 1 / 5, 1 / 7]
    pair, desc = pvrh.build_trunc_family("Trunc00", 0.2 + 0.1j, theta)
    out = pvrh.verify(desc, at=60.0, xs=[60.0, 55.0])
    assert out["drift"] < 1e-3
    assert out["det_residual"] < 1e-10
