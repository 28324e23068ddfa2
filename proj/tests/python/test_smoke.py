import json
import math

import pytest

import qgrav


def test_freefall_reference_point():
    f = qgrav.freefall.qfim(qgrav.freefall.GaussianProbe(1.0), 1.0, 2.0)
    assert (f.f_gg, f.f_gt, f.f_tt) == pytest.approx((16.0, 4.0, 2.5), rel=1e-12)
    assert qgrav.schur_effective(f) == pytest.approx(16.0 - 16.0 / 2.5)
    assert qgrav.retention(f) + qgrav.correlation(f) == pytest.approx(1.0)


def test_infinite_prior_recovers_fgg():
    f = qgrav.FisherMatrix2(4.0, 2.0, 1.0)
    assert qgrav.regularized_effective(f, math.inf) == 4.0
    assert qgrav.regularized_effective(f, 0.0) == pytest.approx(0.0)


def test_kernel_values():
    n = qgrav.kernel.NormalizedCoeffs(0.0, 0.6)
    r = qgrav.kernel.retention_kernel_many(n, [0.0, 1e6])
    assert r[0] == 1.0
    assert r[1] == pytest.approx(0.64, rel=1e-9)


def test_kc_fullstate_retention():
    c = qgrav.kc.KCConfig(k0=2.0, T=1.5, g=0.7, sigma_v=0.3)
    assert qgrav.kc.fullstate_retention(0.7, 1.5, 0.3) == pytest.approx(0.09 / (0.09 + 0.49 * 2.25))
    f = qgrav.kc.internal_fisher(c)
    assert f.det() == pytest.approx(0.0, abs=1e-9 * f.f_gg * f.f_tt)


def test_optomech_axis():
    a = qgrav.optomech.axis_params(qgrav.optomech.OptoConfig(kbar=0.1, mu=4.0, beta_r=0.1, delta=-0.02))
    assert a.g_c == pytest.approx(0.3)
    assert a.g_star > 0


def test_golden_numbers():
    n = qgrav.experiments.golden_numbers()
    assert n["sigma_v_2uk"] == pytest.approx(1.38e-2, rel=0.01)
    assert n["required_gain_ninety"] == pytest.approx(7.65, rel=0.01)


def test_errors_carry_kind():
    with pytest.raises(qgrav.QgravError) as info:
        qgrav.kc.KCConfig(contrast=2.0)
    assert info.value.kind == "InvalidArgument"
    assert info.value.validation


def test_verify_quick():
    lines = qgrav.verify(random_points=1, quick=True)
    records = [json.loads(s) for s in lines]
    assert records and all(r["pass"] for r in records)
