import math

import numpy as np
import pytest

from bateman_havelock.contours import (
    PHASE_TOL,
    CertificationError,
    ContourPath,
    certify_branch,
    descent_offsets,
    eta_closed_form,
    eta_level_set,
    paths_csv,
    psi,
    saddle,
    trace_path,
)
from bateman_havelock.regimes import Regime

CASES = [("pos-osc", 1.2), ("pos-osc", 2.0), ("pos-osc", 5.0), ("pos-mono", 0.1), ("pos-mono", 0.5),
         ("pos-mono", 0.9), ("pos-coalesce", 1.0), ("neg", 0.25), ("neg", 1.5), ("neg", 4.0)]


@pytest.mark.parametrize("regime,a", CASES)
def test_every_traced_leg_certifies(regime, a):
    for leg in trace_path(regime, a, 128, x=20.0 if regime == "neg" else None):
        assert leg.certify() <= PHASE_TOL


def test_pos_osc_asymptote():
    legs = trace_path("pos-osc", 2.0, 256)
    end = legs[-1].nodes[-1]
    assert abs(end.real - (math.pi / 2 - 1) / 2) < 1e-3
    assert end.imag < -5


def test_pos_osc_passes_through_real_saddle():
    assert eta_closed_form(2.0, math.pi / 4) == pytest.approx(0.0, abs=1e-7)


@pytest.mark.parametrize("a", [1.3, 2.0, 3.0, 6.0])
def test_closed_form_matches_level_set(a):
    s = math.sqrt(a - 1)
    u0 = math.atan(s)
    c = a * u0 - s
    for xi in np.linspace(u0 + 1e-3, math.pi / 2 - 1e-2, 25):
        eta_b1 = float(eta_closed_form(a, xi, 1))
        eta_ls = eta_level_set(a, float(xi), -c)
        assert abs(eta_b1 - eta_ls) <= 1e-10


def test_neg_vertical_leg():
    legs = trace_path("neg", 1.5, 128)
    for leg in legs:
        if leg.leg.startswith("vertical"):
            assert np.all(leg.nodes.real == math.pi / 2)
            assert np.allclose(leg.psi.imag, math.pi / 2 * 1.5, atol=1e-12, rtol=0)


def test_coalesce_rays_start_at_origin():
    legs = trace_path("pos-coalesce", 1.0, 64)
    assert len(legs) == 2
    assert all(leg.nodes[0] == 0 for leg in legs)


def test_certification_rejects_a_bad_path():
    xi = np.linspace(0.8, 1.2, 20)
    bad = ContourPath(xi + 0.05j, Regime.PosOsc, "upper", 0.0, "bogus", 2.0)
    with pytest.raises(CertificationError):
        bad.certify()


def test_branch_certification():
    sd = saddle("pos-osc", 2.0)
    w = np.linspace(0.0, 1.9, 300)
    h, _ = descent_offsets(sd, w)
    assert certify_branch(sd, h, w) < 1e-12
    with pytest.raises(CertificationError):
        certify_branch(sd, h * (1 + 1e-3j), w)


def test_saddle_is_stationary():
    for regime, a in [("pos-osc", 2.0), ("pos-mono", 0.5), ("neg", 1.5)]:
        sd = saddle(regime, a)
        eps = 1e-6
        d = (psi(sd.u0 + eps, a, regime) - psi(sd.u0 - eps, a, regime)) / (2 * eps)
        assert abs(d) < 1e-8


def test_trace_path_arguments():
    with pytest.raises(ValueError):
        trace_path("pos-osc", 2.0, 32)
    with pytest.raises(ValueError):
        trace_path("pos-osc", 0.5, 128)
    with pytest.raises(ValueError):
        trace_path("pos-mono", 1.5, 128)


def test_csv_export_columns():
    text = paths_csv(trace_path("neg", 1.5, 64))
    header = text.splitlines()[0].split(",")
    assert header == ["regime", "branch", "leg", "re_u", "im_u", "re_psi", "im_psi", "phase_dev"]
    assert len(text.splitlines()) == 65
