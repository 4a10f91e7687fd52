import json

import mpmath
import pytest

from oracles import PARTITIONS
from wrightturan.contour import (
    ContourConfig,
    IntegrationError,
    arc_split_report,
    cauchy_coefficient,
    cauchy_integral,
    contour_checks,
    evaluate_F,
    quadrature_at,
)
from wrightturan.series import ProductSpec, series_for
from wrightturan.wright import profile_coloured_partitions

mpf = mpmath.mpf


def spec(text):
    return ProductSpec.parse(text, 0)


def _series_value(text, q, terms=600):
    c = series_for(spec(text), terms)
    return mpmath.log(mpmath.fsum(cn * q**n for n, cn in enumerate(c)))


def test_evaluate_F_examples():
    assert evaluate_F(spec("H 1 1"), 0) == 0
    assert abs(evaluate_F(spec("H 1 1"), mpf("0.5")) - _series_value("H 1 1", mpf("0.5"))) < 1e-12
    q = mpf("0.3") * mpmath.expjpi(mpf(1) / 7)
    assert abs(evaluate_F(spec("G 1 2"), q) - _series_value("G 1 2", q)) < 1e-12
    finite = ProductSpec.custom({1: 2, 3: -1}, 0)
    q = mpmath.mpc("0.2", "0.4")
    assert abs(evaluate_F(finite, q) - (-2 * mpmath.log(1 - q) + mpmath.log(1 - q**3))) < 1e-25
    with pytest.raises(ValueError):
        evaluate_F(spec("H 1 1"), 1)


def test_partitions_at_50():
    cfg = ContourConfig.for_family(spec("H 1 1"), 50)
    assert abs(cauchy_coefficient(cfg) - PARTITIONS[50]) < 0.5
    assert cfg.nodes == 912 and cfg.nodes % 8 == 0


def test_constant_term():
    assert abs(cauchy_coefficient(ContourConfig.for_family(spec("H 1 1"), 0)) - 1) < 1e-20


def test_shifted_family_at_40():
    exact = series_for(spec("G 1 3"), 41)[40]
    assert abs(cauchy_coefficient(ContourConfig.for_family(spec("G 1 3"), 40)) - exact) < 0.5


def test_dilated_family():
    # H 2 3 has nonzero coefficients only at multiples of 3; C(n) = c(3n)
    exact = series_for(spec("H 2 3"), 21)[20]
    res = cauchy_integral(ContourConfig.for_family(spec("H 2 3"), 20))
    assert abs(res.value - exact) < 1e-15 * exact
    assert res.imag_residual < 1e-8 * res.value


def test_two_major_arcs_agree():
    rep = arc_split_report(ContourConfig.for_family(spec("H 1 2"), 30))
    assert len(rep.major) == 2
    assert rep.symmetry_error < 1e-10
    assert rep.additivity_error < 1e-10
    assert abs(mpmath.re(rep.total) - series_for(spec("H 1 2"), 31)[30]) < 0.5


def test_minor_arc_shrinks():
    small = arc_split_report(ContourConfig.for_family(spec("H 1 1"), 50))
    large = arc_split_report(ContourConfig.for_family(spec("H 1 1"), 200))
    assert large.minor_to_major < small.minor_to_major
    assert small.minor_bound_holds and large.minor_bound_holds


def test_single_arc_additivity():
    cfg = ContourConfig.for_family(spec("G 1 2"), 60)
    rep = arc_split_report(cfg)
    assert rep.K == 1 and rep.minor_arc_nodes > 0
    assert abs(rep.major[0] + rep.minor - rep.total) <= 1e-10 * abs(rep.total)
    assert abs(mpmath.re(rep.total) - cauchy_coefficient(cfg)) <= 1e-10 * abs(rep.total)


def test_report_json():
    doc = json.loads(arc_split_report(ContourConfig.for_family(spec("H 1 2"), 10)).to_json())
    assert doc["K"] == 2 and len(doc["major_log_magnitude"]) == 2
    assert {"nodes", "residual_imag", "minor_log_magnitude"} <= doc.keys()


def test_node_study_exponential():
    cfg = ContourConfig.for_family(spec("H 1 1"), 30)
    errs = [abs(quadrature_at(cfg, nn) - 5604) for nn in (16, 32, 48, 64)]
    assert all(b < a / 2 for a, b in zip(errs, errs[1:]))
    assert abs(quadrature_at(cfg, 512) - 5604) < 1e-20


def test_config_validation():
    pr = profile_coloured_partitions(1, 1)
    with pytest.raises(ValueError):
        ContourConfig(spec("H 1 1"), pr, -1)
    cfg = ContourConfig(spec("H 1 1"), pr, 5, nodes=10)
    assert cfg.nodes == 64
    # with the default truncation the dropped tail of Log F is below 1e-30
    assert cfg.truncation > 20


def test_refinement_budget():
    cfg = ContourConfig.for_family(spec("H 1 1"), 100, nodes=8, max_nodes=64)
    with pytest.raises(IntegrationError):
        cauchy_integral(cfg)


def test_suite():
    checks = contour_checks(["H 1 1", "H 1 2"], 20)
    assert all(c.passed for c in checks), [c.line() for c in checks]
