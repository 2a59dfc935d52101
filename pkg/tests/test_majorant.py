import math

import numpy as np
import pytest

from disklab.blaschke import PointSequence, blaschke_defect
from disklab.geometry import DiskPoint
from disklab.majorant import (
    FEAS_TOL,
    GAP_TOL,
    DualCertificate,
    IllConditioned,
    LPError,
    MajorantProblem,
    PrimalCertificate,
    _classify_masses,
    dual_ratio,
    dual_ratio_probe,
    majorant_test,
    solve_dual,
    solve_primal,
    trace_membership,
    weight_report,
)
from disklab.sequences import radial_dyadic, stolz_pairs

R10_DEPTH6_MASS = 0.5675144915419721
STOLZ14_MASS = 1.790943


def test_problem_validation():
    with pytest.raises(ValueError):
        MajorantProblem(np.array([1.1 + 0j]), np.array([1.0]), 5)
    with pytest.raises(ValueError):
        MajorantProblem(np.array([0.5 + 0j]), np.array([-1.0]), 5)
    with pytest.raises(ValueError):
        MajorantProblem(np.array([0.5 + 0j]), np.array([1.0]), 0)
    with pytest.raises(ValueError):
        MajorantProblem(np.array([], dtype=complex), np.array([]), 5)


def test_single_target_closed_form():
    """One radial target: all mass goes to the aligned node, costing
    v * (1 - r) / (1 + r)."""
    prob = MajorantProblem(np.array([0.5 + 0j]), np.array([2.0]), 5)
    cert = solve_primal(prob)
    assert cert.total_mass == pytest.approx(2.0 / 3.0, rel=1e-12)
    share, theta = cert.concentration()
    assert share == pytest.approx(1.0)
    assert theta == pytest.approx(0.0)


def test_condition_limit_enforced():
    # any basis has condition >= 1, so a limit below that must trip
    prob = MajorantProblem(np.array([0.5 + 0j]), np.array([2.0]), 5)
    with pytest.raises(IllConditioned):
        solve_primal(prob, cond_limit=0.5)


def test_radial_dyadic_frozen_mass_and_duality():
    seq = radial_dyadic(10).require_sequence()
    vals = blaschke_defect(seq).values
    prob = MajorantProblem(seq.zs, vals, 6)
    p = solve_primal(prob)
    d = solve_dual(prob)
    assert p.total_mass == pytest.approx(R10_DEPTH6_MASS, rel=1e-9)
    assert d.objective == pytest.approx(p.total_mass, abs=GAP_TOL * (1 + p.total_mass))
    assert p.verify(prob) <= FEAS_TOL
    assert d.verify(prob) <= FEAS_TOL


def test_primal_certificate_verify_catches_shortfall():
    seq = radial_dyadic(6).require_sequence()
    prob = MajorantProblem(seq.zs, blaschke_defect(seq).values, 5)
    cert = solve_primal(prob)
    bad = PrimalCertificate(cert.depth, cert.node_masses * 0.5,
                            cert.total_mass * 0.5, cert.condition)
    assert bad.verify(prob) > 0.1


def test_dual_certificate_verify_catches_overload():
    seq = radial_dyadic(6).require_sequence()
    prob = MajorantProblem(seq.zs, blaschke_defect(seq).values, 5)
    cert = solve_dual(prob)
    bad = DualCertificate(cert.depth, cert.coeffs * 3.0, cert.objective * 3.0)
    assert bad.verify(prob) > FEAS_TOL


def test_primal_to_density_reproduces_mass():
    seq = radial_dyadic(6).require_sequence()
    prob = MajorantProblem(seq.zs, blaschke_defect(seq).values, 5)
    cert = solve_primal(prob)
    assert cert.to_density().mass() == pytest.approx(cert.total_mass, rel=1e-12)


def test_majorant_test_radial_bounded():
    seq = radial_dyadic(10).require_sequence()
    verdict = majorant_test(seq, (5, 6, 7))
    assert verdict.trend == "BOUNDED"
    ms = verdict.masses()
    assert len(ms) == 3
    assert max(ms) / min(ms) < 1.01
    # radial accumulation at zeta = 1 concentrates the certificate
    assert verdict.singular_like
    assert verdict.singular_theta == pytest.approx(0.0)
    assert verdict.density is not None


def test_majorant_test_stolz_concentrated():
    seq = stolz_pairs(14).sequence
    verdict = majorant_test(seq, (6, 7))
    ms = verdict.masses()
    assert ms[0] == pytest.approx(STOLZ14_MASS, abs=1e-4)
    for level in verdict.levels:
        assert level.status == "ok"
        assert level.concentration >= 0.99


def test_classify_masses_rules():
    assert _classify_masses([]) == "INCONCLUSIVE"
    assert _classify_masses([0.0, 0.0]) == "BOUNDED"
    assert _classify_masses([1.0, 1.0001, 1.0002, 1.0001]) == "BOUNDED"
    assert _classify_masses([1.0, 1.2, 1.5, 2.0, 2.6]) == "GROWING"
    assert _classify_masses([1.0, 2.0]) == "INCONCLUSIVE"


def test_dual_ratio_and_probe():
    seq = radial_dyadic(6).require_sequence()
    with pytest.raises(ValueError, match="EMPTY"):
        dual_ratio(seq, np.zeros(6))
    ratio, coeffs = dual_ratio_probe(seq, depth=10)
    assert ratio > 0.0
    assert len(coeffs) == 6
    assert dual_ratio(seq, coeffs, depth=10) == pytest.approx(ratio, rel=1e-12)


def test_weight_report_radial_vanishing():
    rep = weight_report(radial_dyadic(10).require_sequence())
    assert rep.vanishing and rep.bounded and rep.summable
    assert rep.values.shape == (10,)
    assert rep.running_sup[-1] == pytest.approx(rep.values.max())


def test_weight_report_stolz_bounded_not_vanishing():
    rep = weight_report(stolz_pairs(12).sequence)
    assert rep.bounded
    assert not rep.vanishing
    assert not rep.summable


def test_trace_membership_log_domain():
    seq = radial_dyadic(10).require_sequence()
    # boundary data exp(2^n) at the n-th point, passed in log domain
    logs = [2.0 ** n for n in range(1, 11)]
    rep = trace_membership(seq, log_values=logs)
    assert rep.growth_sup == pytest.approx(1.0, rel=1e-12)
    assert rep.growth_sum == pytest.approx(10.0, rel=1e-12)
    with pytest.raises(ValueError):
        trace_membership(seq, values=[1.0] * 10, log_values=logs)
    with pytest.raises(ValueError, match="log_values"):
        trace_membership(seq, values=[-3.0] * 10)
