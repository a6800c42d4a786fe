import math

import numpy as np
import pytest

import cmldde


def p3(**kw):
    base = dict(n=2.0, beta0=2.5, delta=0.0015, k=1.01, r=7.55)
    base.update(kw)
    return cmldde.ModelParams(**base)


def test_params_validate_and_derive_gamma():
    p = p3()
    assert p.gamma == pytest.approx(math.log(2 / 1.01) / 7.55, rel=1e-15)
    with pytest.raises(cmldde.DomainError):
        cmldde.ModelParams(n=2, beta0=2.5, delta=0.0015, k=2.5, r=1)
    with pytest.raises(ValueError):
        cmldde.ModelParams(n=-1)


def test_equilibria_and_stability():
    eqs = cmldde.equilibria(p3())
    assert [e.kind for e in eqs] == ["trivial", "positive"]
    assert eqs[1].y == pytest.approx(3.95811403, abs=1e-7)
    assert eqs[1].x == pytest.approx(3.24777441, abs=1e-7)
    v = cmldde.classify_positive(p3())
    assert v.state == "AsymptoticallyStable"
    assert v.r_lower < 7.55 < v.r_upper
    assert cmldde.classify_trivial(p3()).state == "Unstable"
    roots = cmldde.leading_roots(p3(), 2)
    assert roots[0].real < 0


def test_hopf_boundary():
    r_h = cmldde.hopf_delay(12, 1.77, 1.18074, 0.05)
    assert r_h == pytest.approx(0.355911374, rel=1e-8)
    w = cmldde.hopf_omega(12, 1.77, 1.18074, 0.05)
    roots = cmldde.leading_roots(cmldde.ModelParams(n=12, beta0=1.77, delta=0.05, k=1.18074, r=r_h), 1)
    assert abs(roots[0].real) < 1e-8
    assert roots[0].imag == pytest.approx(w, rel=1e-8)
    with pytest.raises(cmldde.NoHopf):
        cmldde.hopf_delay(1, 1.0, 1.5, 0.1)


def test_surface_grid_shape_and_nan():
    g = cmldde.surface_grid(2, 1.0, (1.05, 1.95), (0.001, 2.0), 5, 7)
    assert g.shape == (5, 7)
    assert np.isnan(g).any() and np.isfinite(g).any()


def test_tables():
    rows = cmldde.embedded_tables()
    assert len(rows) == 36
    checks = cmldde.verify_table()
    failing = [c for c in checks if not c["pass"]]
    assert len(failing) == 1
    assert (failing[0]["beta0"], failing[0]["k"]) == (1.5, 1.6)
    with pytest.raises(cmldde.IoError):
        cmldde.verify_table(path="/nonexistent/tables.csv")


def test_simulation_and_x():
    p = cmldde.ModelParams(n=12, beta0=1.77, delta=0.05, k=1.18074, r=0.3)
    y2 = cmldde.equilibria(p)[1].y
    h = cmldde.constant_history(1.01 * y2, p.r)
    assert h(-0.1) == pytest.approx(1.01 * y2)
    y = cmldde.integrate_y(p, h, 300.0)
    assert isinstance(y.values, np.ndarray)
    assert len(y) == len(y.t) == len(y.values)
    assert y.t[0] == pytest.approx(-p.r)
    assert (y.values > 0).all()
    assert abs(y(300.0) - y2) < 1e-6
    x = cmldde.integrate_x(p, y, 0.0, 300.0)
    assert abs(x(300.0) - cmldde.equilibria(p)[1].x) < 1e-6
    rep = cmldde.convergence_check(y, y2, 30.0)
    assert rep.sup_distance < 1e-6


def test_orbit_analysis():
    p = cmldde.ModelParams(n=12, beta0=1.77, delta=0.05, k=1.18074, r=0.36)
    y2 = cmldde.equilibria(p)[1].y
    y = cmldde.integrate_y(p, cmldde.eigenmode_history(p, 0.01), 2000.0)
    orbit = cmldde.classify_orbit(y, y2, 2000.0)
    assert orbit.kind == "ApproachesCycle"
    assert orbit.cycle.amplitude > 0.02
    z = cmldde.zone_classify(cmldde.ModelParams(n=12, beta0=1.77, delta=0.05, k=1.18074, r=0.3),
                             [0.01, 0.05], 3000.0)
    assert z.zone == "Zone1" and z.equilibrium_stable


def test_errors_map_to_python_exceptions():
    p = cmldde.ModelParams(n=12, beta0=1.77, delta=0.05, k=1.18074, r=0.3)
    with pytest.raises(cmldde.DomainError):
        cmldde.integrate_y(p, cmldde.constant_history(1.0, p.r), -1.0)
    with pytest.raises(cmldde.PreconditionError):
        cmldde.classify_positive(cmldde.ModelParams(n=2, beta0=2.5, delta=0.3, k=1.01, r=1))
    assert issubclass(cmldde.PreconditionError, ValueError)
    assert issubclass(cmldde.IoError, OSError)
