import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from casimir_shells.asymptotics import (
    ZETA3,
    ZETA4,
    high_T_plate_closed_form,
    high_T_slit_closed_form,
    lifshitz_plate_free_energy,
    narrow_slit_energy_closed_form,
    narrow_slit_energy_T0,
    narrow_slit_free_energy,
    plate_energy_T0,
    plate_force_conductor,
    plate_free_energy_conductor,
    plate_reflection_products,
)
from casimir_shells.dynamic import mutual_free_energy
from casimir_shells.model import Geometry, PermittivityModel, ThermalState


def rel(a, b):
    return abs(a - b) / abs(b)


def test_constants():
    mp.mp.dps = 30
    assert ZETA3 == pytest.approx(float(mp.zeta(3)), rel=1e-16)
    assert ZETA4 == pytest.approx(float(mp.zeta(4)), rel=1e-15)


def test_slit_energy_closed_form_per_area():
    g = Geometry.from_gap_ratio(0.03)
    assert rel(narrow_slit_energy_closed_form(g) / g.area, plate_energy_T0(g.d)) < 1e-14


@pytest.mark.parametrize("xi", [0.01, 0.003])
def test_slit_energy_T0(xi):
    g = Geometry.from_gap_ratio(xi)
    assert rel(narrow_slit_energy_T0(g), narrow_slit_energy_closed_form(g)) < 0.02


def test_slit_energy_against_direct_double_quadrature():
    # plain z in [0, inf) for each l, no substitution
    mp.mp.dps = 20
    xi = 0.2
    g = Geometry.from_gap_ratio(xi)
    total = mp.mpf(0)
    for l in range(1, 80):
        nu = l + mp.mpf(1) / 2
        total += nu**2 * mp.quad(lambda z: mp.log(1 - mp.exp(-2 * xi * nu * mp.sqrt(1 + z * z))), [0, 1, mp.inf])
    assert rel(narrow_slit_energy_T0(g, 1e-12), float(2 / mp.pi * total)) < 1e-9


def test_slit_free_energy_low_temperature_limit():
    g = Geometry.from_gap_ratio(0.05)
    t = 0.05
    res = narrow_slit_free_energy(g, ThermalState(t), 1e-9)
    assert rel(res.value * t / (2 * math.pi * g.a), narrow_slit_energy_T0(g)) < 0.01


def test_slit_free_energy_zero_frequency_part():
    g = Geometry.from_gap_ratio(0.05)
    nu = np.arange(1, 5000) + 0.5
    n0 = 2 * math.fsum(nu * np.log1p(-np.exp(-2 * g.xi * nu)))
    # at t = 2000 the n >= 1 terms carry exp(-200)
    res = narrow_slit_free_energy(g, ThermalState(2000.0), 1e-12)
    assert rel(res.value, n0) < 1e-8
    assert rel(n0, -240.4) < 0.02


@pytest.mark.parametrize("xi", [0.05, 0.01, 0.002])
def test_slit_high_temperature_approaches_closed_form(xi):
    g = Geometry.from_gap_ratio(xi)
    res = narrow_slit_free_energy(g, ThermalState(50.0 / xi), 1e-10)
    # next order is O(xi) relative
    assert rel(res.value, high_T_slit_closed_form(g)) < 0.3 * xi


def test_high_temperature_closed_forms():
    g = Geometry.from_gap_ratio(0.05)
    assert high_T_slit_closed_form(g) == pytest.approx(-240.4, abs=0.05)
    assert high_T_slit_closed_form(Geometry.from_gap_ratio(1e6)) < 0
    assert abs(high_T_slit_closed_form(Geometry.from_gap_ratio(1e6))) < 1e-12
    assert rel(high_T_slit_closed_form(g) / g.area, high_T_plate_closed_form(g.d)) < 1e-14


def _plate_polylog(d, t):
    # int_zeta^inf q ln(1 - e^{-2qd}) dq = -[zeta/(2d) Li2(w) + Li3(w)/(4 d^2)], w = e^{-2 zeta d}
    mp.mp.dps = 30
    d = mp.mpf(d)

    def per_n(zeta):
        w = mp.exp(-2 * zeta * d)
        return -(zeta / (2 * d) * mp.polylog(2, w) + mp.polylog(3, w) / (4 * d * d))

    total = per_n(mp.mpf(0)) / 2
    n = 1
    while True:
        term = per_n(n * mp.mpf(t))
        total += term
        if abs(term) < mp.mpf(10) ** -25 * abs(total):
            break
        n += 1
    return float(total / mp.pi)


@pytest.mark.parametrize("d,t", [(0.05, 1.0), (0.05, 20.0), (0.5, 3.0)])
def test_plate_free_energy_against_polylog(d, t):
    assert rel(plate_free_energy_conductor(d, ThermalState(t), 1e-11), _plate_polylog(d, t)) < 1e-9


def test_plate_low_temperature():
    d, th = 0.05, ThermalState(0.5)
    assert rel(plate_free_energy_conductor(d, th, 1e-9), th.beta * plate_energy_T0(d)) < 5e-3


def test_plate_high_temperature():
    d, th = 0.05, ThermalState(5000.0)
    assert rel(plate_free_energy_conductor(d, th, 1e-9), high_T_plate_closed_form(d)) < 1e-9


@pytest.mark.parametrize("d,t", [(0.05, 1.0), (0.2, 10.0)])
def test_plate_force_is_minus_derivative(d, t):
    th = ThermalState(t)
    h = 1e-4 * d

    def f(x):
        return plate_free_energy_conductor(x, th, 1e-13) / th.beta

    fd = -(8 * (f(d + h) - f(d - h)) - (f(d + 2 * h) - f(d - 2 * h))) / (12 * h)
    assert rel(plate_force_conductor(d, th, 1e-12), fd) < 1e-7


def test_plate_force_zero_temperature_law():
    d = 0.05
    f = plate_force_conductor(d, ThermalState(0.2), 1e-10)
    assert rel(f, -math.pi**2 / (240 * d**4)) < 1e-6


def test_lifshitz_conductor_and_vacuum():
    d, th = 0.1, ThermalState(3.0)
    cond = lifshitz_plate_free_energy(d, PermittivityModel.conductor(), th, 1e-10)
    assert rel(cond, plate_free_energy_conductor(d, th, 1e-10)) < 1e-6
    assert lifshitz_plate_free_energy(d, PermittivityModel.constant(1.0), th) == 0.0


def test_lifshitz_large_permittivity_approaches_conductor():
    d, th = 0.1, ThermalState(3.0)
    cond = plate_free_energy_conductor(d, th, 1e-10)
    vals = [lifshitz_plate_free_energy(d, PermittivityModel.constant(e), th, 1e-10) for e in (10.0, 1e3, 1e6)]
    assert cond < vals[2] < vals[1] < vals[0] < 0
    # the conductor plates keep the n = 0 TE term, the dielectric ones do not
    # and the remaining gap closes like 1/sqrt(eps)
    te0 = -ZETA3 / (16 * math.pi * d * d)
    devs = [rel(lifshitz_plate_free_energy(d, PermittivityModel.constant(e), th, 1e-10), cond - te0)
            for e in (1e6, 1e8, 1e10)]
    assert devs[0] < 1e-2
    for x, y in zip(devs, devs[1:]):
        assert y == pytest.approx(x / 10, rel=0.05)


def test_lifshitz_matches_narrow_dielectric_spheres():
    g, th, pm = Geometry.from_gap_ratio(0.02), ThermalState(2.0), PermittivityModel.constant(10.0)
    sphere = mutual_free_energy(g, pm, th, 1e-6).value
    plates = lifshitz_plate_free_energy(g.d, pm, th, 1e-8) * g.area
    assert rel(sphere, plates) < 0.05


@given(eps=st.floats(1.0, 1e6), zeta=st.floats(0.0, 100.0), extra=st.floats(0.0, 100.0))
def test_reflection_products_bounded(eps, zeta, extra):
    q = zeta + extra + 1e-12
    a_n, b_n = plate_reflection_products(eps, zeta, q)
    assert 0.0 <= a_n <= 1.0 and 0.0 <= b_n <= 1.0


def test_proximity_mapping():
    g = Geometry.from_gap_ratio(0.01)
    for t in (1.0, 10.0):
        th = ThermalState(t)
        slit = narrow_slit_free_energy(g, th, 1e-9).value
        plates = plate_free_energy_conductor(g.d, th, 1e-10) * g.area
        assert rel(slit, plates) < 0.01


@pytest.mark.parametrize("phi,tol", [(1e-2, 1e-2), (1e-3, 1e-3)])
def test_sums_to_closed_forms(phi, tol):
    nu = np.arange(1, int(60 / phi)) + 0.5
    w = np.exp(-nu * phi)
    assert rel(math.fsum(nu * nu * w), 2 / phi**3) < tol
    assert rel(math.fsum(nu * w), 1 / phi**2) < tol


def test_limit_formulas_negative_and_decreasing():
    ds = [0.01, 0.05, 0.2, 1.0]
    for fn in (plate_energy_T0, high_T_plate_closed_form):
        vals = [fn(d) for d in ds]
        assert all(v < 0 for v in vals)
        assert all(abs(x) > abs(y) for x, y in zip(vals, vals[1:]))
    vals = [narrow_slit_energy_T0(Geometry.from_gap_ratio(d)) for d in ds]
    assert all(v < 0 for v in vals) and all(abs(x) > abs(y) for x, y in zip(vals, vals[1:]))


def test_input_validation():
    with pytest.raises(ValueError):
        plate_free_energy_conductor(0.0, ThermalState(1.0))
    with pytest.raises(ValueError):
        plate_free_energy_conductor(0.1, ThermalState(0.0))
    with pytest.raises(ValueError):
        narrow_slit_free_energy(Geometry(1.0, 1.1), ThermalState(0.0))
