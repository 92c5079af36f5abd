import math
import warnings

import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from catmew.params import (
    HBAR,
    DomainError,
    ModelState,
    PhysicalParams,
    coupling_constant,
    dimensionless_time,
)

# frozen from the mpmath oracle below (40 digits)
KAPPA_REFERENCE = 1.460115504163722365


def reference_params(**overrides):
    values = dict(
        mass_kg=1e-12,
        omega_m=2 * math.pi * 500,
        omega_c=2 * math.pi * 2.99792458e8 / 1.064e-6,
        cavity_length_m=0.05,
    )
    values.update(overrides)
    return PhysicalParams(**values)


def kappa_mp(mass, omega_m, omega_c, length):
    with mp.workdps(40):
        hbar = mp.mpf("1.054571817e-34")
        return (mp.mpf(omega_c) / omega_m) * mp.sqrt(hbar / (2 * mp.mpf(mass) * omega_m)) / length


def test_reference_kappa_against_extended_precision():
    p = reference_params()
    with mp.workdps(40):
        oracle = (
            (2 * mp.pi * mp.mpf("2.99792458e8") / mp.mpf("1.064e-6")) / (2 * mp.pi * 500)
            * mp.sqrt(mp.mpf("1.054571817e-34") / (2 * mp.mpf("1e-12") * 2 * mp.pi * 500))
            / mp.mpf("0.05")
        )
    assert abs(float(oracle) - KAPPA_REFERENCE) < 1e-15
    assert coupling_constant(p) == pytest.approx(KAPPA_REFERENCE, rel=1e-12)
    assert p.kappa == coupling_constant(p)


def test_hbar_is_codata_2018():
    assert HBAR == 1.054571817e-34


def test_length_scaling():
    k1 = coupling_constant(reference_params(cavity_length_m=0.05))
    k10 = coupling_constant(reference_params(cavity_length_m=0.5))
    assert k1 / k10 == pytest.approx(10.0, rel=1e-14)


def test_mechanical_frequency_scaling():
    wm = 2 * math.pi * 500
    k1 = coupling_constant(reference_params(omega_m=wm))
    k4 = coupling_constant(reference_params(omega_m=4 * wm))
    assert k4 / k1 == pytest.approx(0.125, rel=1e-14)


@pytest.mark.parametrize("field", ["mass_kg", "omega_m", "omega_c", "cavity_length_m"])
@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_invalid_fields_name_the_field(field, bad):
    with pytest.raises(DomainError, match=field):
        reference_params(**{field: bad})


def test_slow_light_warns():
    with pytest.warns(RuntimeWarning, match="omega_c"):
        PhysicalParams(1e-12, 10.0, 5.0, 0.05)


positive = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False)


@given(mass=positive, wm=positive, length=positive, factor=st.floats(1.01, 100))
def test_monotone_decreasing_in_length_and_mass(mass, wm, length, factor):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        base = PhysicalParams(mass * 1e-12, wm * 1e3, 1e15, length * 1e-2)
        longer = PhysicalParams(mass * 1e-12, wm * 1e3, 1e15, length * 1e-2 * factor)
        heavier = PhysicalParams(mass * 1e-12 * factor, wm * 1e3, 1e15, length * 1e-2)
    k = coupling_constant(base)
    assert coupling_constant(longer) < k
    assert coupling_constant(heavier) < k


@given(mass=positive, wm=positive, wc=positive, length=positive)
def test_double_matches_extended_precision(mass, wm, wc, length):
    p = PhysicalParams(mass * 1e-12, wm * 1e3, wc * 1e12, length * 1e-2)
    exact = kappa_mp(p.mass_kg, p.omega_m, p.omega_c, p.cavity_length_m)
    assert abs(coupling_constant(p) - float(exact)) <= 1e-12 * float(exact)


@pytest.mark.parametrize(
    "omega_m, t, expected",
    [(2 * math.pi, 1.0, 2 * math.pi), (3141.59, 0.0, 0.0), (1000.0, 2e-3, 2.0)],
)
def test_dimensionless_time(omega_m, t, expected):
    assert dimensionless_time(omega_m, t) == expected


@pytest.mark.parametrize("omega_m, t", [(math.inf, 1.0), (1.0, math.nan), (0.0, 1.0)])
def test_dimensionless_time_rejects(omega_m, t):
    with pytest.raises(DomainError):
        dimensionless_time(omega_m, t)


def test_model_state_validation():
    ModelState(kappa=0.5, theta=-3.0, chi=1.0)
    with pytest.raises(DomainError):
        ModelState(kappa=-0.1, theta=0.0)
    with pytest.raises(DomainError):
        ModelState(kappa=0.1, theta=math.inf)
