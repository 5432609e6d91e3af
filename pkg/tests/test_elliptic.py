import math

import numpy as np
import pytest
from scipy import special
from scipy.integrate import quad

from telefid.elliptic import ellipe, ellipk, werner_radial_integral


@pytest.mark.parametrize("m", [0.0, 1e-8, 0.1, 0.25, 0.5, 0.9, 0.99, 0.999999])
def test_against_scipy(m):
    assert ellipk(m) == pytest.approx(special.ellipk(m), rel=1e-14)
    assert ellipe(m) == pytest.approx(special.ellipe(m), rel=1e-14)


def test_endpoints():
    assert ellipk(0.0) == pytest.approx(math.pi / 2)
    assert ellipe(1.0) == pytest.approx(1.0)
    assert math.isinf(ellipk(1.0))


def radial_oracle(p):
    # t = sin(u) leaves a smooth integrand on [0, pi/2]
    f = lambda u: (math.sin(u) * math.cos(u)) ** 2 * math.sqrt(1 - (p * math.sin(u)) ** 2)
    return quad(f, 0, math.pi / 2, epsabs=1e-14, epsrel=1e-12)[0]


@pytest.mark.parametrize("p", np.round(np.arange(0.0, 1.0001, 0.05), 10))
def test_radial_integral(p):
    assert werner_radial_integral(p) == pytest.approx(radial_oracle(p), abs=1e-13)


def test_radial_integral_limits():
    assert werner_radial_integral(0.0) == pytest.approx(math.pi / 16, abs=1e-15)
    assert werner_radial_integral(1.0) == pytest.approx(2 / 15, abs=1e-15)
    # continuous across the series/closed-form switch
    assert werner_radial_integral(0.25 - 1e-12) == pytest.approx(werner_radial_integral(0.25 + 1e-12), abs=1e-11)
