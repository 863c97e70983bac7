import math
import os
from fractions import Fraction

import pytest

import gwplasma as gw

DATA = os.environ.get("GWPLASMA_TEST_DATA", os.path.join(os.path.dirname(__file__), "..", "data"))


def test_law_forms_agree():
    a = gw.Law({2: "1/2", 3: "1/2"})
    b = gw.Law('{"law": [{"q": 2, "p": "1/2"}, {"q": 3, "p": "1/2"}]}')
    c = gw.Law.from_file(os.path.join(DATA, "mixed.json"))
    assert a.support() == b.support() == c.support() == [2, 3]
    assert a.mean() == Fraction(5, 2)
    assert a.probability(3) == Fraction(1, 2)


def test_invalid_law_reports_kind():
    with pytest.raises(gw.GwplasmaError) as info:
        gw.Law({2: "1/2", 3: "1/3"})
    assert info.value.kind == "ProbabilitySumNotOne"
    with pytest.raises(ValueError):
        gw.Law({0: "1"})


def test_beta_zero_gives_inverse_factorial():
    law = gw.Law({2: "2/3", 5: "1/3"})
    for n in range(7):
        assert gw.mean_z(law, n).exact(0) == Fraction(1, math.factorial(n))


def test_n2_regular_closed_form():
    # (q - 1) / (2 (q - q^-beta)) at beta = 1, q = 3: 2 / (2 * 8/3) = 3/8
    f = gw.mean_z(gw.Law.regular(3), 2)
    assert f.exact(1) == Fraction(3, 8)
    assert f(1.0) == pytest.approx(0.375, rel=1e-15)
    assert gw.mean_z_numeric(gw.Law.regular(3), 2, 1.0) == pytest.approx(0.375, rel=1e-15)
    assert f.variables() == [3]


def test_rational_function_dict():
    d = gw.mean_z({2: "1"}, 2).to_dict()
    assert set(d) >= {"num", "den", "den_factors"}


def test_series_and_fixed_point():
    law = {2: "1/2", 3: "1/2"}
    series = gw.mean_gcpf(law, 5)
    assert len(series) == 6
    assert gw.fixed_point(law, 5) == series
    assert gw.beta_infinity(law, 3)[2] == Fraction(7, 24)


def test_verification_reports():
    r = gw.verify_functional_equation({2: "1/2", 3: "1/2"}, 5)
    assert r["pass"] and r["first_failure_order"] is None
    assert gw.verify_regular_quadratic(3, 6)["pass"]
    assert gw.verify_q_power_identity(2, 6)["pass"]


def test_glued_symmetry():
    law = gw.Law.regular(2)
    assert gw.glued_occupation(law, law, 5).exact(0) == Fraction(5, 2)


def test_monte_carlo_deterministic():
    a = gw.mc_mean_z({2: "1/2", 3: "1/2"}, 2, 1.0, samples=200, depth=6, seed=7)
    b = gw.mc_mean_z({2: "1/2", 3: "1/2"}, 2, 1.0, samples=200, depth=6, seed=7)
    assert a == b
    exact = gw.mean_z_numeric({2: "1/2", 3: "1/2"}, 2, 1.0)
    assert abs(a["mean"] - exact) <= 5 * a["std_error"] + a["enclosure_width_max"]


def test_negative_beta_mc_rejected():
    with pytest.raises(gw.GwplasmaError) as info:
        gw.mc_mean_z({2: "1"}, 2, -0.5, samples=10, depth=3)
    assert info.value.kind == "NegativeBetaUnsupported"
