"""Smoke tests of the Python bindings: every exported operation is callable,
frozen scalar oracles hold, and the error mapping works."""

import math

import pytest

import atmbss as m

# Fixed evaluation point shared by the scalar-oracle tests:
# y = (0.25, 0.5), w12 = 0.1, w21 = 0.2, k = 2 -> loop gain 0.02, D = 0.98.
POINT = dict(y1=0.25, y2=0.5, w12=0.1, w21=0.2, k=2.0)


def test_version_and_surface():
    assert m.__version__
    for name in (
        "generate_sources", "mix", "separate", "loop_gain", "jacobian",
        "jacobian_partials", "output_sensitivities", "jacobian_total_derivatives",
        "silverman_bandwidth", "kde_density", "kde_score", "vasicek_entropy",
        "criterion_value", "gradient", "fd_jacobian_term", "fd_entropy_term",
        "train", "evaluate_separation",
    ):
        assert callable(getattr(m, name)), name


def test_generate_mix_separate_round_trip():
    s1, s2 = m.generate_sources(400, "uniform", 0.2, 1.0, seed=11)
    assert len(s1) == len(s2) == 400
    assert min(s1) > 0.2 and max(s1) < 1.0

    x1, x2 = m.mix(s1, s2, 0.1, 0.2, 2.0)
    y1, y2, stats = m.separate(x1, x2, 0.1, 0.2, 2.0)
    err = max(max(abs(a - b) for a, b in zip(y1, s1)),
              max(abs(a - b) for a, b in zip(y2, s2)))
    assert err < 1e-10
    assert stats["max_residual"] <= 1e-12
    assert stats["max_iterations"] >= 1


def test_generation_is_seeded():
    a = m.generate_sources(50, "lognormal", -0.5, 0.15, seed=3)
    b = m.generate_sources(50, "lognormal", -0.5, 0.15, seed=3)
    c = m.generate_sources(50, "lognormal", -0.5, 0.15, seed=4)
    assert a == b
    assert a != c


def test_scalar_oracles_frozen():
    assert m.loop_gain(**POINT) == pytest.approx(0.02, rel=1e-12)
    assert m.jacobian(**POINT) == pytest.approx(1.0 / 0.98, rel=1e-14)

    p = m.jacobian_partials(**POINT)
    assert p["dw12"] == pytest.approx(0.20824656393169516, rel=1e-14)
    assert p["dw21"] == pytest.approx(0.10412328196584758, rel=1e-14)
    assert p["dy1"] == pytest.approx(-0.041649312786339036, rel=1e-14)
    assert p["dy2"] == pytest.approx(+0.041649312786339036, rel=1e-14)

    s = m.output_sensitivities(**POINT)
    assert s["dy1_dw12"] == pytest.approx(-0.25 / 0.98, rel=1e-14)
    assert s["dy2_dw12"] == pytest.approx(0.05 / 0.98, rel=1e-14)
    assert s["dy1_dw21"] == pytest.approx(0.05 / 0.98, rel=1e-14)
    assert s["dy2_dw21"] == pytest.approx(-0.5 / 0.98, rel=1e-14)

    d12, d21 = m.jacobian_total_derivatives(**POINT)
    assert d12 == pytest.approx(0.22099635356016628, rel=1e-14)
    assert d21 == pytest.approx(0.08074866764698384, rel=1e-14)


def test_estimators():
    assert m.silverman_bandwidth([1.0, 2.0, 3.0, 4.0, 5.0]) == pytest.approx(
        1.2147359056659339, rel=1e-15)

    u1, _ = m.generate_sources(5000, "uniform", 1e-9, 1.0, seed=1)
    assert abs(m.vasicek_entropy(u1)) < 0.05  # true value 0

    f = m.kde_density([0.0, 1.0], 0.5, eps=1e-12)
    assert f > 0.0
    assert m.kde_score(u1, 0.5) == pytest.approx(
        -(math.log(m.kde_density(u1, 0.5 + 1e-6)) -
          math.log(m.kde_density(u1, 0.5 - 1e-6))) / 2e-6, abs=1e-4)


def test_gradient_report_structure():
    s1, s2 = m.generate_sources(500, "uniform", 0.3, 1.2, seed=3)
    x1, x2 = m.mix(s1, s2, 0.12, 0.18, 2.0)
    g = m.gradient(x1, x2, 0.05, 0.1, 2.0)

    for coeff in ("w12", "w21"):
        t = g[coeff]
        assert t["corrected_gradient"] == t["entropy_term"] - t["jacobian_term"]
        assert t["naive_gradient"] == t["entropy_term"] - t["naive_jacobian_term"]
    assert g["jacobian_sign_flip"] is False
    assert "mean_ln_abs_jacobian=" in g["text"]

    fd = m.fd_jacobian_term(x1, x2, 0.05, 0.1, 2.0, "w12")
    assert g["w12"]["jacobian_term"] == pytest.approx(fd, rel=1e-8)


def test_linear_case_collapses():
    s1, s2 = m.generate_sources(500, "uniform", 0.3, 1.2, seed=3)
    x1, x2 = m.mix(s1, s2, 0.12, 0.18, 1.0)
    g = m.gradient(x1, x2, 0.05, 0.1, 1.0)
    assert g["w12"]["corrected_gradient"] == g["w12"]["naive_gradient"]
    assert g["w21"]["corrected_gradient"] == g["w21"]["naive_gradient"]


def test_criterion_value_identity():
    x1, x2 = m.generate_sources(200, "uniform", 0.3, 1.2, seed=5)
    c = m.criterion_value(x1, x2, 0.0, 0.0, 2.0)
    assert c == m.vasicek_entropy(x1) + m.vasicek_entropy(x2)


def test_train_smoke():
    s1, s2 = m.generate_sources(500, "uniform", 0.2, 1.0, seed=4)
    x1, x2 = m.mix(s1, s2, 0.1, 0.2, 2.0)

    a = m.train(x1, x2, 2.0, max_epochs=5)
    b = m.train(x1, x2, 2.0, max_epochs=5)
    assert a == b  # bit-for-bit deterministic, records included
    assert a["stop_reason"] == "max_epochs"
    assert len(a["records"]) == 5
    assert [r["epoch"] for r in a["records"]] == list(range(5))
    assert a["records"][-1]["criterion"] < a["records"][0]["criterion"]

    # Both variants take the same first step (the jacobian terms vanish at
    # w = 0), but their paths split as soon as the coefficients are nonzero.
    naive = m.train(x1, x2, 2.0, max_epochs=5, variant="naive")
    assert naive["records"][1]["w12"] == a["records"][1]["w12"]
    assert naive["w12"] != a["w12"]

    with pytest.raises(ValueError):
        m.train(x1, x2, 2.0, step_size=-1.0)
    with pytest.raises(ValueError):
        m.train(x1, x2, 2.0, variant="bogus")


def test_evaluate_separation():
    s1, s2 = m.generate_sources(300, "uniform", 0.2, 1.0, seed=9)
    r = m.evaluate_separation(s1, s2, s1, s2)
    assert r["sir_db"] == [120.0, 120.0]  # perfect separation hits the cap
    assert r["corr"][0][0] == pytest.approx(1.0, abs=1e-12)
    assert r["corr"][1][1] == pytest.approx(1.0, abs=1e-12)


def test_error_mapping():
    # validation -> ValueError
    with pytest.raises(ValueError):
        m.generate_sources(0, "uniform", 0.1, 1.0, seed=1)
    with pytest.raises(ValueError):
        m.generate_sources(10, "uniform", -0.5, 1.0, seed=1)
    with pytest.raises(ValueError):
        m.generate_sources(10, "cauchy", 0.0, 1.0, seed=1)
    with pytest.raises(ValueError):
        m.mix([1.0, -2.0], [0.5, 0.5], 0.1, 0.2, 2.0)
    with pytest.raises(ValueError):
        m.vasicek_entropy([0.1 * i for i in range(29)])
    with pytest.raises(ValueError):
        m.mix([1.0, 2.0], [0.5], 0.1, 0.2, 2.0)  # length mismatch

    # numerical -> RuntimeError
    s1, s2 = m.generate_sources(20, "uniform", 0.2, 1.0, seed=2)
    with pytest.raises(RuntimeError):
        m.separate(s1, s2, 2.0, 2.0, 1.0)


def test_numpy_arrays_accepted():
    np = pytest.importorskip("numpy")
    s1, s2 = m.generate_sources(100, "uniform", 0.2, 1.0, seed=6)
    a1, a2 = np.asarray(s1), np.asarray(s2)
    x1, x2 = m.mix(a1, a2, 0.1, 0.2, 2.0)
    y1, y2, _ = m.separate(np.asarray(x1), np.asarray(x2), 0.1, 0.2, 2.0)
    assert max(abs(a - b) for a, b in zip(y1, s1)) < 1e-10
    assert m.vasicek_entropy(np.linspace(0.0, 1.0, 64)) == pytest.approx(
        m.vasicek_entropy(list(np.linspace(0.0, 1.0, 64))), abs=0.0)
