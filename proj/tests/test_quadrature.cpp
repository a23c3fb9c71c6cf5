#include <catch2/catch.hpp>

#include <cmath>

#include "qdamp/quadrature.hpp"

using namespace qdamp;

TEST_CASE("adaptive quadrature reproduces elementary integrals", "[quadrature]") {
    CHECK(quad::integrate([](double x) { return x * x * x * x * x; }, 0.0, 1.0) ==
          Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(quad::integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
          Approx(2.0).epsilon(1e-12));
    CHECK(quad::integrate([](double x) { return std::exp(-x * x); }, -6.0, 6.0) ==
          Approx(std::sqrt(M_PI)).epsilon(1e-10));
    CHECK(quad::integrate([](double) { return 1.0; }, 3.0, 3.0) == 0.0);
}

TEST_CASE("sharp Lorentzian peaks are resolved", "[quadrature]") {
    const double gamma = 1e-5, mu = 0.7;
    auto f = [=](double x) { return gamma / ((x - mu) * (x - mu) + gamma * gamma); };
    const double exact = std::atan((1.0 - mu) / gamma) + std::atan(mu / gamma);
    CHECK(quad::integrate(f, 0.0, 1.0) == Approx(exact).epsilon(1e-8));
}

TEST_CASE("oscillatory panel splitting handles many periods", "[quadrature]") {
    const double w = 50.0, b = 100.0;
    auto f = [=](double x) { return std::cos(w * x); };
    CHECK(quad::integrate_oscillatory(f, 0.0, b, w) == Approx(std::sin(w * b) / w).margin(1e-10));

    // x cos(wx): closed form (cos(wb) + wb sin(wb) - 1) / w^2
    auto g = [=](double x) { return x * std::cos(w * x); };
    const double exact = (std::cos(w * b) + w * b * std::sin(w * b) - 1.0) / (w * w);
    CHECK(quad::integrate_oscillatory(g, 0.0, b, w) == Approx(exact).epsilon(1e-9));
}

TEST_CASE("exhausted refinement reports non-convergence", "[quadrature]") {
    quad::Options starved;
    starved.max_depth = 2;
    starved.abs_tol = 1e-14;
    starved.rel_tol = 1e-14;
    auto nasty = [](double x) { return std::sqrt(std::abs(x - 0.337)); };
    CHECK_THROWS_AS(quad::integrate(nasty, 0.0, 1.0, starved), QuadratureNonConvergence);
}
