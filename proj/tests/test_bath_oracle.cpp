#include <catch2/catch.hpp>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "qdamp/bath_oracle.hpp"

using namespace qdamp;

namespace {

OscillatorParams harmonic(double m, double w, double beta) {
    OscillatorParams p;
    p.mass = m;
    p.frequency = w;
    p.friction = beta;
    return p;
}

CouplingSpec zero_coupling(double cutoff) {
    return CouplingSpec::tabulated({{cutoff * 1e-6, 0.0}, {cutoff, 0.0}}, cutoff);
}

} // namespace

TEST_CASE("mode grid: midpoint rule and Ohmic couplings", "[bath_oracle]") {
    const auto spec = CouplingSpec::ohmic(1.0, 1.0);
    const auto grid = build_mode_grid(spec, 1, GridStrategy::Uniform);
    REQUIRE(grid.size() == 1);
    CHECK(grid.frequencies[0] == Approx(0.5));
    CHECK(grid.weights[0] == Approx(1.0));
    // g = sqrt(beta dw / (pi w))
    CHECK(grid.couplings[0] == Approx(std::sqrt(1.0 / (M_PI * 0.5))).epsilon(1e-12));

    const auto gl = build_mode_grid(spec, 64, GridStrategy::GaussLegendre);
    double weight_sum = 0.0;
    for (double w : gl.weights) weight_sum += w;
    CHECK(weight_sum == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("discretized kernel converges to the continuum kernel", "[bath_oracle][slow][.]") {
    const auto spec = CouplingSpec::ohmic(1.0, 20.0);
    const auto grid = build_mode_grid(spec, 2048, GridStrategy::Uniform);
    const double t_max = 2.0 * M_PI * 10.0 / spec.cutoff;
    double sup = 0.0, scale = 0.0;
    for (double t = 0.0; t <= t_max; t += t_max / 64.0) {
        const double cont = memory_kernel(spec, t);
        sup = std::max(sup, std::abs(reconstructed_kernel(grid, t) - cont));
        scale = std::max(scale, std::abs(cont));
    }
    CHECK(sup <= 0.01 * scale);
}

TEST_CASE("generator: decoupled limit is block-diagonal rotation", "[bath_oracle]") {
    const auto grid = build_mode_grid(zero_coupling(5.0), 3, GridStrategy::Uniform);
    const auto sys = build_generator(harmonic(2.0, 1.5, 0.0), grid);
    REQUIRE(sys.dim() == 8);
    CHECK(sys.generator(0, 1) == Approx(0.5));
    CHECK(sys.generator(1, 0) == Approx(-2.0 * 1.5 * 1.5));
    for (Eigen::Index j = 0; j < 3; ++j) {
        CHECK(sys.generator(0, 2 + 2 * j) == 0.0);
        CHECK(sys.generator(3 + 2 * j, 1) == 0.0);
    }
}

TEST_CASE("generator is Hamiltonian: A J symmetric", "[bath_oracle][property]") {
    const auto spec = CouplingSpec::ohmic(0.7, 8.0);
    for (std::size_t n : {1u, 7u, 32u}) {
        const auto sys = build_generator(harmonic(1.3, 0.9, 0.7),
                                         build_mode_grid(spec, n, GridStrategy::Uniform));
        const Eigen::MatrixXd aj = sys.generator * symplectic_form(sys.dim());
        CHECK((aj - aj.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("generator rejects non-harmonic potentials", "[bath_oracle]") {
    OscillatorParams params = harmonic(1, 1, 0.1);
    params.potential = FreePotential{};
    const auto grid = build_mode_grid(CouplingSpec::ohmic(0.1, 5.0), 4, GridStrategy::Uniform);
    CHECK_THROWS_AS(build_generator(params, grid), NonHarmonicPotential);
}

TEST_CASE("single resonant mode reproduces the two-mode normal frequencies", "[bath_oracle]") {
    const double mass = 1.0, omega = 1.0;
    const auto spec = CouplingSpec::ohmic(0.4, 2.0);
    auto grid = build_mode_grid(spec, 1, GridStrategy::Uniform); // mode at Lambda/2 = omega
    REQUIRE(grid.frequencies[0] == Approx(omega));
    const auto sys = build_generator(harmonic(mass, omega, 0.4), grid);

    Eigen::EigenSolver<Eigen::MatrixXd> es(sys.generator);
    std::vector<double> freqs;
    for (Eigen::Index i = 0; i < 4; ++i) freqs.push_back(std::abs(es.eigenvalues()(i).imag()));
    std::sort(freqs.begin(), freqs.end());

    const auto exact = oracle::coupled_mode_frequencies(mass, omega, omega, grid.couplings[0]);
    CHECK(freqs[0] == Approx(exact.lower).epsilon(1e-10));
    CHECK(freqs[1] == Approx(exact.lower).epsilon(1e-10));
    CHECK(freqs[2] == Approx(exact.upper).epsilon(1e-10));
    CHECK(freqs[3] == Approx(exact.upper).epsilon(1e-10));
    // real parts vanish: purely oscillatory spectrum
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(std::abs(es.eigenvalues()(i).real()) < 1e-12);
}

TEST_CASE("initial states carry the advertised second moments", "[bath_oracle]") {
    const auto grid = build_mode_grid(CouplingSpec::ohmic(0.1, 2.0), 4, GridStrategy::Uniform);

    const auto vac = init_state(harmonic(1, 1, 0.1), grid, 0, BathInitState::vacuum());
    CHECK(vac.mean.cwiseAbs().maxCoeff() == 0.0);
    for (Eigen::Index i = 0; i < vac.cov.rows(); ++i) CHECK(vac.cov(i, i) == Approx(0.5));

    const auto fock = init_state(harmonic(1, 2, 0.1), grid, 2, BathInitState::vacuum());
    CHECK(fock.cov(0, 0) == Approx(1.25));
    CHECK(fock.cov(1, 1) == Approx(5.0));

    // omega_j / T = ln 2 -> occupation 1 -> diag 1.5
    const double wj = grid.frequencies[1];
    const auto thermal =
        init_state(harmonic(1, 1, 0.1), grid, 0, BathInitState::thermal(wj / std::log(2.0)));
    CHECK(thermal.cov(4, 4) == Approx(1.5).epsilon(1e-12));
    CHECK(thermal.cov(5, 5) == Approx(1.5).epsilon(1e-12));

    const auto quanta = init_state(harmonic(1, 1, 0.1), grid, 0, BathInitState::with_quanta({2}));
    CHECK(quanta.cov(6, 6) == 1.5);
    CHECK(quanta.cov(7, 7) == 1.5);
    CHECK(quanta.cov(4, 4) == 0.5);

    CHECK_THROWS_AS(init_state(harmonic(1, 1, 0.1), grid, 0, BathInitState::with_quanta({4})),
                    Error);
    CHECK_THROWS_AS(init_state(harmonic(1, 1, 0.1), grid, -1, BathInitState::vacuum()), Error);
}

TEST_CASE("evolution: identity at t = 0 and closed-system energy constancy", "[bath_oracle]") {
    const auto grid = build_mode_grid(zero_coupling(4.0), 5, GridStrategy::Uniform);
    const auto params = harmonic(1.0, 1.7, 0.0);
    const auto sys = build_generator(params, grid);
    const auto s0 = init_state(params, grid, 3, BathInitState::vacuum());

    const auto same = evolve(sys, s0, 0.0);
    CHECK((same.cov - s0.cov).cwiseAbs().maxCoeff() == 0.0);

    const double e0 = oscillator_energy(s0, params, grid, EnergyForm::Canonical, false);
    CHECK(e0 == Approx(3.5 * 1.7).epsilon(1e-12));
    for (double t : {1.0, 5.0, 20.0}) {
        const auto st = evolve(sys, s0, t);
        CHECK(oscillator_energy(st, params, grid, EnergyForm::Canonical, false) ==
              Approx(e0).epsilon(1e-10));
    }
}

TEST_CASE("propagators stay symplectic over long horizons", "[bath_oracle]") {
    const auto spec = CouplingSpec::ohmic(0.2, 5.0);
    const auto sys =
        build_generator(harmonic(1, 1, 0.2), build_mode_grid(spec, 16, GridStrategy::Uniform));
    for (double t : {0.5, 10.0, 50.0, 100.0})
        CHECK(symplectic_defect(propagator(sys, t)) <= 1e-9);
}

TEST_CASE("uncertainty relation: cov + i J / 2 stays positive semidefinite", "[bath_oracle]") {
    const auto spec = CouplingSpec::ohmic(0.3, 6.0);
    const auto params = harmonic(1, 1, 0.3);
    const auto grid = build_mode_grid(spec, 12, GridStrategy::Uniform);
    const auto sys = build_generator(params, grid);
    const auto s0 = init_state(params, grid, 1, BathInitState::thermal(0.7));

    const Eigen::MatrixXd j = symplectic_form(sys.dim());
    for (double t : {0.0, 3.0, 17.0}) {
        const auto st = evolve(sys, s0, t);
        Eigen::MatrixXcd m = st.cov.cast<std::complex<double>>() +
                             std::complex<double>(0, 0.5) * j.cast<std::complex<double>>();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
        CHECK(es.eigenvalues().minCoeff() >= -1e-9);
    }
}

TEST_CASE("total energy is conserved and additive when decoupled", "[bath_oracle]") {
    const auto params = harmonic(1, 1, 0.3);
    const auto grid = build_mode_grid(CouplingSpec::ohmic(0.3, 10.0), 48, GridStrategy::Uniform);
    const auto sys = build_generator(params, grid);
    const auto s0 = init_state(params, grid, 1, BathInitState::vacuum());
    const double e0 = total_energy(s0, sys);
    for (double t : {1.0, 10.0, 50.0}) {
        const auto st = evolve(sys, s0, t);
        CHECK(total_energy(st, sys) == Approx(e0).epsilon(1e-8));
    }

    const auto dgrid = build_mode_grid(zero_coupling(10.0), 48, GridStrategy::Uniform);
    const auto dsys = build_generator(params, dgrid);
    const auto d0 = init_state(params, dgrid, 2, BathInitState::thermal(1.3));
    CHECK(total_energy(d0, dsys) ==
          Approx(oscillator_energy(d0, params, dgrid, EnergyForm::Canonical, false) +
                 bath_energy(d0, dgrid, true))
              .epsilon(1e-12));
}

TEST_CASE("thermal bath is stationary when decoupled", "[bath_oracle]") {
    const auto params = harmonic(1, 1, 0.0);
    const auto grid = build_mode_grid(zero_coupling(6.0), 8, GridStrategy::Uniform);
    const auto sys = build_generator(params, grid);
    const auto s0 = init_state(params, grid, 0, BathInitState::thermal(2.0));
    const double e0 = bath_energy(s0, grid, true);
    double expected = 0.0;
    for (double w : grid.frequencies) expected += w * bose_occupation(w, 2.0);
    CHECK(e0 == Approx(expected).epsilon(1e-12));
    const auto st = evolve(sys, s0, 7.3);
    CHECK(bath_energy(st, grid, true) == Approx(e0).epsilon(1e-10));
}

TEST_CASE("vacuum bath energy is zero after normal ordering", "[bath_oracle]") {
    const auto grid = build_mode_grid(CouplingSpec::ohmic(0.2, 5.0), 16, GridStrategy::Uniform);
    const auto s0 = init_state(harmonic(1, 1, 0.2), grid, 0, BathInitState::vacuum());
    CHECK(bath_energy(s0, grid, true) == Approx(0.0).margin(1e-14));
}

TEST_CASE("fast energy series agrees with explicit covariance evolution", "[bath_oracle]") {
    const auto params = harmonic(1.0, 1.0, 0.4);
    const auto grid = build_mode_grid(CouplingSpec::ohmic(0.4, 8.0), 16, GridStrategy::Uniform);
    const auto sys = build_generator(params, grid);
    const auto s0 = init_state(params, grid, 1, BathInitState::with_quanta({3, 7}));

    const double dt = 0.7;
    const auto series = energy_time_series(sys, params, s0, dt, 4, true);
    REQUIRE(series.size() == 5);
    for (std::size_t k = 0; k <= 4; ++k) {
        const double t = dt * static_cast<double>(k);
        const auto st = evolve(sys, s0, t);
        const auto ref = evolve(sys, contraction_reference(grid), t);
        CHECK(series[k].osc_canonical ==
              Approx(oscillator_energy(st, params, grid, EnergyForm::Canonical, true, &ref))
                  .margin(1e-10));
        CHECK(series[k].osc_kinetic ==
              Approx(oscillator_energy(st, params, grid, EnergyForm::Kinetic, true, &ref))
                  .margin(1e-10));
        CHECK(series[k].bath == Approx(bath_energy(st, grid, true, &ref)).margin(1e-10));
        CHECK(series[k].total == Approx(total_energy(st, sys)).margin(1e-10));
    }
}

TEST_CASE("weak-damping energy flows from oscillator to reservoir", "[bath_oracle]") {
    // beta/m = 0.1: both ordered oscillator energies start at (n + 1/2) w (the
    // zero-point motion is physical and radiates too). The kinetic form decays
    // as a clean exponential; the canonical form breathes around the same
    // envelope at 2 w_1. The bath gains the complement.
    const double beta = 0.1;
    const auto params = harmonic(1, 1, beta);
    const auto grid = build_mode_grid(CouplingSpec::ohmic(beta, 10.0), 512, GridStrategy::Uniform);
    const auto sys = build_generator(params, grid);
    const auto s0 = init_state(params, grid, 1, BathInitState::vacuum());

    const auto series = energy_time_series(sys, params, s0, 2.5, 12, true); // t up to 30
    CHECK(series[0].osc_canonical == Approx(1.5).epsilon(1e-10));
    CHECK(series[0].osc_kinetic == Approx(1.5).epsilon(1e-10));

    for (const auto& s : series)
        CHECK(s.osc_kinetic == Approx(1.5 * std::exp(-beta * s.t)).epsilon(0.05));

    // canonical rate from a log-linear fit across the breathing
    std::vector<double> ts, log_e;
    for (const auto& s : series) {
        ts.push_back(s.t);
        log_e.push_back(std::log(s.osc_canonical));
    }
    CHECK(-oracle::fit_slope(ts, log_e) == Approx(beta).epsilon(0.20));

    const double decayed = series.back().osc_kinetic;
    CHECK(series.back().bath > 0.9 * (1.5 - decayed));
    // conservation along the same run
    for (const auto& s : series) CHECK(s.total == Approx(series[0].total).epsilon(1e-8));
}

TEST_CASE("recurrence: a small bath revives the oscillator energy", "[bath_oracle]") {
    const double beta = 0.5;
    const auto params = harmonic(1, 1, beta);
    const auto grid = build_mode_grid(CouplingSpec::ohmic(beta, 20.0), 64, GridStrategy::Uniform);
    const auto sys = build_generator(params, grid);
    const auto s0 = init_state(params, grid, 1, BathInitState::vacuum());
    const double horizon = grid.recurrence_horizon(); // 2 pi / dw = 2 pi 64 / 20
    CHECK(horizon == Approx(2.0 * M_PI * 64.0 / 20.0).epsilon(1e-12));

    const auto series = energy_time_series(sys, params, s0, horizon / 16.0, 20, true);
    double e_min = 1e300, e_late = 0.0;
    for (const auto& s : series)
        if (s.t < 0.8 * horizon) e_min = std::min(e_min, s.osc_canonical);
    for (const auto& s : series)
        if (s.t >= 0.8 * horizon) e_late = std::max(e_late, s.osc_canonical);
    CHECK(e_late > 3.0 * e_min);
}

TEST_CASE("the reservoir asymptotically absorbs (n + 1/2) omega", "[bath_oracle][slow][.]") {
    const double beta = 0.1;
    const auto params = harmonic(1, 1, beta);
    const auto grid = build_mode_grid(CouplingSpec::ohmic(beta, 10.0), 1024, GridStrategy::Uniform);
    const auto sys = build_generator(params, grid);
    const auto s0 = init_state(params, grid, 1, BathInitState::vacuum());
    const auto series = energy_time_series(sys, params, s0, 15.0, 10, true); // t = 150 = 15 m/beta
    CHECK(series.back().bath == Approx(1.5).epsilon(0.05));
    CHECK(std::abs(series.back().osc_kinetic) < 0.01 * 1.5);
}

TEST_CASE("oracle mean path matches the closed form in the continuum limit",
          "[bath_oracle][slow][.]") {
    // the finite cutoff shifts the oscillation frequency by ~ beta w / (pi Lambda),
    // which drifts the phase by ~ (beta t / pi Lambda) e^{-beta t/2m}; keeping the
    // sup-norm gap under 1e-3 out to t = 20 needs beta t / (pi Lambda) << 1e-3
    const double beta = 0.002;
    const auto params = harmonic(1, 1, beta);
    const auto spec = CouplingSpec::ohmic(beta, 20.0);
    const auto grid = build_mode_grid(spec, 2048, GridStrategy::Uniform);
    const auto sys = build_generator(params, grid);

    const double dt = 0.1;
    const std::size_t steps = 200; // t <= 20, far inside the recurrence horizon
    const auto oracle_traj = oracle_mean_trajectory(sys, 1.0, 0.0, dt, steps);
    const auto exact = mean_trajectory_ho(params, 1.0, 0.0, oracle_traj.times);
    double sup = 0.0;
    for (std::size_t i = 0; i < oracle_traj.times.size(); ++i)
        sup = std::max(sup, std::abs(oracle_traj.q_mean[i] - exact.q_mean[i]));
    CHECK(sup <= 1e-3);
}
