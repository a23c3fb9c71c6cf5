// dynamics.hpp — mean-path dynamics of the damped oscillator: the closed-form
// underdamped solution and a Volterra integro-differential solver for the memory
// kernel equation  m qddot + int_0^t gamma(t-t') qdot(t') dt' = -dv/dq.
//
// Only expectation values are propagated here: the noise term has zero mean in any
// reservoir eigenstate, and for nonlinear potentials <v'(q)> is replaced by
// v'(<q>), so the Volterra output is a semiclassical mean path. Fluctuations are
// handled exactly by the discretized-bath oracle.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <ostream>
#include <variant>
#include <vector>

#include "qdamp/coupling.hpp"
#include "qdamp/csv.hpp"
#include "qdamp/errors.hpp"

namespace qdamp {

struct HarmonicPotential {};
struct FreePotential {};
struct CustomPotential {
    std::function<double(double)> dv_dq; // v'(q)
};

struct OscillatorParams {
    double mass = 1.0;
    double frequency = 1.0; // omega
    double friction = 0.0;  // beta
    std::variant<HarmonicPotential, FreePotential, CustomPotential> potential = HarmonicPotential{};

    bool is_harmonic() const { return std::holds_alternative<HarmonicPotential>(potential); }

    double dv_dq(double q) const {
        if (std::holds_alternative<HarmonicPotential>(potential))
            return mass * frequency * frequency * q;
        if (std::holds_alternative<FreePotential>(potential)) return 0.0;
        return std::get<CustomPotential>(potential).dv_dq(q);
    }

    void validate() const {
        if (!(mass > 0.0)) throw Error("oscillator mass must be positive");
        if (!(frequency > 0.0)) throw Error("oscillator frequency must be positive");
        if (friction < 0.0) throw Error("friction coefficient must be non-negative");
    }
};

// Shifted frequency omega_1 = sqrt(omega^2 - beta^2 / 4 m^2) of the underdamped
// solution. The overdamped case beta >= 2 m omega is rejected: only the
// oscillatory regime has a closed form here.
inline double omega1(const OscillatorParams& p) {
    p.validate();
    if (p.friction >= 2.0 * p.mass * p.frequency)
        throw OverdampedRegime("beta >= 2 m omega: no underdamped closed form");
    const double half_rate = p.friction / (2.0 * p.mass);
    return std::sqrt(p.frequency * p.frequency - half_rate * half_rate);
}

enum class TrajectoryMethod { ClosedForm, Volterra };

struct Trajectory {
    std::vector<double> times;
    std::vector<double> q_mean;
    std::vector<double> p_mean; // m * <qdot> (mean reservoir contribution vanishes)
    TrajectoryMethod method = TrajectoryMethod::ClosedForm;

    double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
};

inline std::vector<double> uniform_grid(double t_max, double dt) {
    if (!(dt > 0.0) || !(t_max >= 0.0)) throw Error("grid requires dt > 0 and t_max >= 0");
    const auto n = static_cast<std::size_t>(std::llround(t_max / dt));
    std::vector<double> t(n + 1);
    for (std::size_t k = 0; k <= n; ++k) t[k] = static_cast<double>(k) * dt;
    return t;
}

// Closed-form mean path of the damped harmonic oscillator with the reservoir in
// vacuum (so <R(0)> = <M(0)> = <M(t)> = 0):
//   <q(t)> = e^{-beta t / 2m} [ q0 cos(w1 t) + (p0/m + beta q0 / 2m) sin(w1 t)/w1 ]
// and <p(t)> = m d<q>/dt.
inline Trajectory mean_trajectory_ho(const OscillatorParams& params, double q0, double p0,
                                     const std::vector<double>& times) {
    if (!params.is_harmonic()) throw Error("mean_trajectory_ho requires the harmonic potential");
    const double w1 = omega1(params);
    const double m = params.mass;
    const double half_rate = params.friction / (2.0 * m);
    const double c = (p0 / m + half_rate * q0) / w1;

    Trajectory traj;
    traj.method = TrajectoryMethod::ClosedForm;
    traj.times = times;
    traj.q_mean.reserve(times.size());
    traj.p_mean.reserve(times.size());
    for (double t : times) {
        const double env = std::exp(-half_rate * t);
        const double cosw = std::cos(w1 * t), sinw = std::sin(w1 * t);
        const double q = env * (q0 * cosw + c * sinw);
        const double qdot = env * ((c * w1 - half_rate * q0) * cosw - (q0 * w1 + half_rate * c) * sinw);
        traj.q_mean.push_back(q);
        traj.p_mean.push_back(m * qdot);
    }
    return traj;
}

// Volterra solver: trapezoidal memory convolution with half weight at the t'=t
// endpoint (so a delta-kernel table reproduces beta*qdot exactly) and a
// trapezoidal step in time; globally second order.
inline Trajectory solve_mean_path(const OscillatorParams& params, const MemoryKernelTable& kernel,
                                  double q0, double p0, const std::vector<double>& times) {
    params.validate();
    if (times.size() < 2) throw Error("solve_mean_path needs at least two time points");
    const double dt = times[1] - times[0];
    for (std::size_t i = 1; i < times.size(); ++i)
        if (std::abs(times[i] - times[i - 1] - dt) > 1e-9 * std::max(dt, 1.0))
            throw GridMismatch("solve_mean_path requires a uniform time grid");
    if (kernel.times.size() < times.size())
        throw GridMismatch("memory kernel table does not cover the requested horizon");
    if (std::abs(kernel.dt() - dt) > 1e-9 * dt)
        throw GridMismatch("memory kernel table step differs from trajectory step");

    const std::size_t n = times.size();
    const double m = params.mass;
    const auto& g = kernel.values;

    std::vector<double> q(n), v(n);
    q[0] = q0;
    v[0] = p0 / m;

    const double horizon = times.back();
    const double blow_up =
        1e6 * std::max({std::abs(q0), std::abs(p0 / m) * horizon,
                        std::abs(params.dv_dq(q0)) / m * horizon * horizon, 1e-9});

    // convolution excluding the endpoint term (dt/2) g[0] v[k]
    auto partial_conv = [&](std::size_t k) {
        double acc = 0.0;
        for (std::size_t j = 1; j < k; ++j) acc += g[k - j] * v[j];
        acc *= dt;
        if (k >= 1) acc += 0.5 * dt * g[k] * v[0];
        return acc;
    };

    const bool linear = !std::holds_alternative<CustomPotential>(params.potential);
    const double endpoint = 0.5 * dt * g[0]; // coefficient of v[k] inside the convolution

    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double conv_k = partial_conv(k) + endpoint * v[k];
        const double f_k = -params.dv_dq(q[k]) - conv_k;
        const double c_next = partial_conv(k + 1);

        if (linear) {
            // q' = q + (dt/2)(v[k] + v'), v' = v + (dt/2m)(f_k - dv(q') - c_next - endpoint v')
            const double w2 = params.is_harmonic() ? params.frequency * params.frequency : 0.0;
            const double a = q[k] + 0.5 * dt * v[k];
            const double b = v[k] + 0.5 * dt / m * (f_k - c_next);
            const double denom = 1.0 + 0.5 * dt / m * (endpoint + 0.5 * dt * m * w2);
            const double v_next = (b - 0.5 * dt * w2 * a) / denom;
            v[k + 1] = v_next;
            q[k + 1] = a + 0.5 * dt * v_next;
        } else {
            double q_next = q[k] + dt * v[k];
            double v_next = v[k];
            for (int it = 0; it < 8; ++it) {
                const double f_next = -params.dv_dq(q_next) - (c_next + endpoint * v_next);
                const double v_new = v[k] + 0.5 * dt / m * (f_k + f_next);
                const double q_new = q[k] + 0.5 * dt * (v[k] + v_new);
                const double delta = std::abs(v_new - v_next) + std::abs(q_new - q_next);
                v_next = v_new;
                q_next = q_new;
                if (delta < 1e-14 * (1.0 + std::abs(v_next) + std::abs(q_next))) break;
            }
            v[k + 1] = v_next;
            q[k + 1] = q_next;
        }

        if (!std::isfinite(q[k + 1]) || std::abs(q[k + 1]) > blow_up)
            throw StepTooLarge("mean-path solution exceeded 1e6 x initial scale; reduce dt");
    }

    Trajectory traj;
    traj.method = TrajectoryMethod::Volterra;
    traj.times = times;
    traj.q_mean = std::move(q);
    traj.p_mean.resize(n);
    for (std::size_t i = 0; i < n; ++i) traj.p_mean[i] = m * v[i];
    return traj;
}

inline void write_csv(const Trajectory& traj, std::ostream& out) {
    csv::Writer w(out, "t,q,p");
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        w.row({traj.times[i], traj.q_mean[i], traj.p_mean[i]});
}

} // namespace qdamp
