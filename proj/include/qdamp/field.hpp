// field.hpp — the reservoir as a Klein-Gordon field: radial source profiles
// P(r), Q(r) driving the field through 2 qdot P + 2 qddot Q, the cutoff-
// regularized equal-time commutator, and the mode-representation identity
// between sum w b^dag b and the field energy 1/2 Pi^2 + 1/2 |grad Y|^2.
//
// All profiles are radial: isotropic couplings make every angular integral
// analytic (sinc weights), so full 3D fields are never stored. The overall
// normalization of P fixes the (2 pi)^3 placement so that the Ohmic closed form
// P(r) = sqrt(beta)/(2 pi sqrt(pi)) (1 - cos(Lambda r))/r^2 holds.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <vector>

#include "qdamp/bath_oracle.hpp"
#include "qdamp/coupling.hpp"
#include "qdamp/csv.hpp"
#include "qdamp/dynamics.hpp"
#include "qdamp/errors.hpp"
#include "qdamp/quadrature.hpp"

namespace qdamp {

struct FieldSource {
    std::vector<double> r;        // radial grid, r >= 0
    std::vector<double> p_values; // P(r), drives via 2 qdot P
    std::vector<double> q_values; // Q(r), drives via 2 qddot Q; identically 0 for real f
    double cutoff = 0.0;
};

namespace detail {

inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

} // namespace detail

// P(r) = (1/sqrt(pi)) int_0^Lambda w^{5/2} f(w) sinc(w r) dw  (real part),
// Q(r) = (1/sqrt(pi)) Im int_0^Lambda w^{3/2} f(w) sinc(w r) dw.
// The coupling functions here are real-valued, so the Q integrand vanishes
// identically and Q(r) = 0 exactly.
inline FieldSource source_profiles(const CouplingSpec& spec, const std::vector<double>& r_grid,
                                   const quad::Options& opt = {}) {
    FieldSource source;
    source.cutoff = spec.cutoff;
    source.r = r_grid;
    source.p_values.reserve(r_grid.size());
    source.q_values.reserve(r_grid.size());
    const double norm = 1.0 / std::sqrt(M_PI);
    for (double r : r_grid) {
        if (r < 0.0) throw Error("source profile radius must be >= 0");
        auto p_integrand = [&](double w) {
            return std::pow(w, 2.5) * detail::coupling_value(spec, w) * detail::sinc(w * r);
        };
        auto q_integrand = [&](double) { return 0.0; }; // Im of a real integrand
        source.p_values.push_back(norm *
                                  quad::integrate_oscillatory(p_integrand, 0.0, spec.cutoff, r, opt));
        source.q_values.push_back(norm *
                                  quad::integrate_oscillatory(q_integrand, 0.0, spec.cutoff, r, opt));
    }
    return source;
}

// Radial profile of [Y(x,t), Pi_Y(x',t)]/i at separation s = |x - x'|: the
// cutoff-regularized delta function (1/2 pi^2) int_0^Lambda w^2 sinc(w s) dw.
// Peak height Lambda^3 / 6 pi^2 at s = 0.
inline double commutator_kernel(double cutoff, double separation, const quad::Options& opt = {}) {
    if (!(cutoff > 0.0)) throw Error("commutator kernel requires a positive cutoff");
    if (separation < 0.0) throw Error("separation must be >= 0");
    auto integrand = [&](double w) { return w * w * detail::sinc(w * separation); };
    return quad::integrate_oscillatory(integrand, 0.0, cutoff, separation, opt) /
           (2.0 * M_PI * M_PI);
}

// Mode-sum representation of the same kernel on a discretized reservoir.
inline double commutator_kernel(const ModeGrid& grid, double separation) {
    if (separation < 0.0) throw Error("separation must be >= 0");
    double acc = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double w = grid.frequencies[j];
        acc += w * w * detail::sinc(w * separation) * grid.weights[j];
    }
    return acc / (2.0 * M_PI * M_PI);
}

// Integral of the commutator kernel over all space. The radial cumulative
// integral oscillates with constant amplitude forever (the integrand envelope
// grows like s^-1 times a cutoff-frequency cosine), so the delta normalization
// is taken as the average over the trailing oscillation period; midpoint
// sampling of one exact period knocks out the periodic part.
inline double commutator_normalization(double cutoff, const quad::Options& opt = {}) {
    if (!(cutoff > 0.0)) throw Error("commutator normalization requires a positive cutoff");
    auto shell = [&](double s) {
        return 4.0 * M_PI * s * s * commutator_kernel(cutoff, s, opt);
    };
    const double s_base = 2000.0 / cutoff;
    const double period = 2.0 * M_PI / cutoff;
    double cumulative = quad::integrate_oscillatory(shell, 0.0, s_base, cutoff, opt);

    constexpr int n_avg = 32;
    double acc = 0.0;
    double lo = s_base;
    for (int i = 0; i < n_avg; ++i) {
        const double mid = s_base + (i + 0.5) * period / n_avg;
        cumulative += quad::integrate(shell, lo, mid, opt);
        acc += cumulative;
        lo = mid;
    }
    return acc / n_avg;
}

// Both sides of H_B = 1/2 Pi^2 + 1/2 |grad Y|^2 on the discrete mode set, with
// matched normal ordering: lhs from occupation numbers, rhs from the field
// quadratic forms (momentum part from Pi, gradient part from Y).
struct EnergyIdentity {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

inline EnergyIdentity bath_energy_identity(const ModeGrid& grid, const CovarianceState& state) {
    const auto n_modes = static_cast<Eigen::Index>(grid.size());
    if (state.mean.size() != 2 * (n_modes + 1))
        throw GridMismatch("state dimension does not match the mode grid");

    EnergyIdentity id;
    double pi_part = 0.0, grad_part = 0.0, zero_point = 0.0;
    for (Eigen::Index j = 0; j < n_modes; ++j) {
        const double w = grid.frequencies[static_cast<std::size_t>(j)];
        const Eigen::Index xj = 2 + 2 * j, pj = 3 + 2 * j;
        const double x2 = state.cov(xj, xj) + state.mean(xj) * state.mean(xj);
        const double p2 = state.cov(pj, pj) + state.mean(pj) * state.mean(pj);
        id.lhs += w * 0.5 * (x2 + p2 - 1.0); // w <b^dag b>
        pi_part += 0.5 * w * p2;
        grad_part += 0.5 * w * x2;
        zero_point += 0.5 * w;
    }
    id.rhs = pi_part + grad_part - zero_point;
    id.residual = std::abs(id.lhs - id.rhs);
    return id;
}

// Klein-Gordon source 2 qddot(t) Q(r) + 2 qdot(t) P(r) evaluated from a
// trajectory's finite-difference derivatives and the sampled profiles.
inline double kg_source_term(const Trajectory& traj, const FieldSource& source, double r,
                             double t) {
    if (traj.times.size() < 4) throw Error("kg_source_term needs at least four trajectory points");
    if (t < traj.times.front() || t > traj.times.back())
        throw OutOfRange("time outside the trajectory range");
    if (source.r.empty() || r < source.r.front() || r > source.r.back())
        throw OutOfRange("radius outside the sampled source profile");

    const double dt = traj.dt();
    const std::size_t last = traj.times.size() - 1;
    auto clamp_idx = [&](double x) {
        auto k = static_cast<std::size_t>(std::llround((x - traj.times.front()) / dt));
        return std::min(k, last);
    };
    const std::size_t k = clamp_idx(t);
    const auto& q = traj.q_mean;

    auto qdot_at = [&](std::size_t i) {
        if (i == 0) return (-3.0 * q[0] + 4.0 * q[1] - q[2]) / (2.0 * dt);
        if (i == last) return (3.0 * q[last] - 4.0 * q[last - 1] + q[last - 2]) / (2.0 * dt);
        return (q[i + 1] - q[i - 1]) / (2.0 * dt);
    };
    auto qddot_at = [&](std::size_t i) {
        if (i == 0) return (2.0 * q[0] - 5.0 * q[1] + 4.0 * q[2] - q[3]) / (dt * dt);
        if (i == last)
            return (2.0 * q[last] - 5.0 * q[last - 1] + 4.0 * q[last - 2] - q[last - 3]) / (dt * dt);
        return (q[i + 1] - 2.0 * q[i] + q[i - 1]) / (dt * dt);
    };

    // linear interpolation of the derivative samples between grid times
    double qdot, qddot;
    const double tk = traj.times[k];
    if (std::abs(t - tk) < 1e-12 * std::max(1.0, std::abs(t)) || k == last) {
        qdot = qdot_at(k);
        qddot = qddot_at(k);
    } else {
        const std::size_t k0 = t >= tk ? k : k - 1;
        const double u = (t - traj.times[k0]) / dt;
        qdot = (1.0 - u) * qdot_at(k0) + u * qdot_at(k0 + 1);
        qddot = (1.0 - u) * qddot_at(k0) + u * qddot_at(k0 + 1);
    }

    auto interp_profile = [&](const std::vector<double>& vals) {
        auto hi = std::lower_bound(source.r.begin(), source.r.end(), r);
        if (hi == source.r.begin()) return vals.front();
        const auto i_hi = static_cast<std::size_t>(hi - source.r.begin());
        if (i_hi >= source.r.size()) return vals.back();
        const double u = (r - source.r[i_hi - 1]) / (source.r[i_hi] - source.r[i_hi - 1]);
        return (1.0 - u) * vals[i_hi - 1] + u * vals[i_hi];
    };

    return 2.0 * qddot * interp_profile(source.q_values) + 2.0 * qdot * interp_profile(source.p_values);
}

inline void write_csv(const FieldSource& source, std::ostream& out) {
    csv::Writer w(out, "r,P,Q");
    for (std::size_t i = 0; i < source.r.size(); ++i)
        w.row({source.r[i], source.p_values[i], source.q_values[i]});
}

} // namespace qdamp
