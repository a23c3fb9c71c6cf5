// coupling.hpp — reservoir coupling functions f(omega), the induced memory kernel
// gamma(t) and the noise autocorrelation of the minimal-coupling model.
//
// Units: hbar = c = k_B = 1 throughout. The continuum frequency integrals carry a
// hard cutoff Lambda; physical results are expected to be Lambda-stable and the
// test suite checks that stability. gamma(0) and the vacuum <R^2> grow with the
// cutoff (linearly and logarithmically); they are reported as-is, not renormalized.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <ostream>
#include <utility>
#include <variant>
#include <vector>

#include "qdamp/csv.hpp"
#include "qdamp/errors.hpp"
#include "qdamp/quadrature.hpp"

namespace qdamp {

// f(omega) = sqrt(beta / (4 pi^2 omega^3)); makes the kernel a delta function and
// the friction force exactly -beta * qdot in the infinite-cutoff limit.
struct OhmicCoupling {
    double beta;
};

// Piecewise-linear f(omega) between samples; zero outside the sampled range.
struct TabulatedCoupling {
    std::vector<std::pair<double, double>> samples; // (frequency, value), strictly increasing
};

struct CouplingSpec {
    std::variant<OhmicCoupling, TabulatedCoupling> kind;
    double cutoff; // hard upper integration limit Lambda

    static CouplingSpec ohmic(double beta, double cutoff) {
        if (!(beta > 0.0)) throw Error("Ohmic coupling requires beta > 0");
        if (!(cutoff > 0.0)) throw Error("coupling cutoff must be positive");
        return {OhmicCoupling{beta}, cutoff};
    }

    static CouplingSpec tabulated(std::vector<std::pair<double, double>> samples, double cutoff) {
        if (!(cutoff > 0.0)) throw Error("coupling cutoff must be positive");
        if (samples.empty()) throw TabulatedOutOfRange("tabulated coupling needs at least one sample");
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (!std::isfinite(samples[i].first) || !std::isfinite(samples[i].second))
                throw Error("tabulated coupling samples must be finite");
            if (i > 0 && !(samples[i].first > samples[i - 1].first))
                throw Error("tabulated coupling frequencies must be strictly increasing");
        }
        if (samples.front().first > cutoff)
            throw TabulatedOutOfRange("all tabulated samples lie above the cutoff");
        return {TabulatedCoupling{std::move(samples)}, cutoff};
    }

    bool is_ohmic() const { return std::holds_alternative<OhmicCoupling>(kind); }
    double ohmic_beta() const { return std::get<OhmicCoupling>(kind).beta; }
};

namespace detail {

inline double coupling_value(const CouplingSpec& spec, double omega) {
    if (const auto* ohmic = std::get_if<OhmicCoupling>(&spec.kind))
        return std::sqrt(ohmic->beta / (4.0 * M_PI * M_PI * omega * omega * omega));
    const auto& s = std::get<TabulatedCoupling>(spec.kind).samples;
    if (omega < s.front().first || omega > s.back().first) return 0.0;
    auto hi = std::lower_bound(s.begin(), s.end(), omega,
                               [](const auto& p, double w) { return p.first < w; });
    if (hi == s.begin()) return hi->second;
    auto lo = hi - 1;
    if (hi == s.end()) return lo->second;
    const double u = (omega - lo->first) / (hi->first - lo->first);
    return (1.0 - u) * lo->second + u * hi->second;
}

// Interior sample frequencies of a tabulated coupling; mandatory quadrature splits
// so the piecewise-linear kinks never sit inside a panel.
inline std::vector<double> kink_breakpoints(const CouplingSpec& spec) {
    std::vector<double> pts;
    if (const auto* tab = std::get_if<TabulatedCoupling>(&spec.kind))
        for (const auto& [w, v] : tab->samples)
            if (w > 0.0 && w < spec.cutoff) pts.push_back(w);
    return pts;
}

template <typename F>
inline double integrate_coupling(const CouplingSpec& spec, const F& integrand,
                                 double oscillation_freq, const quad::Options& opt) {
    auto pts = quad::half_period_breakpoints(0.0, spec.cutoff, oscillation_freq);
    auto kinks = detail::kink_breakpoints(spec);
    if (!kinks.empty()) {
        pts.insert(pts.end(), kinks.begin(), kinks.end());
        std::sort(pts.begin(), pts.end());
    }
    return quad::integrate_split(integrand, 0.0, spec.cutoff, pts, opt);
}

} // namespace detail

// f(omega) for 0 < omega <= cutoff.
inline double evaluate_coupling(const CouplingSpec& spec, double omega) {
    if (!(omega > 0.0)) throw NonPositiveFrequency("coupling frequency must be positive");
    if (omega > spec.cutoff) throw AboveCutoff("frequency above coupling cutoff");
    return detail::coupling_value(spec, omega);
}

// Density of the kernel's cosine transform: gamma(t) = int_0^Lambda k(w) cos(wt) dw.
inline double kernel_spectral_density(const CouplingSpec& spec, double omega) {
    const double f = evaluate_coupling(spec, omega);
    return 8.0 * M_PI * f * f * omega * omega * omega;
}

// Density of Re<xi(t)xi(0)> at T=0; equals (omega/2) * kernel_spectral_density.
inline double noise_spectral_density(const CouplingSpec& spec, double omega) {
    const double f = evaluate_coupling(spec, omega);
    return 4.0 * M_PI * f * f * omega * omega * omega * omega;
}

// gamma(t) = 8 pi int_0^Lambda |f(w)|^2 w^3 cos(wt) dw. Even in t by construction;
// for Ohmic coupling this equals (2 beta / pi) sin(Lambda t) / t.
inline double memory_kernel(const CouplingSpec& spec, double t, const quad::Options& opt = {}) {
    auto integrand = [&](double w) {
        const double f = detail::coupling_value(spec, w);
        return 8.0 * M_PI * f * f * w * w * w * std::cos(w * t);
    };
    return detail::integrate_coupling(spec, integrand, t, opt);
}

// int_0^{t_max} gamma(t) dt, evaluated with the t-integral taken analytically:
// 8 pi int_0^Lambda |f(w)|^2 w^2 sin(w t_max) dw. For Ohmic coupling this tends
// to beta (Dirichlet integral) once Lambda * t_max >> 1.
struct KernelIntegral {
    double value;
    bool short_horizon; // t_max * cutoff < 10: result not yet in the plateau regime
};

inline KernelIntegral kernel_integral(const CouplingSpec& spec, double t_max,
                                      const quad::Options& opt = {}) {
    if (!(t_max >= 0.0)) throw Error("kernel_integral requires t_max >= 0");
    auto integrand = [&](double w) {
        const double f = detail::coupling_value(spec, w);
        return 8.0 * M_PI * f * f * w * w * std::sin(w * t_max);
    };
    const double value = detail::integrate_coupling(spec, integrand, t_max, opt);
    return {value, t_max * spec.cutoff < 10.0};
}

// Bose occupation with safe limits at T = 0 and omega/T large.
inline double bose_occupation(double omega, double temperature) {
    if (temperature <= 0.0) return 0.0;
    const double x = omega / temperature;
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

// <xi(t) xi(0)> = 4 pi int_0^Lambda w^4 |f|^2 [ (nbar+1) e^{-iwt} + nbar e^{iwt} ] dw
//              = int_0^Lambda w^4 |f|^2 4 pi [ (2 nbar + 1) cos(wt) - i sin(wt) ] dw.
// The mean of xi itself vanishes in every reservoir eigenstate.
inline std::complex<double> noise_correlation(const CouplingSpec& spec, double temperature,
                                              double t, const quad::Options& opt = {}) {
    if (temperature < 0.0) throw Error("noise_correlation requires temperature >= 0");
    auto weight = [&](double w) {
        const double f = detail::coupling_value(spec, w);
        return 4.0 * M_PI * f * f * w * w * w * w;
    };
    auto re = [&](double w) {
        return weight(w) * (2.0 * bose_occupation(w, temperature) + 1.0) * std::cos(w * t);
    };
    auto im = [&](double w) { return -weight(w) * std::sin(w * t); };
    return {detail::integrate_coupling(spec, re, t, opt),
            detail::integrate_coupling(spec, im, t, opt)};
}

// Uniform tabulation of gamma(t) on t = 0, dt, ..., tmax.
struct MemoryKernelTable {
    std::vector<double> times;  // t >= 0, uniform grid
    std::vector<double> values; // gamma(t) samples
    double cutoff_used = 0.0;

    double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
    double t_max() const { return times.empty() ? 0.0 : times.back(); }
};

inline MemoryKernelTable tabulate_kernel(const CouplingSpec& spec, double dt, double t_max,
                                         const quad::Options& opt = {}) {
    if (!(dt > 0.0) || !(t_max >= 0.0)) throw Error("tabulate_kernel requires dt > 0, t_max >= 0");
    MemoryKernelTable table;
    table.cutoff_used = spec.cutoff;
    const auto n = static_cast<std::size_t>(std::llround(t_max / dt));
    table.times.reserve(n + 1);
    table.values.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = static_cast<double>(k) * dt;
        table.times.push_back(t);
        table.values.push_back(memory_kernel(spec, t, opt));
    }
    return table;
}

// Discrete stand-in for gamma(t) = 2 beta delta(t): all weight in the t=0 sample,
// which the half-weight convolution endpoint turns into exactly beta * qdot.
inline MemoryKernelTable delta_kernel_table(double beta, double dt, double t_max) {
    if (!(dt > 0.0)) throw Error("delta_kernel_table requires dt > 0");
    MemoryKernelTable table;
    table.cutoff_used = std::numeric_limits<double>::infinity();
    const auto n = static_cast<std::size_t>(std::llround(t_max / dt));
    for (std::size_t k = 0; k <= n; ++k) {
        table.times.push_back(static_cast<double>(k) * dt);
        table.values.push_back(k == 0 ? 2.0 * beta / dt : 0.0);
    }
    return table;
}

inline void write_csv(const MemoryKernelTable& table, std::ostream& out) {
    csv::Writer w(out, "t,gamma");
    for (std::size_t i = 0; i < table.times.size(); ++i) w.row({table.times[i], table.values[i]});
}

} // namespace qdamp
