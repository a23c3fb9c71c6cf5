// quadrature.hpp — adaptive Gauss-Kronrod integration with oscillatory panel splitting
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "qdamp/errors.hpp"

namespace qdamp::quad {

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_depth = 60;
};

namespace detail {

// Gauss-Kronrod 15(7) nodes and weights on [0,1] (positive half, symmetric rule).
inline constexpr double kron_nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kron_weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
// Gauss-7 weights matching nodes 1, 3, 5, 7 above.
inline constexpr double gauss_weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <typename F>
inline void gk15(const F& f, double a, double b, double& kronrod, double& gauss) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    kronrod = 0.0;
    gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double x = h * kron_nodes[i];
        const double fv = (i == 7) ? f(c) : f(c - x) + f(c + x);
        kronrod += kron_weights[i] * fv;
        if (i % 2 == 1) gauss += gauss_weights[i / 2] * fv;
    }
    kronrod *= h;
    gauss *= h;
}

template <typename F>
inline double adapt(const F& f, double a, double b, double abs_tol, double rel_tol,
                    int depth, int max_depth, double& err_acc) {
    double k, g;
    gk15(f, a, b, k, g);
    const double err = std::abs(k - g);
    if (err <= std::max(abs_tol, rel_tol * std::abs(k)) || depth >= max_depth) {
        err_acc += err;
        return k;
    }
    const double c = 0.5 * (a + b);
    return adapt(f, a, c, 0.5 * abs_tol, rel_tol, depth + 1, max_depth, err_acc) +
           adapt(f, c, b, 0.5 * abs_tol, rel_tol, depth + 1, max_depth, err_acc);
}

} // namespace detail

// Adaptive integral of f over [a, b]. Throws QuadratureNonConvergence when the
// accumulated error estimate exceeds the requested tolerance.
template <typename F>
inline double integrate(const F& f, double a, double b, const Options& opt = {}) {
    if (a == b) return 0.0;
    double err = 0.0;
    const double value = detail::adapt(f, a, b, opt.abs_tol, opt.rel_tol, 0, opt.max_depth, err);
    if (err > 10.0 * std::max(opt.abs_tol, opt.rel_tol * std::abs(value)))
        throw QuadratureNonConvergence("quadrature error estimate " + std::to_string(err) +
                                       " above tolerance on [" + std::to_string(a) + ", " +
                                       std::to_string(b) + "]");
    return value;
}

// Integral over [a, b] with mandatory splits at the given interior breakpoints
// (sorted ascending; entries outside (a, b) are ignored).
template <typename F>
inline double integrate_split(const F& f, double a, double b,
                              const std::vector<double>& breakpoints, const Options& opt = {}) {
    double total = 0.0, err = 0.0;
    double lo = a;
    const double span = b - a;
    for (double x : breakpoints) {
        if (x <= lo || x >= b) continue;
        const double panel_tol = opt.abs_tol * std::max((x - lo) / span, 1e-3);
        total += detail::adapt(f, lo, x, panel_tol, opt.rel_tol, 0, opt.max_depth, err);
        lo = x;
    }
    const double panel_tol = opt.abs_tol * std::max((b - lo) / span, 1e-3);
    total += detail::adapt(f, lo, b, panel_tol, opt.rel_tol, 0, opt.max_depth, err);
    if (err > 10.0 * std::max(opt.abs_tol, opt.rel_tol * std::abs(total)))
        throw QuadratureNonConvergence("split quadrature error estimate above tolerance");
    return total;
}

// Breakpoints at half-periods of cos/sin(angular_freq * x) inside [a, b];
// integrands oscillating at that frequency become smooth on each panel.
inline std::vector<double> half_period_breakpoints(double a, double b, double angular_freq) {
    std::vector<double> pts;
    const double w = std::abs(angular_freq);
    if (w * (b - a) <= 2.0 * M_PI) return pts;
    const double step = M_PI / w;
    const std::size_t count = static_cast<std::size_t>((b - a) / step);
    if (count > 2'000'000)
        throw QuadratureNonConvergence("oscillatory integral requires too many panels");
    pts.reserve(count);
    for (std::size_t k = 1; k <= count; ++k) pts.push_back(a + static_cast<double>(k) * step);
    return pts;
}

// Integral of an integrand oscillating like cos/sin(angular_freq * x) over [a, b].
template <typename F>
inline double integrate_oscillatory(const F& f, double a, double b, double angular_freq,
                                    const Options& opt = {}) {
    return integrate_split(f, a, b, half_period_breakpoints(a, b, angular_freq), opt);
}

} // namespace qdamp::quad
