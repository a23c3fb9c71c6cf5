// oracles.hpp — independent reference computations used only by the tests.
// Nothing here touches the quadrature or evolution paths under test.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

// Sine integral Si(x) = int_0^x sin(u)/u du. Power series below x = 20,
// asymptotic auxiliary expansion above; ~1e-9 absolute either way.
inline double sine_integral(double x) {
    const double ax = std::abs(x);
    double si;
    if (ax <= 20.0) {
        // sin-series terms u_k = (-1)^k x^{2k+1}/(2k+1)!; Si adds u_k/(2k+1)
        double u = ax, sum = ax;
        for (int k = 1; k < 60; ++k) {
            u *= -ax * ax / (2.0 * k * (2.0 * k + 1.0));
            sum += u / (2.0 * k + 1.0);
            if (std::abs(u) < 1e-18 * std::abs(sum)) break;
        }
        si = sum;
    } else {
        // Si(x) = pi/2 - f(x) cos(x) - g(x) sin(x)
        double f = 0.0, g = 0.0, term_f = 1.0 / ax, term_g = 1.0 / (ax * ax);
        for (int k = 0; k < 9; ++k) {
            f += term_f;
            g += term_g;
            term_f *= -(2.0 * k + 1.0) * (2.0 * k + 2.0) / (ax * ax);
            term_g *= -(2.0 * k + 2.0) * (2.0 * k + 3.0) / (ax * ax);
        }
        si = M_PI / 2.0 - f * std::cos(ax) - g * std::sin(ax);
    }
    return x < 0.0 ? -si : si;
}

// Composite Simpson rule with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t n) {
    if (n % 2 != 0) throw std::invalid_argument("simpson needs an even interval count");
    const double h = (b - a) / static_cast<double>(n);
    double acc = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i) acc += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// Normal-mode frequencies of the one-mode system
//   H = (p - sqrt(2) g x)^2 / 2m + m w^2 q^2 / 2 + w1 (x^2 + p_x^2) / 2 ... derived by
// eliminating p and p_x: the pair (q, p_x) obeys d^2/dt^2 (q, p_x) = -M (q, p_x) with
//   M = [[w^2, a w1], [sqrt(2) g w^2, c w1]],  a = sqrt(2) g / m,  c = 2 g^2 / m + w1,
// so the squared frequencies are the eigenvalues of M.
struct TwoModeFrequencies {
    double lower;
    double upper;
};

inline TwoModeFrequencies coupled_mode_frequencies(double mass, double omega, double omega_mode,
                                                   double g) {
    const double a = std::sqrt(2.0) * g / mass;
    const double c = 2.0 * g * g / mass + omega_mode;
    const double tr = omega * omega + c * omega_mode;
    const double det = omega * omega * c * omega_mode -
                       a * omega_mode * std::sqrt(2.0) * g * omega * omega;
    const double disc = std::sqrt(tr * tr / 4.0 - det);
    return {std::sqrt(tr / 2.0 - disc), std::sqrt(tr / 2.0 + disc)};
}

// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace oracle
