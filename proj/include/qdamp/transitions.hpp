// transitions.hpp — first-order interaction-picture transition rates between
// oscillator Fock levels for vacuum, excited (Fock) and thermal reservoirs.
//
// The R^2/2m term and the counter-rotating a b, a^dag b^dag terms are dropped
// (second order in the damping / energy non-conserving at first order); the
// discretized-bath oracle quantifies the error of both neglects. The long-time
// replacement sinc^2 -> 2 pi t delta is exposed through the `long_time_valid`
// flag with threshold w t >= 50.
#pragma once

#include <cmath>
#include <cstddef>
#include <ostream>
#include <vector>

#include "qdamp/bath_oracle.hpp"
#include "qdamp/coupling.hpp"
#include "qdamp/errors.hpp"

namespace qdamp {

inline constexpr double kLongTimeThreshold = 50.0; // w t above which sinc^2 ~ 2 pi t delta

enum class RateRegime { Vacuum, FockBath, Thermal };

// Transition probabilities per unit time for |n> -> |n -+ 1>.
struct RateReport {
    double gamma_down = 0.0;
    double gamma_up = 0.0;
    RateRegime regime = RateRegime::Vacuum;
    bool long_time_valid = true;
    double temperature = 0.0;
};

// Vacuum reservoir: Gamma_down = 4 pi^2 w^3 n |f(w)|^2 / m (Ohmic: n beta / m),
// no upward transitions.
inline RateReport decay_rate_vacuum(int n, double omega, double mass,
                                    const CouplingSpec& coupling) {
    if (n < 0) throw Error("Fock level n must be >= 0");
    if (!(omega > 0.0) || !(mass > 0.0)) throw Error("rates require omega, m > 0");
    RateReport report;
    report.regime = RateRegime::Vacuum;
    if (n == 0) return report;
    const double f = evaluate_coupling(coupling, omega);
    report.gamma_down = 4.0 * M_PI * M_PI * omega * omega * omega * n * f * f / mass;
    return report;
}

// Thermal reservoir (Ohmic coupling):
//   Gamma_down = (n beta / m) e^{w/T} / (e^{w/T} - 1),
//   Gamma_up   = ((n+1) beta / m) / (e^{w/T} - 1).
// Detailed balance Gamma_up / Gamma_down = ((n+1)/n) e^{-w/T} holds exactly.
inline RateReport rates_thermal(int n, double omega, double mass, double beta,
                                double temperature) {
    if (n < 0) throw Error("Fock level n must be >= 0");
    if (!(omega > 0.0) || !(mass > 0.0) || !(beta >= 0.0))
        throw Error("rates require omega, m > 0 and beta >= 0");
    if (!(temperature > 0.0))
        throw NonPositiveTemperature("rates_thermal requires T > 0; use decay_rate_vacuum at T = 0");
    RateReport report;
    report.regime = RateRegime::Thermal;
    report.temperature = temperature;
    const double nbar = bose_occupation(omega, temperature);
    report.gamma_down = n * beta / mass * (nbar + 1.0);
    report.gamma_up = (n + 1.0) * beta / mass * nbar;
    return report;
}

// Reservoir prepared with single quanta at the given frequencies: the downward
// channel keeps its vacuum rate; each quantum at w_l feeds the upward channel
// through the finite-time weight ((n+1) w / 2m) |f(w_l)|^2 t sinc^2((w_l - w)t/2).
// The delta function of the long-time limit appears only as the resonant value.
inline RateReport rates_fock_bath(int n, const std::vector<double>& quanta_frequencies,
                                  double omega, double mass, double beta, double t) {
    if (n < 0) throw Error("Fock level n must be >= 0");
    if (!(t > 0.0)) throw Error("rates_fock_bath requires t > 0");
    if (!(omega > 0.0) || !(mass > 0.0) || !(beta >= 0.0))
        throw Error("rates require omega, m > 0 and beta >= 0");
    RateReport report;
    report.regime = RateRegime::FockBath;
    report.long_time_valid = omega * t >= kLongTimeThreshold;
    report.gamma_down = n * beta / mass;
    for (double wl : quanta_frequencies) {
        if (!(wl > 0.0)) throw NonPositiveFrequency("bath quantum frequency must be positive");
        const double f_sq = beta / (4.0 * M_PI * M_PI * wl * wl * wl); // Ohmic |f|^2
        const double detuning = 0.5 * (wl - omega) * t;
        const double sinc = detuning == 0.0 ? 1.0 : std::sin(detuning) / detuning;
        report.gamma_up += (n + 1.0) * omega / (2.0 * mass) * f_sq * t * sinc * sinc;
    }
    return report;
}

// Finite-time probability of |n> -> |n-1> summed over a discretized reservoir:
//   P(t) = (n w / 2m) sum_j g_j^2 t^2 sinc^2((w_j - w) t / 2);
// converges to Gamma_down * t once w t >> 1 and the grid resolves 1/t.
struct DecayProbability {
    double value = 0.0;
    bool perturbative = true; // value <= 0.1, first-order result trustworthy
};

inline DecayProbability finite_time_decay_probability(int n, double omega, double mass,
                                                      const CouplingSpec& coupling, double t,
                                                      const ModeGrid& grid) {
    if (n < 0) throw Error("Fock level n must be >= 0");
    if (!(t > 0.0)) throw Error("finite_time_decay_probability requires t > 0");
    if (omega > coupling.cutoff) throw AboveCutoff("oscillator frequency above coupling cutoff");
    DecayProbability result;
    if (n == 0) return result;
    double acc = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double detuning = 0.5 * (grid.frequencies[j] - omega) * t;
        const double sinc = detuning == 0.0 ? 1.0 : std::sin(detuning) / detuning;
        acc += grid.couplings[j] * grid.couplings[j] * sinc * sinc;
    }
    result.value = n * omega / (2.0 * mass) * t * t * acc;
    result.perturbative = result.value <= 0.1;
    if (result.value > 1.0)
        throw PerturbationBreakdown("first-order decay probability exceeded 1");
    return result;
}

inline void write_csv_header(std::ostream& out) { out << "n,omega,m,beta,T,gamma_down,gamma_up\n"; }

inline void write_csv_row(std::ostream& out, int n, double omega, double mass, double beta,
                          const RateReport& report) {
    out << n << ',' << csv::format_double(omega) << ',' << csv::format_double(mass) << ','
        << csv::format_double(beta) << ',' << csv::format_double(report.temperature) << ','
        << csv::format_double(report.gamma_down) << ',' << csv::format_double(report.gamma_up)
        << '\n';
}

} // namespace qdamp
