// cli.hpp — command-line front end: argument parsing into RunConfig and the
// dispatcher that produces CSV artifacts. Everything is deterministic; identical
// configs give byte-identical output.
//
// Exit codes: 0 success, 1 numerical failure (error name on stderr), 2 usage.
#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "qdamp/bath_oracle.hpp"
#include "qdamp/coupling.hpp"
#include "qdamp/csv.hpp"
#include "qdamp/dynamics.hpp"
#include "qdamp/errors.hpp"
#include "qdamp/field.hpp"
#include "qdamp/spectra.hpp"
#include "qdamp/transitions.hpp"

namespace qdamp::cli {

enum class Command { None, Kernel, Trajectory, Energies, Rates, BathSim, Field, Help };

struct RunConfig {
    Command command = Command::None;

    double mass = 1.0;
    double omega = 1.0;
    double beta = 0.0;
    double cutoff = 0.0; // 0 = choose 10 * omega where one is needed
    double temperature = 0.0;
    int fock = 0;

    double tmax = 0.0;
    double dt = 0.0;
    double q0 = 1.0;
    double p0 = 0.0;
    double rmax = 0.0;
    double dr = 0.0;

    std::size_t n_modes = 512;
    std::string grid = "uniform";         // uniform | gauss-legendre
    std::string init = "vacuum";          // vacuum | thermal | quanta
    std::vector<std::size_t> quanta;      // mode indices for --init quanta
    bool raw = false;                     // emit non-normal-ordered oscillator/bath energies

    std::string method = "closed-form";   // trajectory: closed-form | volterra
    std::string kernel_kind = "ohmic";    // volterra memory kernel: ohmic | delta

    std::vector<double> quanta_freqs;     // rates: excited reservoir quanta
    double rate_time = 0.0;               // rates: finite-time horizon
    bool cumulative = false;              // kernel: add the running integral column
    std::string defect_path;              // bath-sim: symplectic-defect CSV

    std::string sweep_param;              // energies: omega | beta | m
    double sweep_from = 0.0;
    double sweep_to = 0.0;
    std::size_t sweep_points = 0;

    std::string out_path;                 // empty = stdout
    std::string dump_grid_path;
    std::string gnuplot_path;

    std::string help_text;
};

namespace detail {

inline void add_common_output(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--out", cfg.out_path, "output CSV path (default: stdout)");
    sub->add_option("--gnuplot-script", cfg.gnuplot_path,
                    "also write a gnuplot script for the CSV (requires --out)");
    // handled ahead of parsing (see apply_config_file); registered for --help only
    static std::string config_path_doc;
    sub->add_option("--config", config_path_doc,
                    "read defaults from a 'key = value' file; flags override");
}

// Splices `key = value` lines from a --config file into the argument list as
// --key=value tokens, skipping keys already given on the command line.
inline void apply_config_file(std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw UsageError("--config needs a file path", "pass --config <path>");
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                       args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (path.empty()) return;

    std::ifstream file(path);
    if (!file)
        throw UsageError("cannot read config file " + path, "check the path passed to --config");

    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    auto already_given = [&](const std::string& flag) {
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        const std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(line_no) + " is not 'key = value'",
                             "each non-comment line must read 'key = value'");
        const std::string key = trim(trimmed.substr(0, eq));
        const std::string value = trim(trimmed.substr(eq + 1));
        if (key.empty() || key == "config")
            throw UsageError("bad key on config line " + std::to_string(line_no),
                             "use a flag name without the leading dashes");
        if (!already_given("--" + key)) args.push_back("--" + key + "=" + value);
    }
}

inline std::unique_ptr<CLI::App> build_app(RunConfig& cfg) {
    auto app = std::make_unique<CLI::App>("quantum dissipation toolkit", "qdamp");
    app->require_subcommand(1);

    auto* kernel = app->add_subcommand("kernel", "tabulate the memory kernel gamma(t)");
    kernel->add_option("--beta", cfg.beta, "Ohmic friction coefficient")
        ->required()
        ->check(CLI::PositiveNumber);
    kernel->add_option("--cutoff", cfg.cutoff, "frequency cutoff Lambda")
        ->required()
        ->check(CLI::PositiveNumber);
    kernel->add_option("--tmax", cfg.tmax, "largest tabulated time")
        ->required()
        ->check(CLI::PositiveNumber);
    kernel->add_option("--dt", cfg.dt, "time step")->required()->check(CLI::PositiveNumber);
    kernel->add_flag("--cumulative", cfg.cumulative,
                     "add a running-integral column (tends to beta for Ohmic coupling)");
    add_common_output(kernel, cfg);

    auto* traj = app->add_subcommand("trajectory", "mean path of the damped oscillator");
    traj->add_option("--m", cfg.mass, "oscillator mass")->check(CLI::PositiveNumber);
    traj->add_option("--omega", cfg.omega, "oscillator frequency")
        ->required()
        ->check(CLI::PositiveNumber);
    traj->add_option("--beta", cfg.beta, "friction coefficient")->check(CLI::NonNegativeNumber);
    traj->add_option("--q0", cfg.q0, "initial mean position");
    traj->add_option("--p0", cfg.p0, "initial mean momentum");
    traj->add_option("--tmax", cfg.tmax, "horizon")->required()->check(CLI::PositiveNumber);
    traj->add_option("--dt", cfg.dt, "time step")->required()->check(CLI::PositiveNumber);
    traj->add_option("--method", cfg.method, "closed-form | volterra")
        ->check(CLI::IsMember({"closed-form", "volterra"}));
    traj->add_option("--kernel", cfg.kernel_kind, "volterra memory kernel: ohmic | delta")
        ->check(CLI::IsMember({"ohmic", "delta"}));
    traj->add_option("--cutoff", cfg.cutoff, "cutoff for the ohmic volterra kernel")
        ->check(CLI::PositiveNumber);
    add_common_output(traj, cfg);

    auto* energies = app->add_subcommand("energies", "asymptotic energy partition");
    energies->add_option("--n", cfg.fock, "oscillator Fock level")->check(CLI::NonNegativeNumber);
    energies->add_option("--omega", cfg.omega, "oscillator frequency")
        ->required()
        ->check(CLI::PositiveNumber);
    energies->add_option("--m", cfg.mass, "oscillator mass")->check(CLI::PositiveNumber);
    energies->add_option("--beta", cfg.beta, "friction coefficient")
        ->required()
        ->check(CLI::PositiveNumber);
    energies->add_option("--T", cfg.temperature, "also audit the thermal steady-state formula")
        ->check(CLI::NonNegativeNumber);
    energies->add_option("--sweep", cfg.sweep_param, "sweep one parameter: omega | beta | m")
        ->check(CLI::IsMember({"omega", "beta", "m"}));
    energies->add_option("--sweep-from", cfg.sweep_from, "sweep start");
    energies->add_option("--sweep-to", cfg.sweep_to, "sweep end");
    energies->add_option("--sweep-points", cfg.sweep_points, "sweep sample count");
    add_common_output(energies, cfg);

    auto* rates = app->add_subcommand("rates", "perturbative transition rates");
    rates->add_option("--n", cfg.fock, "oscillator Fock level")
        ->required()
        ->check(CLI::NonNegativeNumber);
    rates->add_option("--omega", cfg.omega, "oscillator frequency")
        ->required()
        ->check(CLI::PositiveNumber);
    rates->add_option("--m", cfg.mass, "oscillator mass")->check(CLI::PositiveNumber);
    rates->add_option("--beta", cfg.beta, "Ohmic friction coefficient")
        ->required()
        ->check(CLI::NonNegativeNumber);
    rates->add_option("--T", cfg.temperature, "reservoir temperature (0 = vacuum)")
        ->check(CLI::NonNegativeNumber);
    rates->add_option("--cutoff", cfg.cutoff, "coupling cutoff (default 10 omega)")
        ->check(CLI::PositiveNumber);
    rates->add_option("--quanta-freqs", cfg.quanta_freqs,
                      "reservoir single-quantum frequencies (finite-time upward channel)");
    rates->add_option("--time", cfg.rate_time,
                      "finite horizon t: with --quanta-freqs the upward channel, otherwise the "
                      "vacuum decay probability per unit time from a discretized reservoir")
        ->check(CLI::PositiveNumber);
    rates->add_option("--N", cfg.n_modes, "modes for the finite-time reservoir sum")
        ->check(CLI::PositiveNumber);
    add_common_output(rates, cfg);

    auto* bath = app->add_subcommand("bath-sim", "exact discretized-bath moment evolution");
    bath->add_option("--N", cfg.n_modes, "number of reservoir modes")
        ->required()
        ->check(CLI::PositiveNumber);
    bath->add_option("--cutoff", cfg.cutoff, "frequency cutoff Lambda")
        ->required()
        ->check(CLI::PositiveNumber);
    bath->add_option("--n", cfg.fock, "oscillator Fock level")->check(CLI::NonNegativeNumber);
    bath->add_option("--init", cfg.init, "reservoir state: vacuum | thermal | quanta")
        ->check(CLI::IsMember({"vacuum", "thermal", "quanta"}));
    bath->add_option("--T", cfg.temperature, "temperature for --init thermal")
        ->check(CLI::NonNegativeNumber);
    bath->add_option("--quanta", cfg.quanta, "mode indices for --init quanta");
    bath->add_option("--m", cfg.mass, "oscillator mass")->check(CLI::PositiveNumber);
    bath->add_option("--omega", cfg.omega, "oscillator frequency")->check(CLI::PositiveNumber);
    bath->add_option("--beta", cfg.beta, "Ohmic friction coefficient")
        ->required()
        ->check(CLI::PositiveNumber);
    bath->add_option("--tmax", cfg.tmax, "horizon")->required()->check(CLI::PositiveNumber);
    bath->add_option("--dt", cfg.dt, "sample spacing")->required()->check(CLI::PositiveNumber);
    bath->add_option("--grid", cfg.grid, "mode grid: uniform | gauss-legendre")
        ->check(CLI::IsMember({"uniform", "gauss-legendre"}));
    bath->add_flag("--raw", cfg.raw, "emit oscillator/bath energies without normal ordering");
    bath->add_option("--dump-grid", cfg.dump_grid_path, "also write the mode grid CSV here");
    bath->add_option("--symplectic-defect", cfg.defect_path,
                     "also write a t,defect CSV of ||S J S^T - J||_max at each sample");
    add_common_output(bath, cfg);

    auto* field = app->add_subcommand("field", "Klein-Gordon source profiles P(r), Q(r)");
    field->add_option("--beta", cfg.beta, "Ohmic friction coefficient")
        ->required()
        ->check(CLI::PositiveNumber);
    field->add_option("--cutoff", cfg.cutoff, "frequency cutoff Lambda")
        ->required()
        ->check(CLI::PositiveNumber);
    field->add_option("--rmax", cfg.rmax, "largest radius")->required()->check(CLI::PositiveNumber);
    field->add_option("--dr", cfg.dr, "radial step")->required()->check(CLI::PositiveNumber);
    add_common_output(field, cfg);

    return app;
}

inline Command command_of(const CLI::App& app) {
    const auto subs = app.get_subcommands();
    if (subs.empty()) return Command::None;
    const std::string name = subs.front()->get_name();
    if (name == "kernel") return Command::Kernel;
    if (name == "trajectory") return Command::Trajectory;
    if (name == "energies") return Command::Energies;
    if (name == "rates") return Command::Rates;
    if (name == "bath-sim") return Command::BathSim;
    if (name == "field") return Command::Field;
    return Command::None;
}

inline const char* error_name(const Error& e) {
    if (dynamic_cast<const QuadratureNonConvergence*>(&e)) return "QuadratureNonConvergence";
    if (dynamic_cast<const NonPositiveFrequency*>(&e)) return "NonPositiveFrequency";
    if (dynamic_cast<const AboveCutoff*>(&e)) return "AboveCutoff";
    if (dynamic_cast<const TabulatedOutOfRange*>(&e)) return "TabulatedOutOfRange";
    if (dynamic_cast<const OverdampedRegime*>(&e)) return "OverdampedRegime";
    if (dynamic_cast<const GridMismatch*>(&e)) return "GridMismatch";
    if (dynamic_cast<const StepTooLarge*>(&e)) return "StepTooLarge";
    if (dynamic_cast<const NonHarmonicPotential*>(&e)) return "NonHarmonicPotential";
    if (dynamic_cast<const ExponentialNonConvergence*>(&e)) return "ExponentialNonConvergence";
    if (dynamic_cast<const NonPositiveTemperature*>(&e)) return "NonPositiveTemperature";
    if (dynamic_cast<const PerturbationBreakdown*>(&e)) return "PerturbationBreakdown";
    if (dynamic_cast<const OutOfRange*>(&e)) return "OutOfRange";
    return "Error";
}

inline void write_gnuplot(const std::string& script_path, const std::string& csv_path,
                          std::size_t n_columns) {
    std::ofstream out(script_path);
    if (!out) throw Error("cannot open gnuplot script path " + script_path);
    out << "set datafile separator ','\n"
        << "set key autotitle columnhead\n"
        << "plot";
    for (std::size_t c = 2; c <= n_columns; ++c)
        out << (c == 2 ? " " : ", ") << '\'' << csv_path << "' using 1:" << c << " with lines";
    out << '\n';
}

} // namespace detail

// Deterministic parse of argv-style arguments (program name excluded).
// Throws UsageError on bad input; --help produces Command::Help with the text.
inline RunConfig parse_args(std::vector<std::string> args) {
    RunConfig cfg;
    auto app = detail::build_app(cfg);
    detail::apply_config_file(args);
    std::reverse(args.begin(), args.end());
    try {
        app->parse(args);
    } catch (const CLI::CallForHelp&) {
        cfg.command = Command::Help;
        cfg.help_text = app->help();
        return cfg;
    } catch (const CLI::CallForAllHelp&) {
        cfg.command = Command::Help;
        cfg.help_text = app->help("", CLI::AppFormatMode::All);
        return cfg;
    } catch (const CLI::RequiredError& e) {
        throw UsageError(e.what(), "provide the missing flag; 'qdamp <command> --help' lists them");
    } catch (const CLI::ConversionError& e) {
        throw UsageError(e.what(), "the flag value has the wrong type; check the number format");
    } catch (const CLI::ValidationError& e) {
        throw UsageError(e.what(), "the flag value is outside its allowed range");
    } catch (const CLI::ConfigError& e) {
        throw UsageError(e.what(), "fix the 'key = value' line in the config file");
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what(), "unknown or malformed flag; 'qdamp --help' lists commands");
    }
    // help inside a subcommand surfaces that subcommand's text
    for (const CLI::App* sub : app->get_subcommands())
        if (sub->get_help_ptr() != nullptr && sub->get_help_ptr()->count() > 0) {
            cfg.command = Command::Help;
            cfg.help_text = sub->help();
            return cfg;
        }
    cfg.command = detail::command_of(*app);
    if (cfg.command == Command::None)
        throw UsageError("no command given", "choose one of: kernel, trajectory, energies, rates, "
                                             "bath-sim, field");
    return cfg;
}

namespace detail {

inline double auto_cutoff(const RunConfig& cfg) {
    return cfg.cutoff > 0.0 ? cfg.cutoff : 10.0 * cfg.omega;
}

inline void run_kernel(const RunConfig& cfg, std::ostream& out) {
    const auto spec = CouplingSpec::ohmic(cfg.beta, cfg.cutoff);
    const auto table = tabulate_kernel(spec, cfg.dt, cfg.tmax);
    if (!cfg.cumulative) {
        write_csv(table, out);
        return;
    }
    csv::Writer w(out, "t,gamma,integral");
    for (std::size_t i = 0; i < table.times.size(); ++i)
        w.row({table.times[i], table.values[i], kernel_integral(spec, table.times[i]).value});
}

inline void run_trajectory(const RunConfig& cfg, std::ostream& out) {
    OscillatorParams params;
    params.mass = cfg.mass;
    params.frequency = cfg.omega;
    params.friction = cfg.beta;
    const auto times = uniform_grid(cfg.tmax, cfg.dt);
    Trajectory traj;
    if (cfg.method == "volterra") {
        MemoryKernelTable kernel;
        if (cfg.kernel_kind == "delta") {
            kernel = delta_kernel_table(cfg.beta, cfg.dt, cfg.tmax);
        } else {
            kernel = tabulate_kernel(CouplingSpec::ohmic(cfg.beta, auto_cutoff(cfg)), cfg.dt,
                                     cfg.tmax);
        }
        traj = solve_mean_path(params, kernel, cfg.q0, cfg.p0, times);
    } else {
        traj = mean_trajectory_ho(params, cfg.q0, cfg.p0, times);
    }
    write_csv(traj, out);
}

inline void run_energies(const RunConfig& cfg, std::ostream& out) {
    out << "param,value,energy_quadrature,energy_closed_form\n";
    auto emit = [&](const std::string& name, double value, double omega, double mass, double beta) {
        const double quadrature = asymptotic_bath_energy(cfg.fock, omega, mass, beta);
        const double closed = asymptotic_bath_energy_closed_form(cfg.fock, omega, mass, beta);
        out << name << ',' << csv::format_double(value) << ',' << csv::format_double(quadrature)
            << ',' << csv::format_double(closed) << '\n';
    };
    if (!cfg.sweep_param.empty()) {
        if (cfg.sweep_points < 2 || !(cfg.sweep_to > cfg.sweep_from) || !(cfg.sweep_from > 0.0))
            throw Error("sweep requires --sweep-from < --sweep-to (both > 0) and --sweep-points >= 2");
        for (std::size_t i = 0; i < cfg.sweep_points; ++i) {
            const double v = cfg.sweep_from + (cfg.sweep_to - cfg.sweep_from) *
                                                  static_cast<double>(i) /
                                                  static_cast<double>(cfg.sweep_points - 1);
            if (cfg.sweep_param == "omega") emit("omega", v, v, cfg.mass, cfg.beta);
            if (cfg.sweep_param == "beta") emit("beta", v, cfg.omega, cfg.mass, v);
            if (cfg.sweep_param == "m") emit("m", v, cfg.omega, v, cfg.beta);
        }
    } else {
        emit("omega", cfg.omega, cfg.omega, cfg.mass, cfg.beta);
    }
    if (cfg.temperature > 0.0) {
        const auto audit = thermal_asymptotic_energy(cfg.temperature, cfg.omega, cfg.mass, cfg.beta);
        out << "T," << csv::format_double(cfg.temperature) << ','
            << csv::format_double(audit.printed_total) << ','
            << csv::format_double(audit.weak_damping_reference) << '\n';
    }
}

inline void run_rates(const RunConfig& cfg, std::ostream& out) {
    RateReport report;
    if (!cfg.quanta_freqs.empty()) {
        if (!(cfg.rate_time > 0.0)) throw Error("--quanta-freqs requires --time > 0");
        report = rates_fock_bath(cfg.fock, cfg.quanta_freqs, cfg.omega, cfg.mass, cfg.beta,
                                 cfg.rate_time);
    } else if (cfg.rate_time > 0.0 && cfg.beta > 0.0) {
        // finite-time vacuum decay: probability per unit time over a discretized reservoir
        const auto coupling = CouplingSpec::ohmic(cfg.beta, auto_cutoff(cfg));
        const auto grid = build_mode_grid(coupling, cfg.n_modes, GridStrategy::Uniform);
        const auto p =
            finite_time_decay_probability(cfg.fock, cfg.omega, cfg.mass, coupling, cfg.rate_time, grid);
        report.regime = RateRegime::Vacuum;
        report.gamma_down = p.value / cfg.rate_time;
        report.long_time_valid = cfg.omega * cfg.rate_time >= kLongTimeThreshold;
        if (!p.perturbative)
            std::cerr << "warning: decay probability " << p.value
                      << " above 0.1; first-order rate is marginal\n";
    } else if (cfg.temperature > 0.0) {
        report = rates_thermal(cfg.fock, cfg.omega, cfg.mass, cfg.beta, cfg.temperature);
    } else if (cfg.beta > 0.0) {
        report = decay_rate_vacuum(cfg.fock, cfg.omega, cfg.mass,
                                   CouplingSpec::ohmic(cfg.beta, auto_cutoff(cfg)));
    }
    write_csv_header(out);
    write_csv_row(out, cfg.fock, cfg.omega, cfg.mass, cfg.beta, report);
}

inline void run_bath_sim(const RunConfig& cfg, std::ostream& out) {
    const auto spec = CouplingSpec::ohmic(cfg.beta, cfg.cutoff);
    const auto strategy =
        cfg.grid == "gauss-legendre" ? GridStrategy::GaussLegendre : GridStrategy::Uniform;
    const ModeGrid grid = build_mode_grid(spec, cfg.n_modes, strategy);
    if (!cfg.dump_grid_path.empty()) {
        std::ofstream grid_out(cfg.dump_grid_path);
        if (!grid_out) throw Error("cannot open " + cfg.dump_grid_path);
        write_csv(grid, grid_out);
    }

    OscillatorParams params;
    params.mass = cfg.mass;
    params.frequency = cfg.omega;
    params.friction = cfg.beta;

    BathInitState bath;
    if (cfg.init == "thermal")
        bath = BathInitState::thermal(cfg.temperature);
    else if (cfg.init == "quanta")
        bath = BathInitState::with_quanta(cfg.quanta);

    const LinearSystem sys = build_generator(params, grid);
    const CovarianceState state0 = init_state(params, grid, cfg.fock, bath);
    const auto steps = static_cast<std::size_t>(std::llround(cfg.tmax / cfg.dt));
    const auto series = energy_time_series(sys, params, state0, cfg.dt, steps, !cfg.raw);

    if (cfg.tmax > grid.recurrence_horizon())
        std::cerr << "warning: horizon " << cfg.tmax << " exceeds the discrete-bath recurrence time "
                  << grid.recurrence_horizon() << "; late-time samples are unphysical\n";
    write_csv(series, out);

    if (!cfg.defect_path.empty()) {
        std::ofstream defect_out(cfg.defect_path);
        if (!defect_out) throw Error("cannot open " + cfg.defect_path);
        csv::Writer w(defect_out, "t,defect");
        const Eigen::MatrixXd s_step = propagator(sys, cfg.dt);
        Eigen::MatrixXd s_t = Eigen::MatrixXd::Identity(sys.dim(), sys.dim());
        for (std::size_t k = 0; k <= steps; ++k) {
            if (k > 0) s_t = s_step * s_t;
            w.row({static_cast<double>(k) * cfg.dt, symplectic_defect(s_t)});
        }
    }
}

inline void run_field(const RunConfig& cfg, std::ostream& out) {
    const auto spec = CouplingSpec::ohmic(cfg.beta, cfg.cutoff);
    std::vector<double> r_grid;
    const auto n = static_cast<std::size_t>(std::llround(cfg.rmax / cfg.dr));
    r_grid.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) r_grid.push_back(static_cast<double>(k) * cfg.dr);
    write_csv(source_profiles(spec, r_grid), out);
}

inline std::size_t csv_columns(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::Kernel: return cfg.cumulative ? 3 : 2;
        case Command::Trajectory: return 3;
        case Command::Energies: return 4;
        case Command::Rates: return 7;
        case Command::BathSim: return 5;
        case Command::Field: return 3;
        default: return 2;
    }
}

} // namespace detail

// Dispatch a parsed config; returns the process exit code.
inline int run(const RunConfig& cfg) {
    try {
        std::ofstream file;
        if (!cfg.out_path.empty()) {
            file.open(cfg.out_path);
            if (!file) throw Error("cannot open output path " + cfg.out_path);
        }
        std::ostream& out = cfg.out_path.empty() ? std::cout : file;

        switch (cfg.command) {
            case Command::Kernel: detail::run_kernel(cfg, out); break;
            case Command::Trajectory: detail::run_trajectory(cfg, out); break;
            case Command::Energies: detail::run_energies(cfg, out); break;
            case Command::Rates: detail::run_rates(cfg, out); break;
            case Command::BathSim: detail::run_bath_sim(cfg, out); break;
            case Command::Field: detail::run_field(cfg, out); break;
            case Command::Help: std::cout << cfg.help_text; break;
            case Command::None: throw Error("no command to run");
        }

        if (!cfg.gnuplot_path.empty()) {
            if (cfg.out_path.empty())
                throw Error("--gnuplot-script needs --out so the script has a file to plot");
            detail::write_gnuplot(cfg.gnuplot_path, cfg.out_path, detail::csv_columns(cfg));
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << detail::error_name(e) << ": " << e.what() << '\n';
        return 1;
    }
}

} // namespace qdamp::cli
