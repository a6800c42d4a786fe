#pragma once
// Command-line front end. Every analysis is a subcommand writing CSV or JSON.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmldde/model.hpp"

namespace cmldde::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kIo = 3, kNumerical = 4 };

/// Everything a run depends on. Unset optionals fall back to per-command defaults.
struct RunConfig {
    std::string command;
    ParamValues params;
    std::string out;  ///< empty: standard output
    std::string format = "csv";

    // simulate, x-sim
    std::optional<double> t_end;  ///< default 200 r
    std::optional<double> dt;     ///< default r/64
    std::size_t stride = 1;
    std::string history = "eigenmode";  ///< eigenmode | constant
    double c = 0.2;
    std::optional<double> value;  ///< constant history; default 1.01 y2
    std::optional<double> x0;     ///< default x2

    // hopf-surface
    double k_min = 1.05;
    double k_max = 1.95;
    double delta_min = 0.001;
    double delta_max = 0.5;
    std::size_t k_res = 50;
    std::size_t delta_res = 50;

    // verify-tables
    double rel_tol = 1e-4;
    std::string tables;  ///< empty: embedded data

    // bistability, criticality, zone
    std::optional<double> horizon;
    double c_lo = 0.2;
    double c_hi = 0.55;
    double tol = 0.002;
    std::vector<double> c_list;
    std::vector<double> offsets{-0.0001, 0.0004, 0.0008, 0.0012};
    double perturbation = 0.01;
    std::vector<double> probes{0.01, 0.05};

    bool operator==(const RunConfig&) const = default;
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

/// Runs one command; `out` receives data, `err` diagnostics. Returns an ExitCode.
int run_config(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses arguments (without the program name) and runs the command.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cmldde::cli
