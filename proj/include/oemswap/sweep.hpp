#pragma once

#include "oemswap/oem_model.hpp"
#include "oemswap/output_spectra.hpp"
#include "oemswap/swap_protocol.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace oemswap {

enum class SweepVariable { Tau, PowerW, Temperature };
enum class SweepScale { Linear, Log };
enum class OutputFormat { Csv, Json };

struct SweepSpec {
    SweepVariable variable = SweepVariable::Tau;
    double start = 0.0;
    double stop = 0.0;
    int points = 1;
    SweepScale scale = SweepScale::Linear;

    std::vector<double> grid() const;
};

/// Parsed configuration.  Frequencies enter the JSON document in Hz,
/// powers in W, wavelengths in m, temperature in K; filter tau and Omega
/// are dimensionless in units of omega_m.  Unknown JSON fields are
/// rejected.
struct RunConfig {
    SystemParams system;       // converted to rad/s
    double filter_tau = 0.0;   // tau * omega_m (dimensionless)
    double filter_omega_b = 0.0;  // in units of omega_m
    double filter_omega_c = 0.0;
    double filter_omega_w = 0.0;
    SweepSpec sweep;
    std::string output_path;
    OutputFormat format = OutputFormat::Csv;

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_file(const std::string& path);

    FilterBank filters() const;
};

/// Thrown on malformed or physically invalid configuration; what() carries
/// the offending field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepRecord {
    double swept_value = 0.0;
    bool stable = false;
    // measures are meaningful only when stable
    double en_ww = 0.0, en_cc = 0.0;
    double mu_b = 0.0, mu_wb = 0.0, mu_bc = 0.0;
    double eta_ww_shortcut = 0.0, eta_ww_measured = 0.0;
    bool certified = false;

    std::string to_csv_row() const;
    static std::optional<SweepRecord> from_csv_row(const std::string& row);
    nlohmann::json to_json() const;
};

inline constexpr const char* kCsvHeader =
    "swept_value,EN_ww,EN_cc,mu_b,mu_wb,mu_bc,eta_ww_shortcut,"
    "eta_ww_measured,stable,certified";

/// Evaluates the full pipeline (rates -> model -> stability -> Lyapunov ->
/// output CM -> swap) at one grid point.  Unstable points come back with
/// stable = false and empty measures instead of throwing.
SweepRecord evaluate_point(const RunConfig& config, double swept_value);

struct SweepSummary {
    std::vector<SweepRecord> records;
    int stable_count = 0;
    int certified_count = 0;
};

SweepSummary run_sweep(const RunConfig& config);

void write_csv(const SweepSummary& s, std::ostream& out);
void write_json(const SweepSummary& s, std::ostream& out);

/// Schema plus physics pre-flight (stability at the sweep endpoints)
/// without running the sweep.  Returns human-readable findings; throws
/// ConfigError on schema violations.
std::vector<std::string> validate(const RunConfig& config);

/// Parameter set and filters of the reference operating point used
/// throughout the test suite and the shipped example configs.
SystemParams reference_params();
FilterBank reference_filters(double omega_m, double tau_scaled = 500.0);

}  // namespace oemswap
