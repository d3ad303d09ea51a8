#include "oemswap/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr const char* kVersion = "0.1.0";

// exit codes: 0 ok, 2 malformed config, 3 all points unstable, 4 I/O failure
constexpr int kExitConfig = 2;
constexpr int kExitAllUnstable = 3;
constexpr int kExitIo = 4;

int run_command(const std::string& config_path, const std::string& out_override,
                const std::string& format_override) {
    oemswap::RunConfig config;
    try {
        config = oemswap::RunConfig::from_file(config_path);
        if (!format_override.empty()) {
            if (format_override == "csv")
                config.format = oemswap::OutputFormat::Csv;
            else if (format_override == "json")
                config.format = oemswap::OutputFormat::Json;
            else
                throw oemswap::ConfigError("--format must be 'csv' or 'json'");
        }
    } catch (const oemswap::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    if (!out_override.empty()) config.output_path = out_override;

    const oemswap::SweepSummary summary = oemswap::run_sweep(config);

    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open output file: " << config.output_path << '\n';
        return kExitIo;
    }
    if (config.format == oemswap::OutputFormat::Csv)
        oemswap::write_csv(summary, out);
    else
        oemswap::write_json(summary, out);
    out.flush();
    if (!out) {
        std::cerr << "write failure: " << config.output_path << '\n';
        return kExitIo;
    }

    std::cout << summary.records.size() << " points, " << summary.stable_count
              << " stable, " << summary.certified_count << " certified -> "
              << config.output_path << '\n';
    return summary.stable_count == 0 ? kExitAllUnstable : 0;
}

int validate_command(const std::string& config_path) {
    try {
        const auto config = oemswap::RunConfig::from_file(config_path);
        for (const auto& note : oemswap::validate(config))
            std::cout << note << '\n';
        std::cout << "config ok\n";
        return 0;
    } catch (const oemswap::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Remote microwave-microwave entanglement via opto-electro-mechanical "
        "interfaces and CV entanglement swapping"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config_path, out_path, format;

    auto* run = app.add_subcommand("run", "Run a single evaluation or sweep");
    run->add_option("config", config_path, "JSON configuration file")
        ->required();
    run->add_option("--out", out_path, "Override the output path");
    run->add_option("--format", format, "Override the output format (csv|json)");

    auto* validate = app.add_subcommand("validate", "Check a configuration");
    validate->add_option("config", config_path, "JSON configuration file")
        ->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return run_command(config_path, out_path, format);
    return validate_command(config_path);
}
