#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinlight/scattering.hpp"

namespace spinlight {

enum class OutputFormat { csv, json };

/// Parses "start:stop:step" (inclusive of both endpoints within 1e-12),
/// "a,b,c" comma lists, or a single number.
std::vector<double> parse_grid(const std::string& text);

struct RunConfig {
    std::string subcommand;
    std::vector<double> kappa_grid{1.0};
    std::vector<double> beta_grid{0.0};
    std::vector<double> eps_grid{0.0};
    double n_bar = 4.0;
    double n0 = 350.0;
    int n_slices = 8192;
    std::int64_t mc_samples = 100000;
    std::optional<std::uint64_t> seed;
    PhysicalParams physical;  // feasibility subcommand inputs
    std::string out_path;     // empty: default from env/working directory
    OutputFormat format = OutputFormat::csv;
};

/// Exit codes: 0 success, 1 usage/configuration error, 2 validation failure
/// (an oracle check missed its tolerance). Writes one header-bearing table to
/// the resolved output path; identical config and seed give identical bytes.
int execute(const RunConfig& config);

/// Same as execute but also returns the serialized table (for tests).
int execute_to_string(const RunConfig& config, std::string& table_out,
                      std::string* resolved_path = nullptr);

/// Environment variable consulted for the default output directory.
inline constexpr const char* kOutputDirEnvVar = "SPINLIGHT_OUT_DIR";

}  // namespace spinlight
