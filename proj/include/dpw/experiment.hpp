#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dpw/profiles.hpp"
#include "dpw/sampling.hpp"
#include "dpw/serialization.hpp"

namespace dpw {

// Frequency-side input selector: bump | indicator | single_frequency |
// custom_grid, with kind-specific parameters.
struct FSpec {
    std::string kind = "bump";
    json parameters = json::object();
};

// Sampling-set selector: full | two_progression | random_gaps | explicit.
struct LambdaSpec {
    std::string kind = "full";
    json parameters = json::object();
    std::uint64_t seed = 0;
    bool has_seed = false;
};

struct ExperimentConfig {
    std::string name = "experiment";
    double alpha = kPi / 8;
    int L = 4096;
    Window window{-256, 256, -8, 8};
    FSpec f_spec;
    LambdaSpec lambda_spec;
    double tol = 1e-9;
    int max_iter = 200;
    std::vector<std::string> outputs; // empty means subcommand defaults

    static ExperimentConfig from_json(const json& j);
    json to_json() const;
};

struct RunArtifacts {
    std::map<std::string, json> reports;
    std::map<std::string, std::string> tables; // CSV text, 17 significant digits
    bool all_ok = true; // every guarantee-flagged check passed
};

SpectralFunction build_profile(const ExperimentConfig& cfg, const BandParameters& band);
std::vector<int> build_lambda(const ExperimentConfig& cfg);

// Synthesis + sampling + reconstruction per the config; deterministic
// given (config, seed).
RunArtifacts run(const ExperimentConfig& cfg);

// One report per checker: holomorphicity, isometry, kernel,
// Plancherel-Polya, Bernstein, Wirtinger, anchor identity, decimation,
// density, sampling inequality, operator bounds, growth envelope.
RunArtifacts verify_suite(const ExperimentConfig& cfg);

// Density trajectory artifacts for the configured sampling set.
RunArtifacts density_report(const ExperimentConfig& cfg, int r_max);

} // namespace dpw
