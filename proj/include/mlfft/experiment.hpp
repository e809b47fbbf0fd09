#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mlfft/analysis.hpp"
#include "mlfft/testfuncs.hpp"

namespace mlfft {

struct ExperimentConfig {
    std::string function = "g34";
    std::vector<int> dims;
    std::string family = "hc";  // hc | dyadic
    double T = 0;
    bool even = false;
    // N values for hc, levels n for dyadic.
    std::vector<double> refinements;
    std::string scheme = "multiple";  // single | multiple | both
    double c = 2.0;
    double delta = 0.5;
    std::uint64_t seed = 0;
    int retries = 3;
    int threads = 1;
    std::size_t max_card = default_max_cardinality();
    std::int64_t max_M = std::int64_t{1} << 31;
};

struct ExperimentResult {
    std::vector<ErrorRecord> records;  // sorted by point key
    std::vector<std::string> failures;  // one line per skipped point, in key order
};

// Checks the config; throws ParseError on empty or invalid fields.
void validate(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const ExperimentConfig& cfg);
std::string records_to_csv(const std::vector<ErrorRecord>& records);
std::string config_to_json(const ExperimentConfig& cfg);

// "%.5e", or "-inf"/"inf".
std::string format_sci(double v);

}  // namespace mlfft
