#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mlfft/errors.hpp"
#include "mlfft/index_set.hpp"
#include "mlfft/lattice.hpp"

namespace mlfft {

struct ConstructionParams {
    double c = 2.0;
    double delta = 0.5;
    std::uint64_t seed = 0;
    std::optional<int> l_max_override;
    // Total lattice draws (accepted or rejected) allowed per call; 0 means 10 * L_max.
    int max_draws = 0;
    // Upper limit for the prime search.
    std::uint64_t prime_ceiling = std::uint64_t{1} << 62;
};

struct ConstructionReport {
    int L = 0;
    int L_max = 0;
    double lambda = 0;
    std::vector<std::uint64_t> primes_tried;
    int rejected_components = 0;
    bool covered = false;
    FrequencyIndexSet uncovered;
    std::uint64_t seed = 0;
    std::vector<std::string> warnings;
};

class NotCovered : public Error {
public:
    explicit NotCovered(ConstructionReport report)
        : Error("multiple lattice does not cover the index set after " + std::to_string(report.L) +
                " components"),
          report_(std::move(report)) {}
    const ConstructionReport& report() const { return report_; }

private:
    ConstructionReport report_;
};

struct ConstructionResult {
    MultipleLattice lattice;
    ConstructionReport report;
};

int compute_l_max(std::size_t card, double c, double delta);

// True when k -> (k mod p componentwise) is injective on I.
bool residues_distinct_mod(const FrequencyIndexSet& I, std::uint64_t p);

// Increasing stream of primes p > lambda that are injective on I.
class EligiblePrimes {
public:
    EligiblePrimes(const FrequencyIndexSet& I, double lambda, std::uint64_t ceiling = std::uint64_t{1} << 62);
    std::uint64_t next();  // throws SearchCeilingExceeded

private:
    const FrequencyIndexSet& I_;
    std::uint64_t current_;
    std::uint64_t ceiling_;
    std::uint64_t expansion_;
};

std::vector<std::uint64_t> eligible_primes(const FrequencyIndexSet& I, double lambda, std::size_t count,
                                           std::uint64_t ceiling = std::uint64_t{1} << 62);

// One run of the randomized construction; throws NotCovered on failure.
ConstructionResult build_multiple_lattice(std::shared_ptr<const FrequencyIndexSet> I,
                                          const ConstructionParams& params);
ConstructionResult build_multiple_lattice(const FrequencyIndexSet& I, const ConstructionParams& params);

// Attempt 0 uses params.seed, attempt i > 0 a seed derived from it.
ConstructionResult build_with_retries(std::shared_ptr<const FrequencyIndexSet> I, ConstructionParams params,
                                      int retries);
std::uint64_t retry_seed(std::uint64_t seed, int attempt);

struct CbcOptions {
    // Work limit per coordinate, in residue updates; candidates are subsampled above it.
    std::uint64_t budget = 200'000'000;
    double growth = 1.03;
    std::uint64_t M_ceiling = std::uint64_t{1} << 32;
};

struct CbcResult {
    Rank1Lattice lattice;
    int sizes_tried = 0;
    // Always true: this is a greedy heuristic, not a reference CBC method.
    bool non_canonical = true;
};

CbcResult build_single_lattice_cbc(const FrequencyIndexSet& I, std::uint64_t seed, const CbcOptions& opt = {});

}  // namespace mlfft
