#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mlfft/index_set.hpp"

namespace mlfft {

// Nodes x_j = (j/M) z mod 1, j = 0..M-1.
struct Rank1Lattice {
    std::vector<std::int64_t> z;  // each component in [0, M)
    std::int64_t M = 1;

    Rank1Lattice() = default;
    // Reduces z mod M; throws InvalidArgument when M < 1 or z is empty.
    Rank1Lattice(std::vector<std::int64_t> z_, std::int64_t M_);
    int dim() const { return static_cast<int>(z.size()); }
};

// k . z mod M in [0, M), exact for any int64 inputs.
std::int64_t residue(std::span<const std::int64_t> k, const Rank1Lattice& lat);
std::vector<std::int64_t> residues(const FrequencyIndexSet& I, const Rank1Lattice& lat);

// Writes node j into out (size d).
void node(const Rank1Lattice& lat, std::int64_t j, std::span<double> out);
std::vector<std::vector<double>> nodes(const Rank1Lattice& lat);

// Positions in I (ascending) of the frequencies whose residue is not shared
// with any other element of I.
std::vector<std::size_t> aliasing_free_indices(const FrequencyIndexSet& I, const Rank1Lattice& lat);
FrequencyIndexSet aliasing_free_subset(const FrequencyIndexSet& I, const Rank1Lattice& lat);
bool is_reconstructing_single(const FrequencyIndexSet& I, const Rank1Lattice& lat);

// A family of rank-1 lattices bound to the index set it was built for.
class MultipleLattice {
public:
    MultipleLattice() = default;
    MultipleLattice(std::shared_ptr<const FrequencyIndexSet> I, std::vector<Rank1Lattice> components);

    const FrequencyIndexSet& index_set() const { return *I_; }
    std::shared_ptr<const FrequencyIndexSet> index_set_ptr() const { return I_; }
    const std::vector<Rank1Lattice>& components() const { return comps_; }
    std::size_t size() const { return comps_.size(); }
    // Aliasing-free positions per component.
    const std::vector<std::vector<std::size_t>>& free_indices() const { return free_; }
    // counters()[i] = number of components in which I[i] is aliasing-free.
    const std::vector<std::uint32_t>& counters() const { return counters_; }

    // Appends a component; returns how many frequencies became newly covered.
    std::size_t add(const Rank1Lattice& lat);
    // Same, with a precomputed aliasing-free list.
    std::size_t add(const Rank1Lattice& lat, std::vector<std::size_t> free);

private:
    std::shared_ptr<const FrequencyIndexSet> I_;
    std::vector<Rank1Lattice> comps_;
    std::vector<std::vector<std::size_t>> free_;
    std::vector<std::uint32_t> counters_;
};

struct CoverageReport {
    bool covered = false;
    FrequencyIndexSet uncovered;
    std::vector<std::uint32_t> counters;
    // Counters recomputed from scratch agree with the stored ones.
    bool counters_consistent = true;
};

CoverageReport coverage_check(const MultipleLattice& ml, const FrequencyIndexSet& I);

// 1 - L + sum M_l: every component contains the origin.
std::int64_t node_count_bound(const MultipleLattice& ml);
std::int64_t sum_of_sizes(const MultipleLattice& ml);
// Number of distinct nodes in the union, compared as reduced fractions.
std::size_t distinct_node_count(const MultipleLattice& ml);

}  // namespace mlfft
