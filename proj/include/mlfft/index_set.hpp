#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace mlfft {

using Frequency = std::vector<std::int64_t>;

// Finite set of integer frequencies in Z^d, stored flat and sorted
// lexicographically. Immutable after construction.
class FrequencyIndexSet {
public:
    FrequencyIndexSet() = default;
    // Sorts the points; throws InvalidArgument on duplicates or d < 1.
    FrequencyIndexSet(int dim, std::vector<std::int64_t> flat, std::string spec = "explicit");
    static FrequencyIndexSet from_points(int dim, const std::vector<Frequency>& pts,
                                         std::string spec = "explicit");

    int dim() const { return dim_; }
    std::size_t size() const { return dim_ == 0 ? 0 : data_.size() / static_cast<std::size_t>(dim_); }
    bool empty() const { return size() == 0; }
    const std::string& spec() const { return spec_; }

    std::span<const std::int64_t> operator[](std::size_t i) const {
        return {data_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }
    const std::vector<std::int64_t>& flat() const { return data_; }

    // Position of k, or npos.
    std::size_t find(std::span<const std::int64_t> k) const;
    bool contains(std::span<const std::int64_t> k) const { return find(k) != npos; }

    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    friend bool operator==(const FrequencyIndexSet& a, const FrequencyIndexSet& b) {
        return a.dim_ == b.dim_ && a.data_ == b.data_;
    }

private:
    int dim_ = 0;
    std::vector<std::int64_t> data_;
    std::string spec_;
};

// T = -inf selects the l1 ball.
inline constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

// Cap from MLFFT_MAX_CARD if set, else 5e6.
std::size_t default_max_cardinality();

// max(1,|k|_1)^alpha * prod_s max(1,|k_s|)^beta
double weight(std::span<const std::int64_t> k, double alpha, double beta);

// Membership test for the hyperbolic cross with parameters (N, T).
bool hc_contains(std::span<const std::int64_t> k, double N, double T);

FrequencyIndexSet generate_hc(int d, double N, double T,
                              std::size_t max_card = default_max_cardinality());
FrequencyIndexSet generate_dyadic(int d, int n, std::size_t max_card = default_max_cardinality());
FrequencyIndexSet filter_even(const FrequencyIndexSet& I);
FrequencyIndexSet set_union(const FrequencyIndexSet& a, const FrequencyIndexSet& b);
// Largest coordinate spread max_k k_s - min_k k_s over all s.
std::int64_t expansion(const FrequencyIndexSet& I);

// Text format: header "d <dim> count <n>" then one frequency per line.
void write_index_set(std::ostream& os, const FrequencyIndexSet& I);
std::string index_set_to_string(const FrequencyIndexSet& I);
FrequencyIndexSet read_index_set(std::istream& is);
// FNV-1a 64 of the canonical text form, as 16 hex digits.
std::string index_set_hash(const FrequencyIndexSet& I);

}  // namespace mlfft
