#include "mlfft/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "mlfft/errors.hpp"

namespace mlfft {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

Rank1Lattice::Rank1Lattice(std::vector<std::int64_t> z_, std::int64_t M_) : z(std::move(z_)), M(M_) {
    if (M < 1) throw InvalidArgument("lattice size M must be >= 1");
    if (z.empty()) throw InvalidArgument("generating vector must be non-empty");
    for (auto& v : z) v = mod(v, M);
}

std::int64_t residue(std::span<const std::int64_t> k, const Rank1Lattice& lat) {
    const std::int64_t M = lat.M;
    if (static_cast<int>(k.size()) != lat.dim()) throw InvalidArgument("frequency/lattice dimension mismatch");
    if (M <= (std::int64_t{1} << 31)) {
        std::uint64_t acc = 0;
        for (std::size_t s = 0; s < k.size(); ++s) {
            acc += static_cast<std::uint64_t>(mod(k[s], M)) * static_cast<std::uint64_t>(lat.z[s]);
            acc %= static_cast<std::uint64_t>(M);
        }
        return static_cast<std::int64_t>(acc);
    }
    unsigned __int128 acc = 0;
    for (std::size_t s = 0; s < k.size(); ++s) {
        acc += static_cast<unsigned __int128>(mod(k[s], M)) * static_cast<unsigned __int128>(lat.z[s]);
        acc %= static_cast<unsigned __int128>(M);
    }
    return static_cast<std::int64_t>(acc);
}

std::vector<std::int64_t> residues(const FrequencyIndexSet& I, const Rank1Lattice& lat) {
    std::vector<std::int64_t> r(I.size());
    for (std::size_t i = 0; i < I.size(); ++i) r[i] = residue(I[i], lat);
    return r;
}

void node(const Rank1Lattice& lat, std::int64_t j, std::span<double> out) {
    const std::int64_t jj = mod(j, lat.M);
    for (int s = 0; s < lat.dim(); ++s) {
        const auto num = static_cast<std::int64_t>(
            static_cast<unsigned __int128>(jj) * static_cast<unsigned __int128>(lat.z[s]) %
            static_cast<unsigned __int128>(lat.M));
        out[s] = static_cast<double>(num) / static_cast<double>(lat.M);
    }
}

std::vector<std::vector<double>> nodes(const Rank1Lattice& lat) {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(lat.M), std::vector<double>(lat.dim()));
    for (std::int64_t j = 0; j < lat.M; ++j) node(lat, j, out[j]);
    return out;
}

std::vector<std::size_t> aliasing_free_indices(const FrequencyIndexSet& I, const Rank1Lattice& lat) {
    const auto r = residues(I, lat);
    std::vector<std::size_t> order(I.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return r[a] != r[b] ? r[a] < r[b] : a < b;
    });
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i + 1;
        while (j < order.size() && r[order[j]] == r[order[i]]) ++j;
        if (j == i + 1) out.push_back(order[i]);
        i = j;
    }
    std::sort(out.begin(), out.end());
    return out;
}

FrequencyIndexSet aliasing_free_subset(const FrequencyIndexSet& I, const Rank1Lattice& lat) {
    std::vector<std::int64_t> flat;
    for (auto i : aliasing_free_indices(I, lat)) {
        auto k = I[i];
        flat.insert(flat.end(), k.begin(), k.end());
    }
    return FrequencyIndexSet(I.dim(), std::move(flat), "aliasing-free(" + I.spec() + ")");
}

bool is_reconstructing_single(const FrequencyIndexSet& I, const Rank1Lattice& lat) {
    return aliasing_free_indices(I, lat).size() == I.size();
}

MultipleLattice::MultipleLattice(std::shared_ptr<const FrequencyIndexSet> I, std::vector<Rank1Lattice> components)
    : I_(std::move(I)) {
    if (!I_) throw InvalidArgument("multiple lattice needs an index set");
    counters_.assign(I_->size(), 0);
    for (const auto& c : components) add(c);
}

std::size_t MultipleLattice::add(const Rank1Lattice& lat) { return add(lat, aliasing_free_indices(*I_, lat)); }

std::size_t MultipleLattice::add(const Rank1Lattice& lat, std::vector<std::size_t> free) {
    if (lat.dim() != I_->dim()) throw InvalidArgument("component dimension does not match index set");
    std::size_t fresh = 0;
    for (auto i : free)
        if (counters_[i]++ == 0) ++fresh;
    comps_.push_back(lat);
    free_.push_back(std::move(free));
    return fresh;
}

CoverageReport coverage_check(const MultipleLattice& ml, const FrequencyIndexSet& I) {
    CoverageReport rep;
    rep.counters.assign(I.size(), 0);
    for (const auto& lat : ml.components())
        for (auto i : aliasing_free_indices(I, lat)) ++rep.counters[i];
    std::vector<std::int64_t> flat;
    for (std::size_t i = 0; i < I.size(); ++i)
        if (rep.counters[i] == 0) {
            auto k = I[i];
            flat.insert(flat.end(), k.begin(), k.end());
        }
    rep.uncovered = FrequencyIndexSet(I.dim(), std::move(flat), "uncovered");
    rep.covered = rep.uncovered.empty();
    rep.counters_consistent = (I == ml.index_set()) ? rep.counters == ml.counters() : true;
    return rep;
}

std::int64_t sum_of_sizes(const MultipleLattice& ml) {
    std::int64_t s = 0;
    for (const auto& c : ml.components()) s += c.M;
    return s;
}

std::int64_t node_count_bound(const MultipleLattice& ml) {
    if (ml.size() == 0) return 0;
    return 1 - static_cast<std::int64_t>(ml.size()) + sum_of_sizes(ml);
}

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (auto x : v) {
            h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

std::size_t distinct_node_count(const MultipleLattice& ml) {
    std::unordered_set<std::vector<std::int64_t>, VecHash> seen;
    for (const auto& lat : ml.components()) {
        std::vector<std::int64_t> key(2 * static_cast<std::size_t>(lat.dim()));
        for (std::int64_t j = 0; j < lat.M; ++j) {
            for (int s = 0; s < lat.dim(); ++s) {
                auto num = static_cast<std::int64_t>(static_cast<unsigned __int128>(j) * lat.z[s] %
                                                     static_cast<unsigned __int128>(lat.M));
                std::int64_t den = lat.M;
                const std::int64_t g = std::gcd(num, den);
                num /= g;
                den /= g;
                key[2 * s] = num;
                key[2 * s + 1] = den;
            }
            seen.insert(key);
        }
    }
    return seen.size();
}

}  // namespace mlfft
