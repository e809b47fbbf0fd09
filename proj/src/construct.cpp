#include "mlfft/construct.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mlfft/primes.hpp"
#include "mlfft/rng.hpp"

namespace mlfft {

int compute_l_max(std::size_t card, double c, double delta) {
    if (!(c > 1)) throw InvalidArgument("oversampling factor c must exceed 1");
    if (!(delta > 0 && delta < 1)) throw InvalidArgument("delta must lie in (0,1)");
    if (card == 0) throw InvalidArgument("empty index set");
    const double f = c / (c - 1);
    const double v = f * f * (std::log(static_cast<double>(card)) - std::log(delta)) / 2;
    return std::max(1, static_cast<int>(std::ceil(v)));
}

bool residues_distinct_mod(const FrequencyIndexSet& I, std::uint64_t p) {
    const int d = I.dim();
    const auto P = static_cast<std::int64_t>(p);
    std::vector<std::pair<std::uint64_t, std::size_t>> keyed(I.size());
    std::vector<std::int64_t> red(I.flat().size());
    for (std::size_t i = 0; i < I.size(); ++i) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (int s = 0; s < d; ++s) {
            std::int64_t r = I[i][s] % P;
            if (r < 0) r += P;
            red[i * d + s] = r;
            h = splitmix64(h ^ static_cast<std::uint64_t>(r));
        }
        keyed[i] = {h, i};
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 1; i < keyed.size(); ++i) {
        if (keyed[i].first != keyed[i - 1].first) continue;
        // Hash collision or genuine clash: compare the reduced vectors.
        std::size_t j = i;
        while (j > 0 && keyed[j - 1].first == keyed[i].first) {
            --j;
            if (std::equal(red.begin() + keyed[i].second * d, red.begin() + (keyed[i].second + 1) * d,
                           red.begin() + keyed[j].second * d))
                return false;
        }
    }
    return true;
}

EligiblePrimes::EligiblePrimes(const FrequencyIndexSet& I, double lambda, std::uint64_t ceiling)
    : I_(I), ceiling_(ceiling), expansion_(static_cast<std::uint64_t>(expansion(I))) {
    if (I.empty()) throw InvalidArgument("eligible primes of an empty index set");
    if (!(lambda >= 0)) throw InvalidArgument("lambda must be nonnegative");
    current_ = static_cast<std::uint64_t>(std::floor(lambda));
}

std::uint64_t EligiblePrimes::next() {
    for (;;) {
        const std::uint64_t p = next_prime(current_);
        if (p > ceiling_) throw SearchCeilingExceeded("prime search passed ceiling " + std::to_string(ceiling_));
        current_ = p;
        // Primes beyond the expansion are injective on I without checking.
        if (p > expansion_ || residues_distinct_mod(I_, p)) return p;
    }
}

std::vector<std::uint64_t> eligible_primes(const FrequencyIndexSet& I, double lambda, std::size_t count,
                                           std::uint64_t ceiling) {
    std::vector<std::uint64_t> out;
    if (count == 0) return out;
    EligiblePrimes seq(I, lambda, ceiling);
    while (out.size() < count) out.push_back(seq.next());
    return out;
}

ConstructionResult build_multiple_lattice(std::shared_ptr<const FrequencyIndexSet> Iptr,
                                          const ConstructionParams& params) {
    const FrequencyIndexSet& I = *Iptr;
    if (I.empty()) throw InvalidArgument("cannot build a lattice for an empty index set");
    const std::size_t n = I.size();
    ConstructionReport rep;
    rep.seed = params.seed;
    rep.L_max = params.l_max_override ? *params.l_max_override : compute_l_max(n, params.c, params.delta);
    if (rep.L_max < 1) throw InvalidArgument("L_max must be positive");
    if (!(params.c > 1)) throw InvalidArgument("oversampling factor c must exceed 1");
    rep.lambda = params.c * static_cast<double>(n - 1);
    const auto ex = expansion(I);
    if (rep.lambda < static_cast<double>(ex))
        rep.warnings.push_back("lambda = " + std::to_string(rep.lambda) + " is below the expansion " +
                               std::to_string(ex) + "; eligible primes are checked individually");

    const int max_draws = params.max_draws > 0 ? params.max_draws : 10 * rep.L_max;
    Rng rng(params.seed);
    EligiblePrimes primes(I, rep.lambda, params.prime_ceiling);
    MultipleLattice ml(Iptr, {});
    std::size_t covered = 0;
    int draws = 0;
    while (covered < n && rep.L < rep.L_max && draws < max_draws) {
        ++draws;
        const std::uint64_t p = primes.next();
        rep.primes_tried.push_back(p);
        std::vector<std::int64_t> z(static_cast<std::size_t>(I.dim()));
        for (auto& v : z) v = static_cast<std::int64_t>(rng.below(p));
        Rank1Lattice lat(std::move(z), static_cast<std::int64_t>(p));
        auto free = aliasing_free_indices(I, lat);
        const bool useful = std::any_of(free.begin(), free.end(), [&](std::size_t i) { return ml.counters()[i] == 0; });
        if (!useful) {
            ++rep.rejected_components;
            continue;
        }
        covered += ml.add(lat, std::move(free));
        ++rep.L;
    }
    if (draws >= max_draws && covered < n)
        rep.warnings.push_back("draw limit " + std::to_string(max_draws) + " reached");

    std::vector<std::int64_t> flat;
    for (std::size_t i = 0; i < n; ++i)
        if (ml.counters()[i] == 0) {
            auto k = I[i];
            flat.insert(flat.end(), k.begin(), k.end());
        }
    rep.uncovered = FrequencyIndexSet(I.dim(), std::move(flat), "uncovered");
    rep.covered = rep.uncovered.empty();
    if (!rep.covered) throw NotCovered(std::move(rep));
    return {std::move(ml), std::move(rep)};
}

ConstructionResult build_multiple_lattice(const FrequencyIndexSet& I, const ConstructionParams& params) {
    return build_multiple_lattice(std::make_shared<const FrequencyIndexSet>(I), params);
}

std::uint64_t retry_seed(std::uint64_t seed, int attempt) {
    return attempt == 0 ? seed : Rng::derive(seed, static_cast<std::uint64_t>(attempt));
}

ConstructionResult build_with_retries(std::shared_ptr<const FrequencyIndexSet> I, ConstructionParams params,
                                      int retries) {
    const std::uint64_t base = params.seed;
    for (int attempt = 0;; ++attempt) {
        params.seed = retry_seed(base, attempt);
        try {
            return build_multiple_lattice(I, params);
        } catch (const NotCovered&) {
            if (attempt >= retries) throw;
        }
    }
}

CbcResult build_single_lattice_cbc(const FrequencyIndexSet& I, std::uint64_t seed, const CbcOptions& opt) {
    if (I.empty()) throw InvalidArgument("cannot build a lattice for an empty index set");
    const int d = I.dim();
    const std::size_t n = I.size();
    CbcResult res;
    if (n == 1) {
        res.lattice = Rank1Lattice(std::vector<std::int64_t>(d, 0), 1);
        res.sizes_tried = 1;
        return res;
    }
    Rng rng(seed);
    std::vector<std::uint64_t> r(n), trial(n);
    std::vector<std::uint64_t> stamp;
    std::uint64_t M = next_prime(n - 1);
    for (;;) {
        if (M > opt.M_ceiling) throw SearchCeilingExceeded("CBC search passed M ceiling");
        ++res.sizes_tried;
        stamp.assign(M, 0);
        std::uint64_t stamp_id = 0;
        std::vector<std::uint64_t> kred(n * d);
        for (std::size_t i = 0; i < n; ++i)
            for (int s = 0; s < d; ++s) {
                std::int64_t v = I[i][s] % static_cast<std::int64_t>(M);
                kred[i * d + s] = static_cast<std::uint64_t>(v < 0 ? v + static_cast<std::int64_t>(M) : v);
            }
        std::fill(r.begin(), r.end(), 0);
        std::vector<std::int64_t> z(d, 0);
        std::size_t distinct = 0;
        for (int s = 0; s < d; ++s) {
            // Candidate generators for this coordinate.
            std::vector<std::uint64_t> cand;
            const std::uint64_t max_cand = std::max<std::uint64_t>(1, opt.budget / n);
            if (s == 0) {
                cand.push_back(1);
            } else if (M - 1 <= max_cand) {
                cand.resize(M - 1);
                std::iota(cand.begin(), cand.end(), std::uint64_t{1});
            } else {
                for (std::uint64_t t = 0; t < max_cand; ++t) cand.push_back(1 + rng.below(M - 1));
            }
            std::uint64_t best_z = cand.front();
            std::size_t best = 0;
            for (auto zc : cand) {
                ++stamp_id;
                std::size_t cnt = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    const std::uint64_t v = (r[i] + kred[i * d + s] * zc) % M;
                    if (stamp[v] != stamp_id) {
                        stamp[v] = stamp_id;
                        ++cnt;
                    }
                }
                if (cnt > best) {
                    best = cnt;
                    best_z = zc;
                    if (cnt == n) break;
                }
            }
            z[s] = static_cast<std::int64_t>(best_z);
            for (std::size_t i = 0; i < n; ++i) r[i] = (r[i] + kred[i * d + s] * best_z) % M;
            distinct = best;
        }
        if (distinct == n) {
            res.lattice = Rank1Lattice(std::move(z), static_cast<std::int64_t>(M));
            return res;
        }
        M = next_prime(std::max<std::uint64_t>(M, static_cast<std::uint64_t>(std::ceil(M * opt.growth))));
    }
}

}  // namespace mlfft
