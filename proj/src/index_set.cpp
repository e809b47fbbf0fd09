#include "mlfft/index_set.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "mlfft/errors.hpp"

namespace mlfft {

namespace {

bool lex_less(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Relative slack for the floating membership test (T not in {0, -inf}).
constexpr long double kRelTol = 1e-12L;

// Exact test prod^q * L^{-p} <= N^{q-p} for T = p/q and integer N, in 128-bit
// integers; returns nullopt on overflow.
std::optional<bool> rational_compare(std::uint64_t prod, std::uint64_t l1, std::uint64_t N, std::int64_t p,
                                     std::int64_t q) {
    using u128 = unsigned __int128;
    auto ipow = [](u128 base, std::int64_t e) -> std::optional<u128> {
        u128 r = 1;
        for (std::int64_t i = 0; i < e; ++i)
            if (__builtin_mul_overflow(r, base, &r)) return std::nullopt;
        return r;
    };
    const u128 L = std::max<std::uint64_t>(1, l1);
    auto lhs = ipow(prod, q);
    auto rhs = ipow(N, q - p);
    if (!lhs || !rhs) return std::nullopt;
    auto lp = ipow(L, p >= 0 ? p : -p);
    if (!lp) return std::nullopt;
    u128 l = *lhs, r = *rhs;
    if (p >= 0 ? __builtin_mul_overflow(r, *lp, &r) : __builtin_mul_overflow(l, *lp, &l)) return std::nullopt;
    return l <= r;
}

class HcRule {
public:
    HcRule(int d, double N, double T) : N_(N), T_(T) {
        if (d < 1) throw InvalidArgument("dimension must be >= 1");
        if (!(N >= 1.0) || !std::isfinite(N)) throw InvalidArgument("N must be finite and >= 1");
        if (std::isnan(T) || T >= 1.0 || T == std::numeric_limits<double>::infinity())
            throw InvalidArgument("T must lie in [-inf, 1)");
        l1_ball_ = std::isinf(T);
        rhs_ = std::pow(static_cast<long double>(N), 1.0L - static_cast<long double>(T)) * (1.0L + kRelTol);
        // T = p/q with small q and integer N: compare exactly.
        if (!l1_ball_ && N == std::floor(N) && N < 1e18) {
            for (std::int64_t q = 1; q <= 64; ++q) {
                const double pq = T * static_cast<double>(q);
                if (pq == std::floor(pq) && std::fabs(pq) < 1e6) {
                    p_ = static_cast<std::int64_t>(pq);
                    q_ = q;
                    rational_ = true;
                    break;
                }
            }
        }
    }

    // Minimum of the weight over all completions of a prefix with the given
    // product of max(1,|k_s|), l1 norm and number of free coordinates.
    // Only used for pruning, so the floating slack errs towards keeping.
    bool lower_bound_ok(long double prod, long double l1, int remaining) const {
        if (l1_ball_) return std::max(1.0L, l1) <= N_;
        if (T_ <= 0) return prod * std::pow(std::max(1.0L, l1), -static_cast<long double>(T_)) <= rhs_;
        return prod * std::pow(std::max(1.0L, l1 + remaining), -static_cast<long double>(T_)) <= rhs_;
    }

    bool contains(long double prod, long double l1) const {
        if (l1_ball_) return std::max(1.0L, l1) <= N_;
        if (rational_ && prod < 0x1p64L && l1 < 0x1p64L) {
            if (auto r = rational_compare(static_cast<std::uint64_t>(prod), static_cast<std::uint64_t>(l1),
                                          static_cast<std::uint64_t>(N_), p_, q_))
                return *r;
        }
        return lower_bound_ok(prod, l1, 0);
    }

private:
    double N_;
    double T_;
    bool l1_ball_ = false;
    bool rational_ = false;
    std::int64_t p_ = 0, q_ = 1;
    long double rhs_ = 0;
};

std::string format_real(double v) {
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

FrequencyIndexSet::FrequencyIndexSet(int dim, std::vector<std::int64_t> flat, std::string spec)
    : dim_(dim), spec_(std::move(spec)) {
    if (dim < 0 || (dim == 0 && !flat.empty())) throw InvalidArgument("dimension must be >= 1");
    if (dim == 0) return;
    if (flat.size() % static_cast<std::size_t>(dim) != 0)
        throw InvalidArgument("flat storage length is not a multiple of the dimension");
    const std::size_t n = flat.size() / static_cast<std::size_t>(dim);
    const auto row = [&](std::size_t i) {
        return std::span<const std::int64_t>(flat.data() + i * dim, static_cast<std::size_t>(dim));
    };
    bool sorted = true;
    for (std::size_t i = 1; i < n && sorted; ++i) sorted = lex_less(row(i - 1), row(i));
    if (sorted) {
        data_ = std::move(flat);
        return;
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return lex_less(row(a), row(b)); });
    data_.reserve(flat.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && !lex_less(row(perm[i - 1]), row(perm[i])))
            throw InvalidArgument("duplicate frequency in index set");
        auto r = row(perm[i]);
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

FrequencyIndexSet FrequencyIndexSet::from_points(int dim, const std::vector<Frequency>& pts, std::string spec) {
    std::vector<std::int64_t> flat;
    flat.reserve(pts.size() * static_cast<std::size_t>(std::max(dim, 0)));
    for (const auto& p : pts) {
        if (static_cast<int>(p.size()) != dim) throw InvalidArgument("frequency has wrong dimension");
        flat.insert(flat.end(), p.begin(), p.end());
    }
    return FrequencyIndexSet(dim, std::move(flat), std::move(spec));
}

std::size_t FrequencyIndexSet::find(std::span<const std::int64_t> k) const {
    if (static_cast<int>(k.size()) != dim_) return npos;
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (lex_less((*this)[mid], k)) lo = mid + 1;
        else hi = mid;
    }
    if (lo < size() && std::equal(k.begin(), k.end(), (*this)[lo].begin())) return lo;
    return npos;
}

std::size_t default_max_cardinality() {
    if (const char* env = std::getenv("MLFFT_MAX_CARD")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 5'000'000;
}

double weight(std::span<const std::int64_t> k, double alpha, double beta) {
    long double l1 = 0, prod = 1;
    for (auto v : k) {
        const long double a = std::fabs(static_cast<long double>(v));
        l1 += a;
        prod *= std::pow(std::max(1.0L, a), static_cast<long double>(beta));
    }
    return static_cast<double>(std::pow(std::max(1.0L, l1), static_cast<long double>(alpha)) * prod);
}

bool hc_contains(std::span<const std::int64_t> k, double N, double T) {
    const HcRule rule(static_cast<int>(k.size()), N, T);
    long double prod = 1, l1 = 0;
    for (auto v : k) {
        const long double a = std::fabs(static_cast<long double>(v));
        prod *= std::max(1.0L, a);
        l1 += a;
    }
    return rule.contains(prod, l1);
}

FrequencyIndexSet generate_hc(int d, double N, double T, std::size_t max_card) {
    const HcRule rule(d, N, T);
    std::vector<std::int64_t> flat;
    std::vector<std::int64_t> abs_k(static_cast<std::size_t>(d), 0);
    std::size_t count = 0;

    auto emit = [&]() {
        std::vector<int> nz;
        for (int s = 0; s < d; ++s)
            if (abs_k[s] != 0) nz.push_back(s);
        const std::size_t variants = std::size_t{1} << nz.size();
        count += variants;
        if (count > max_card)
            throw CapacityExceeded("hyperbolic cross exceeds cardinality cap of " + std::to_string(max_card));
        for (std::size_t mask = 0; mask < variants; ++mask) {
            const std::size_t base = flat.size();
            flat.insert(flat.end(), abs_k.begin(), abs_k.end());
            for (std::size_t b = 0; b < nz.size(); ++b)
                if (mask >> b & 1U) flat[base + nz[b]] = -flat[base + nz[b]];
        }
    };

    auto dfs = [&](auto&& self, int s, long double prod, long double l1) -> void {
        if (s == d) {
            if (rule.contains(prod, l1)) emit();
            return;
        }
        const int rem = d - s - 1;
        abs_k[s] = 0;
        if (rule.lower_bound_ok(prod, l1, rem)) self(self, s + 1, prod, l1);
        for (std::int64_t a = 1;; ++a) {
            const long double p = prod * static_cast<long double>(a);
            const long double l = l1 + static_cast<long double>(a);
            if (!rule.lower_bound_ok(p, l, rem)) break;
            abs_k[s] = a;
            self(self, s + 1, p, l);
        }
        abs_k[s] = 0;
    };
    dfs(dfs, 0, 1.0L, 0.0L);

    std::string spec = "hc(d=" + std::to_string(d) + ",N=" + format_real(N) + ",T=" + format_real(T) + ")";
    return FrequencyIndexSet(d, std::move(flat), std::move(spec));
}

FrequencyIndexSet generate_dyadic(int d, int n, std::size_t max_card) {
    if (d < 1) throw InvalidArgument("dimension must be >= 1");
    if (n < 0 || n > 62) throw InvalidArgument("dyadic level must lie in [0, 62]");
    // Level of a single coordinate: smallest j with k in Q_j.
    auto level = [](std::int64_t k) -> int {
        if (k == 0) return 0;
        const std::uint64_t need = k > 0 ? static_cast<std::uint64_t>(k) : static_cast<std::uint64_t>(1 - k);
        int j = 1;
        while ((std::uint64_t{1} << (j - 1)) < need) ++j;
        return j;
    };
    std::vector<std::int64_t> flat;
    std::vector<std::int64_t> k(static_cast<std::size_t>(d), 0);
    std::size_t count = 0;
    auto dfs = [&](auto&& self, int s, int budget) -> void {
        if (s == d) {
            if (++count > max_card)
                throw CapacityExceeded("dyadic cross exceeds cardinality cap of " + std::to_string(max_card));
            flat.insert(flat.end(), k.begin(), k.end());
            return;
        }
        const std::int64_t half = budget == 0 ? 0 : (std::int64_t{1} << (budget - 1));
        const std::int64_t lo = budget == 0 ? 0 : 1 - half;
        for (std::int64_t v = lo; v <= half; ++v) {
            k[s] = v;
            self(self, s + 1, budget - level(v));
        }
    };
    dfs(dfs, 0, n);
    return FrequencyIndexSet(d, std::move(flat), "dyadic(d=" + std::to_string(d) + ",n=" + std::to_string(n) + ")");
}

FrequencyIndexSet filter_even(const FrequencyIndexSet& I) {
    std::vector<std::int64_t> flat;
    for (std::size_t i = 0; i < I.size(); ++i) {
        auto k = I[i];
        if (std::all_of(k.begin(), k.end(), [](std::int64_t v) { return v % 2 == 0; }))
            flat.insert(flat.end(), k.begin(), k.end());
    }
    return FrequencyIndexSet(I.dim(), std::move(flat), "even(" + I.spec() + ")");
}

FrequencyIndexSet set_union(const FrequencyIndexSet& a, const FrequencyIndexSet& b) {
    if (a.dim() != b.dim()) throw InvalidArgument("union of index sets with different dimensions");
    std::vector<std::int64_t> flat;
    flat.reserve(a.flat().size() + b.flat().size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        std::span<const std::int64_t> next;
        if (j == b.size() || (i < a.size() && lex_less(a[i], b[j]))) next = a[i++];
        else if (i == a.size() || lex_less(b[j], a[i])) next = b[j++];
        else { next = a[i++]; ++j; }
        flat.insert(flat.end(), next.begin(), next.end());
    }
    return FrequencyIndexSet(a.dim(), std::move(flat), "union(" + a.spec() + "," + b.spec() + ")");
}

std::int64_t expansion(const FrequencyIndexSet& I) {
    if (I.empty()) throw InvalidArgument("expansion of an empty index set");
    std::int64_t best = 0;
    for (int s = 0; s < I.dim(); ++s) {
        std::int64_t lo = I[0][s], hi = I[0][s];
        for (std::size_t i = 1; i < I.size(); ++i) {
            lo = std::min(lo, I[i][s]);
            hi = std::max(hi, I[i][s]);
        }
        best = std::max(best, hi - lo);
    }
    return best;
}

void write_index_set(std::ostream& os, const FrequencyIndexSet& I) {
    os << "d " << I.dim() << " count " << I.size() << '\n';
    for (std::size_t i = 0; i < I.size(); ++i) {
        auto k = I[i];
        for (int s = 0; s < I.dim(); ++s) {
            if (s) os << ' ';
            os << k[s];
        }
        os << '\n';
    }
}

std::string index_set_to_string(const FrequencyIndexSet& I) {
    std::ostringstream os;
    write_index_set(os, I);
    return os.str();
}

FrequencyIndexSet read_index_set(std::istream& is) {
    std::string tag_d, tag_count;
    long long dim = 0;
    long long count = -1;
    if (!(is >> tag_d >> dim >> tag_count >> count) || tag_d != "d" || tag_count != "count")
        throw ParseError("index set file: expected header 'd <dim> count <n>'");
    if (dim < 1 || dim > 64) throw ParseError("index set file: dimension out of range");
    if (count < 0) throw ParseError("index set file: negative count");
    std::vector<std::int64_t> flat;
    flat.reserve(static_cast<std::size_t>(count * dim));
    for (long long i = 0; i < count * dim; ++i) {
        std::string tok;
        if (!(is >> tok)) throw ParseError("index set file: truncated after " + std::to_string(i / dim) + " frequencies");
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw ParseError("index set file: bad integer '" + tok + "'");
        flat.push_back(v);
    }
    std::string extra;
    if (is >> extra) throw ParseError("index set file: trailing data after declared count");
    try {
        return FrequencyIndexSet(static_cast<int>(dim), std::move(flat), "file");
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("index set file: ") + e.what());
    }
}

std::string index_set_hash(const FrequencyIndexSet& I) {
    const std::string text = index_set_to_string(I);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace mlfft
