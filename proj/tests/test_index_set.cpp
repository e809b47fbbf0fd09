#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include "mlfft/errors.hpp"
#include "mlfft/index_set.hpp"
#include "mlfft/set_spec.hpp"

using namespace mlfft;

namespace {

std::vector<std::size_t> hc_cards(int d, double T, const std::vector<double>& Ns, bool even = false) {
    std::vector<std::size_t> out;
    for (double N : Ns) {
        auto I = generate_hc(d, N, T);
        out.push_back(even ? filter_even(I).size() : I.size());
    }
    return out;
}

// Independent membership: long double weight, no pruning, generous box.
bool brute_member(const std::vector<std::int64_t>& k, double N, double T) {
    long double l1 = 0, prod = 1;
    for (auto v : k) {
        l1 += std::llabs(v);
        prod *= std::max<long double>(1, std::llabs(v));
    }
    if (std::isinf(T)) return std::max<long double>(1, l1) <= N;
    const long double lhs = prod * std::pow(std::max<long double>(1, l1), -static_cast<long double>(T));
    return lhs <= std::pow(static_cast<long double>(N), 1 - static_cast<long double>(T)) * (1 + 1e-12L);
}

std::set<std::vector<std::int64_t>> brute_hc(int d, double N, double T, std::int64_t box) {
    std::set<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> k(d, -box);
    for (;;) {
        if (brute_member(k, N, T)) out.insert(k);
        int s = 0;
        while (s < d && k[s] == box) k[s++] = -box;
        if (s == d) break;
        ++k[s];
    }
    return out;
}

std::set<std::vector<std::int64_t>> as_set(const FrequencyIndexSet& I) {
    std::set<std::vector<std::int64_t>> out;
    for (std::size_t i = 0; i < I.size(); ++i) out.insert({I[i].begin(), I[i].end()});
    return out;
}

}  // namespace

TEST_CASE("weight formula") {
    const std::vector<std::int64_t> k{2, -3};
    CHECK(weight(k, 0, 0) == doctest::Approx(1.0));
    CHECK(weight(std::vector<std::int64_t>{0, 0, 0}, 1.7, 2.3) == doctest::Approx(1.0));
    CHECK(weight(k, -1, 2) == doctest::Approx(7.2).epsilon(1e-14));
}

TEST_CASE("hyperbolic cross cardinalities") {
    CHECK(hc_cards(2, 0, {1, 2, 4, 8, 16, 32, 64, 128}) ==
          std::vector<std::size_t>{9, 21, 49, 113, 265, 605, 1377, 3093});
    CHECK(hc_cards(3, 0, {1, 2, 4, 8, 16, 32}) == std::vector<std::size_t>{27, 81, 225, 593, 1577, 4021});
    CHECK(hc_cards(2, 0, {2, 4, 8, 16, 32}, true) == std::vector<std::size_t>{5, 13, 29, 65, 145});
    CHECK(hc_cards(3, 0, {2, 4, 8, 16, 32, 64}, true) == std::vector<std::size_t>{7, 25, 69, 177, 441, 1097});
}

TEST_CASE("l1 ball of radius one has 2d+1 points") {
    for (int d = 1; d <= 8; ++d) CHECK(generate_hc(d, 1, kMinusInf).size() == static_cast<std::size_t>(2 * d + 1));
}

TEST_CASE("one-dimensional crosses are intervals for every T") {
    for (double T : {kMinusInf, -2.0, 0.0, 0.5, 0.9})
        for (double N : {1.0, 3.0, 7.5}) {
            const auto I = generate_hc(1, N, T);
            CHECK(I.size() == static_cast<std::size_t>(2 * std::floor(N) + 1));
        }
}

TEST_CASE("hyperbolic cross equals brute force enumeration") {
    for (int d = 1; d <= 3; ++d)
        for (double T : {kMinusInf, -1.0, -0.5, 0.0, 0.25, 0.5})
            for (double N : {1.0, 2.0, 3.0, 5.0, 8.0, 16.0, 6.5}) {
                if (d == 3 && N > 8) continue;
                // Largest coordinate a satisfies a^{1-T} <= d^T N^{1-T} for T > 0.
                const double reach = T > 0 ? std::pow(d, T / (1 - T)) * N : N;
                const auto box = static_cast<std::int64_t>(std::ceil(reach)) + 1;
                CAPTURE(d);
                CAPTURE(T);
                CAPTURE(N);
                CHECK(as_set(generate_hc(d, N, T)) == brute_hc(d, N, T, box));
            }
}

TEST_CASE("boundary points are members, points just outside are not") {
    // T = 1/2, N = 2, k = (2, 0): prod^2 = 4 = N * |k|_1 exactly.
    const std::vector<std::int64_t> edge{2, 0};
    CHECK(hc_contains(edge, 2, 0.5));
    CHECK_FALSE(hc_contains(edge, 1.999, 0.5));
    // T = 0: product equals N.
    CHECK(hc_contains(std::vector<std::int64_t>{3, -5}, 15, 0));
    CHECK_FALSE(hc_contains(std::vector<std::int64_t>{3, -5}, 14.999999, 0));
    // T = -1: prod * |k|_1 <= N^2, with (3, 3): 9 * 6 = 54.
    CHECK(hc_contains(std::vector<std::int64_t>{3, 3}, std::sqrt(54.0), -1));
    CHECK_FALSE(hc_contains(std::vector<std::int64_t>{3, 3}, 7.3, -1));
}

TEST_CASE("hyperbolic cross is closed under sign flips and permutations") {
    const auto I = generate_hc(3, 12, 0.25);
    for (std::size_t i = 0; i < I.size(); ++i) {
        std::vector<std::int64_t> k(I[i].begin(), I[i].end());
        auto f = k;
        f[0] = -f[0];
        CHECK(I.contains(f));
        std::swap(k[0], k[2]);
        CHECK(I.contains(k));
    }
}

TEST_CASE("cardinality growth of the d=2 cross") {
    for (double N = 8; N <= 256; N *= 2) {
        const double a = static_cast<double>(generate_hc(2, N, 0).size());
        const double b = static_cast<double>(generate_hc(2, 2 * N, 0).size());
        CHECK(b / a >= 2);
        CHECK(b / a <= 2 * (1 + std::log2(2 * N) / std::log2(N)));
    }
}

TEST_CASE("parameter guards") {
    CHECK_THROWS_AS(generate_hc(2, 4, 1.0), InvalidArgument);
    CHECK_THROWS_AS(generate_hc(2, 0.5, 0), InvalidArgument);
    CHECK_THROWS_AS(generate_hc(0, 4, 0), InvalidArgument);
    CHECK_THROWS_AS(generate_hc(3, 64, 0, 1000), CapacityExceeded);
    CHECK_THROWS_AS(generate_dyadic(4, 10, 100), CapacityExceeded);
}

TEST_CASE("output is lexicographically sorted and duplicate-free") {
    const auto I = generate_hc(3, 10, -0.5);
    for (std::size_t i = 1; i < I.size(); ++i)
        CHECK(std::lexicographical_compare(I[i - 1].begin(), I[i - 1].end(), I[i].begin(), I[i].end()));
}

TEST_CASE("dyadic crosses") {
    for (int d = 1; d <= 4; ++d) CHECK(generate_dyadic(d, 0).size() == 1);
    const auto I13 = generate_dyadic(1, 3);
    CHECK(I13.size() == 8);
    CHECK(I13[0][0] == -3);
    CHECK(I13[7][0] == 4);
    // Brute-force union of boxes Q_j1 x ... over |j|_1 = n.
    auto Q = [](int j) {
        std::vector<std::int64_t> q;
        if (j == 0) return std::vector<std::int64_t>{0};
        for (std::int64_t v = 1 - (std::int64_t{1} << (j - 1)); v <= (std::int64_t{1} << (j - 1)); ++v) q.push_back(v);
        return q;
    };
    for (int d = 1; d <= 3; ++d)
        for (int n = 0; n <= 5; ++n) {
            std::set<std::vector<std::int64_t>> oracle;
            std::vector<int> j(d, 0);
            auto rec_j = [&](auto&& self, int s, int left) -> void {
                if (s == d - 1) {
                    j[s] = left;
                    std::vector<std::int64_t> k(d);
                    auto rec_k = [&](auto&& kself, int t) -> void {
                        if (t == d) {
                            oracle.insert(k);
                            return;
                        }
                        for (auto v : Q(j[t])) {
                            k[t] = v;
                            kself(kself, t + 1);
                        }
                    };
                    rec_k(rec_k, 0);
                    return;
                }
                for (int a = 0; a <= left; ++a) {
                    j[s] = a;
                    self(self, s + 1, left - a);
                }
            };
            rec_j(rec_j, 0, n);
            CAPTURE(d);
            CAPTURE(n);
            CHECK(as_set(generate_dyadic(d, n)) == oracle);
        }
}

TEST_CASE("filter_even, union and expansion") {
    const auto ball = generate_hc(3, 1, kMinusInf);
    const auto ev = filter_even(ball);
    REQUIRE(ev.size() == 1);
    CHECK(ev[0][0] == 0);
    CHECK(filter_even(FrequencyIndexSet()).empty());

    const auto I = generate_hc(2, 16, 0);
    const auto E = filter_even(I);
    for (std::size_t i = 0; i < E.size(); ++i) CHECK(I.contains(E[i]));
    CHECK(expansion(E) <= expansion(I));

    CHECK(expansion(FrequencyIndexSet::from_points(2, {{0, 0}})) == 0);
    CHECK(expansion(generate_hc(2, 1, kMinusInf)) == 2);
    CHECK(expansion(FrequencyIndexSet::from_points(2, {{-1, -1}, {0, 1}, {1, 0}})) == 2);
    CHECK(expansion(generate_hc(3, 7, kMinusInf)) == 14);
    CHECK_THROWS_AS(expansion(FrequencyIndexSet()), InvalidArgument);

    const auto U = set_union(generate_hc(2, 4, 0), generate_hc(2, 3, kMinusInf));
    CHECK(as_set(U).size() == U.size());
    const auto A = generate_hc(2, 4, 0), B = generate_hc(2, 3, kMinusInf);
    for (std::size_t i = 0; i < A.size(); ++i) CHECK(U.contains(A[i]));
    for (std::size_t i = 0; i < B.size(); ++i) CHECK(U.contains(B[i]));
}

TEST_CASE("explicit sets reject duplicates and find members") {
    CHECK_THROWS_AS(FrequencyIndexSet::from_points(2, {{1, 2}, {1, 2}}), InvalidArgument);
    const auto I = FrequencyIndexSet::from_points(2, {{3, 1}, {-1, 0}, {0, 5}});
    CHECK(I.find(std::vector<std::int64_t>{-1, 0}) == 0);
    CHECK(I.find(std::vector<std::int64_t>{3, 1}) == 2);
    CHECK(I.find(std::vector<std::int64_t>{3, 2}) == FrequencyIndexSet::npos);
}

TEST_CASE("text format round trip and hash") {
    const auto I = generate_hc(3, 9, 0.5);
    const std::string text = index_set_to_string(I);
    std::istringstream in(text);
    const auto J = read_index_set(in);
    CHECK(J == I);
    CHECK(index_set_to_string(J) == text);
    CHECK(index_set_hash(J) == index_set_hash(I));
    CHECK(index_set_hash(I).size() == 16);
    CHECK(index_set_hash(I) != index_set_hash(generate_hc(3, 8, 0.5)));

    for (const char* bad : {"", "d 2 count", "x 2 count 1\n0 0\n", "d 2 count 2\n0 0\n", "d 2 count 1\n0 a\n",
                            "d 2 count 1\n0 0 7\n", "d 1 count 2\n3\n3\n"}) {
        std::istringstream b(bad);
        CAPTURE(bad);
        CHECK_THROWS_AS(read_index_set(b), ParseError);
    }
}

TEST_CASE("set spec grammar") {
    auto s = parse_set_spec("hc:d=3,N=8,T=0");
    CHECK(s.family == SetSpec::Family::hc);
    CHECK(s.d == 3);
    CHECK(s.N == 8);
    CHECK(s.T == 0);
    CHECK_FALSE(s.even);
    s = parse_set_spec("hc:d=2,N=4.5,T=-inf,even");
    CHECK(std::isinf(s.T));
    CHECK(s.even);
    s = parse_set_spec("dyadic:d=2,n=5");
    CHECK(s.family == SetSpec::Family::dyadic);
    CHECK(s.n == 5);
    s = parse_set_spec("file:/tmp/x.txt");
    CHECK(s.path == "/tmp/x.txt");
    CHECK(materialize(parse_set_spec("hc:d=2,N=32,T=0,even")).size() == 145);
    for (const char* bad : {"hc", "hc:d=2,N=4", "hc:d=2,N=4,T=1", "hc:d=x,N=4,T=0", "box:d=2", "hc:d=2,N=4,T=0,q=1",
                            "dyadic:d=2", "hc:d=0,N=4,T=0", "hc:d=2,N=0.5,T=0", "file:", "hc:d=2,d=3,N=4,T=0"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_set_spec(bad), ParseError);
    }
}
