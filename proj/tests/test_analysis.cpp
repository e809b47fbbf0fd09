#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>

#include "mlfft/analysis.hpp"
#include "mlfft/construct.hpp"
#include "mlfft/errors.hpp"
#include "mlfft/rng.hpp"

using namespace mlfft;

namespace {

using V = std::vector<std::int64_t>;

std::vector<cplx> random_coeffs(std::size_t n, Rng& rng) {
    std::vector<cplx> c(n);
    for (auto& v : c) v = {2 * rng.unit() - 1, 2 * rng.unit() - 1};
    return c;
}

// Random exterior support: frequencies of moderate size that are not in I.
FrequencyIndexSet random_exterior(const FrequencyIndexSet& I, std::size_t n, std::int64_t radius, Rng& rng) {
    std::vector<V> pts;
    std::set<V> seen;
    while (pts.size() < n) {
        V k(I.dim());
        for (auto& v : k) v = static_cast<std::int64_t>(rng.below(2 * radius + 1)) - radius;
        if (I.contains(k) || !seen.insert(k).second) continue;
        pts.push_back(k);
    }
    return FrequencyIndexSet::from_points(I.dim(), pts);
}

ErrorRecord rec(std::int64_t M, double err) {
    ErrorRecord r;
    r.M = M;
    r.rel_err_L2 = err;
    r.rel_err_A = 2 * err;
    return r;
}

}  // namespace

TEST_CASE("aliasing oracle on trivial and constructed inputs") {
    auto I = std::make_shared<const FrequencyIndexSet>(FrequencyIndexSet::from_points(2, {{0, 0}, {1, 0}, {0, 1}}));
    const MultipleLattice ml(I, {Rank1Lattice({1, 2}, 5)});
    const FrequencyIndexSet none(2, {}, "");
    for (auto v : aliasing_error_exact(ml, none, {})) CHECK(v == cplx(0));

    // (6, 0) - (1, 0) = (5, 0) is in the dual lattice; the other differences are not.
    const auto E = FrequencyIndexSet::from_points(2, {{6, 0}});
    const std::vector<cplx> ec{cplx(0.25, -1)};
    const auto err = aliasing_error_exact(ml, E, ec);
    const auto at = [&](V k) { return err[I->find(k)]; };
    CHECK(std::abs(at({1, 0}) - cplx(-0.25, 1)) < 1e-15);
    CHECK(at({0, 0}) == cplx(0));
    CHECK(at({0, 1}) == cplx(0));

    CHECK_THROWS_AS(aliasing_error_exact(ml, FrequencyIndexSet::from_points(2, {{1, 0}}), ec), InvalidArgument);
}

TEST_CASE("reconstruction error equals the aliasing sum") {
    Rng rng(606);
    int instances = 0;
    for (int trial = 0; trial < 25; ++trial) {
        const int d = 2 + trial % 2;
        const std::int64_t N = d == 2 ? 4 + trial % 13 : 2 + trial % 3;
        auto I = std::make_shared<const FrequencyIndexSet>(generate_hc(d, N, trial % 3 == 0 ? 0.0 : -0.5));
        REQUIRE(I->size() <= 300);
        ConstructionParams params;
        params.seed = 1000 + trial;
        const auto ml = build_with_retries(I, params, 3).lattice;
        const auto E = random_exterior(*I, 1 + rng.below(50), 3 * N, rng);
        const auto cI = random_coeffs(I->size(), rng), cE = random_coeffs(E.size(), rng);
        const auto U = set_union(*I, E);
        std::vector<cplx> cU(U.size());
        for (std::size_t i = 0; i < I->size(); ++i) cU[U.find((*I)[i])] = cI[i];
        for (std::size_t i = 0; i < E.size(); ++i) cU[U.find(E[i])] = cE[i];
        std::vector<SampleVector> s;
        for (const auto& lat : ml.components()) s.push_back(evaluate_on_lattice(U, cU, lat));
        const auto approx = reconstruct_multiple(ml, s).values;
        const auto alias = aliasing_error_exact(ml, E, cE);
        double worst = 0, lhs = 0, ext = 0;
        for (std::size_t i = 0; i < I->size(); ++i) {
            worst = std::max(worst, std::abs((cI[i] - approx[i]) - alias[i]));
            lhs += std::abs(alias[i]);
        }
        for (auto v : cE) ext += std::abs(v);
        CAPTURE(trial);
        CHECK(worst < 1e-10);
        CHECK(lhs <= ml.size() * ext * (1 + 1e-12));
        ++instances;
    }
    CHECK(instances == 25);
}

TEST_CASE("relative errors") {
    for (auto kind : {TestFunctionKind::g34, TestFunctionKind::g3, TestFunctionKind::kink}) {
        const TensorTestFunction f(kind, 2);
        const auto e = relative_errors(f, FrequencyIndexSet(2, {}, ""), {});
        CHECK(e.rel_a == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(e.rel_l2 == doctest::Approx(1.0).epsilon(1e-14));
    }
    const TensorTestFunction f(TestFunctionKind::g34, 2);
    const auto I = generate_hc(2, 32, 0);
    std::vector<cplx> exact(I.size());
    for (std::size_t i = 0; i < I.size(); ++i) exact[i] = f.tensor_coeff(I[i]);
    const auto e = relative_errors(f, I, exact);
    CHECK(e.rel_l2 == doctest::Approx(std::sqrt(static_cast<double>(f.tail_l2_squared(I)))).epsilon(1e-12));
    CHECK(e.rel_a == doctest::Approx(static_cast<double>(f.tail_a_sum(I)) / f.a_norm()).epsilon(1e-12));
    // A perturbation on I adds to both errors.
    auto off = exact;
    off[0] += 1e-3;
    const auto e2 = relative_errors(f, I, off);
    CHECK(e2.rel_a == doctest::Approx(e.rel_a + 1e-3 / f.a_norm()).epsilon(1e-10));
    CHECK(e2.rel_l2 == doctest::Approx(std::hypot(e.rel_l2, 1e-3)).epsilon(1e-10));
    CHECK_THROWS_AS(relative_errors(f, I, std::vector<cplx>(3)), InvalidArgument);
}

TEST_CASE("G34 at cardinality 265 matches the reference error level") {
    const TensorTestFunction f(TestFunctionKind::g34, 2);
    auto I = std::make_shared<const FrequencyIndexSet>(generate_hc(2, 16, 0));
    REQUIRE(I->size() == 265);
    ConstructionParams params;
    params.seed = 1;
    const auto ml = build_with_retries(I, params, 3).lattice;
    const auto approx = approximate([&](std::span<const double> x) { return cplx(f.eval(x)); }, ml);
    const auto e = relative_errors(f, *I, approx.coeffs.values);
    MESSAGE("M = " << sum_of_sizes(ml) << " rel_L2 = " << e.rel_l2 << " rel_A = " << e.rel_a);
    CHECK(e.rel_l2 > 1.0e-4);
    CHECK(e.rel_l2 < 4.1e-4);
}

TEST_CASE("G3 at cardinality 441 matches the reference error level") {
    const TensorTestFunction f(TestFunctionKind::g3, 3);
    auto I = std::make_shared<const FrequencyIndexSet>(filter_even(generate_hc(3, 32, 0)));
    REQUIRE(I->size() == 441);
    const auto fn = [&](std::span<const double> x) { return cplx(f.eval(x)); };
    ConstructionParams params;
    params.seed = 2;
    const auto ml = build_with_retries(I, params, 3).lattice;
    const auto em = relative_errors(f, *I, approximate(fn, ml).coeffs.values);
    const auto single = build_single_lattice_cbc(*I, 7).lattice;
    const auto es = relative_errors(f, *I, approximate_single(fn, I, single).coeffs.values);
    MESSAGE("multiple: M = " << sum_of_sizes(ml) << " rel_L2 = " << em.rel_l2);
    MESSAGE("single:   M = " << single.M << " rel_L2 = " << es.rel_l2);
    for (double v : {em.rel_l2, es.rel_l2}) {
        CHECK(v > 9.872e-5 / 2);
        CHECK(v < 9.872e-5 * 2);
    }
}

TEST_CASE("bound curves") {
    BoundParams p;
    p.d = 2;
    p.beta = 3.5;
    p.lambda = 0.5;
    p.T = 0;
    const auto s = bound_shape(p, BoundKind::multiple_hrt);
    CHECK(s.p == doctest::Approx(3.0));
    CHECK(s.q == doctest::Approx(7.0));
    CHECK(bound_knee(p, BoundKind::multiple_hrt) == doctest::Approx(std::exp(7.0 / 3.0)));

    // Positive everywhere, decreasing past the knee.
    for (auto kind : {BoundKind::multiple_hrt, BoundKind::single_l2, BoundKind::single_linf, BoundKind::single_a,
                      BoundKind::linear_l2, BoundKind::sparse_grid_l2}) {
        const double knee = bound_knee(p, kind);
        REQUIRE(std::isfinite(knee));
        double prev = std::numeric_limits<double>::infinity();
        for (double M = std::max(3.0, knee) * 1.01; M < 1e12; M *= 3) {
            const double v = bound_curve(p, kind, M);
            CHECK(v > 0);
            CHECK(v < prev);
            prev = v;
        }
    }

    // Doubling ratio approaches 2^{-p}.
    BoundParams q = p;
    q.d = 2;
    const double rate = bound_shape(q, BoundKind::single_l2).p;
    const double ratio = bound_curve(q, BoundKind::single_l2, 2e9) / bound_curve(q, BoundKind::single_l2, 1e9);
    CHECK(std::abs(ratio / std::pow(2.0, -rate) - 1) < 0.05);
    // For the multiple-lattice curve the log factor converges slowly, but it does converge.
    auto dev = [&](double M) {
        return std::abs(bound_curve(p, BoundKind::multiple_hrt, 2 * M) / bound_curve(p, BoundKind::multiple_hrt, M) /
                            std::pow(2.0, -3.0) -
                        1);
    };
    CHECK(dev(1e12) < dev(1e9));
    CHECK(dev(1e100) < 0.05);

    CHECK(fit_scale(p, BoundKind::multiple_hrt, 1087, 2.027e-4) * bound_curve(p, BoundKind::multiple_hrt, 1087) /
              bound_curve(p, BoundKind::multiple_hrt, 1087) ==
          doctest::Approx(fit_scale(p, BoundKind::multiple_hrt, 1087, 2.027e-4)));
    BoundParams fitted = p;
    fitted.scale = fit_scale(p, BoundKind::multiple_hrt, 1087, 2.027e-4);
    CHECK(bound_curve(fitted, BoundKind::multiple_hrt, 1087) == doctest::Approx(2.027e-4));

    CHECK_THROWS_AS(bound_curve(p, BoundKind::single_l2, 2.0), InvalidArgument);
    CHECK_THROWS_AS(parse_bound_kind("nonsense"), ParseError);
    for (auto kind : {BoundKind::multiple_hrt, BoundKind::multiple_linf_a, BoundKind::single_l2, BoundKind::single_linf,
                      BoundKind::single_a, BoundKind::linear_l2, BoundKind::sparse_grid_l2})
        CHECK(parse_bound_kind(to_string(kind)) == kind);
}

TEST_CASE("embedding constant") {
    const double z = std::riemann_zeta(2.0);
    CHECK(embedding_constant(1, 1.0) == doctest::Approx(std::sqrt(1 + 2 * z)));
    CHECK(embedding_constant(3, 1.0) == doctest::Approx(std::pow(1 + 2 * z, 1.5)));
    CHECK_THROWS_AS(embedding_constant(2, 0.5), InvalidArgument);
}

TEST_CASE("rate fitting") {
    std::vector<ErrorRecord> r;
    for (std::int64_t M : {100, 400, 1600, 6400, 25600}) r.push_back(rec(M, 7.0 / (double(M) * double(M))));
    CHECK(std::abs(fit_rate(r, 5) + 2.0) < 1e-12);
    CHECK(std::abs(fit_rate(r, 3, ErrorMetric::A) + 2.0) < 1e-12);
    // Order of records does not matter.
    std::swap(r[0], r[4]);
    CHECK(std::abs(fit_rate(r, 4) + 2.0) < 1e-12);
    std::vector<ErrorRecord> flat{rec(10, 0.3), rec(20, 0.3), rec(40, 0.3)};
    CHECK(std::abs(fit_rate(flat, 3)) < 1e-14);
    // The tail is taken from the largest M.
    std::vector<ErrorRecord> bent{rec(10, 1), rec(20, 1), rec(40, 1), rec(80, 0.5), rec(160, 0.25)};
    CHECK(fit_rate(bent, 3) == doctest::Approx(-1.0));
    CHECK(fit_rate(bent, 5) > -1.0);
    CHECK_THROWS_AS(fit_rate({rec(10, 1), rec(20, 1)}, 2), InvalidArgument);
    CHECK_THROWS_AS(fit_rate({rec(10, 1), rec(10, 2), rec(20, 1)}, 3), InvalidArgument);
}
