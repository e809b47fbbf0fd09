#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mlfft/index_set.hpp"
#include "mlfft/lattice.hpp"
#include "mlfft/testfuncs.hpp"
#include "mlfft/transform.hpp"

namespace mlfft {

// -(1/|L_k|) sum_{l in L_k} sum_{h in dual(l) \ {0}} f_{k+h}, by brute force over
// the exterior support (which must be disjoint from I).
std::vector<cplx> aliasing_error_exact(const MultipleLattice& ml, const FrequencyIndexSet& exterior,
                                       std::span<const cplx> exterior_coeffs);

struct RelativeErrors {
    double rel_a = 0;
    double rel_l2 = 0;
    std::vector<std::string> warnings;
};

RelativeErrors relative_errors(const TensorTestFunction& fn, const FrequencyIndexSet& I, std::span<const cplx> approx);

enum class BoundKind {
    multiple_hrt,     // multiple lattices, H^{r,t} target, case split on T
    multiple_linf_a,  // multiple lattices, L_inf via Wiener algebra, case split on alpha
    single_l2,
    single_linf,
    single_a,
    linear_l2,
    sparse_grid_l2,
};

BoundKind parse_bound_kind(const std::string& name);  // throws ParseError
std::string to_string(BoundKind kind);

struct BoundParams {
    int d = 2;
    double alpha = 0, beta = 0;
    double r = 0, t = 0;
    double lambda = 0.5;
    double T = 0;
    double epsilon = 0;
    double scale = 1;
};

// Every curve has the form scale * M^{-p} (ln M)^q.
struct BoundShape {
    double p = 0;
    double q = 0;
};

BoundShape bound_shape(const BoundParams& params, BoundKind kind);
double bound_curve(const BoundParams& params, BoundKind kind, double M);
// The curve decreases for M above this value (infinity if p <= 0).
double bound_knee(const BoundParams& params, BoundKind kind);
// scale such that the curve passes through (M0, err0).
double fit_scale(BoundParams params, BoundKind kind, double M0, double err0);

// prod_s (1 + 2 zeta(2 lambda))^{1/2}, lambda > 1/2.
double embedding_constant(int d, double lambda);

struct ErrorRecord {
    std::string scheme;  // "single" or "multiple"
    int d = 0;
    double T = 0;
    double N = 0;
    std::size_t cardinality = 0;
    std::int64_t M = 0;
    int L = 0;
    double rel_err_A = 0;
    double rel_err_L2 = 0;
    std::uint64_t seed = 0;
};

enum class ErrorMetric { A, L2 };

// Least-squares slope of log(err) against log(M) over the tail_count records
// with largest M. Needs >= 3 records with distinct M.
double fit_rate(std::vector<ErrorRecord> records, std::size_t tail_count, ErrorMetric metric = ErrorMetric::L2);

}  // namespace mlfft
