#include "mlfft/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "mlfft/errors.hpp"

namespace mlfft {

std::vector<cplx> aliasing_error_exact(const MultipleLattice& ml, const FrequencyIndexSet& exterior,
                                       std::span<const cplx> exterior_coeffs) {
    const FrequencyIndexSet& I = ml.index_set();
    if (exterior_coeffs.size() != exterior.size()) throw InvalidArgument("exterior coefficients do not match support");
    for (std::size_t e = 0; e < exterior.size(); ++e)
        if (I.contains(exterior[e])) throw InvalidArgument("exterior support intersects the index set");
    std::vector<cplx> acc(I.size());
    for (std::size_t l = 0; l < ml.size(); ++l) {
        const auto& lat = ml.components()[l];
        // k + h with h in the dual lattice <=> same residue as k.
        std::unordered_map<std::int64_t, cplx> by_residue;
        for (std::size_t e = 0; e < exterior.size(); ++e) by_residue[residue(exterior[e], lat)] += exterior_coeffs[e];
        for (auto i : ml.free_indices()[l])
            if (auto it = by_residue.find(residue(I[i], lat)); it != by_residue.end()) acc[i] += it->second;
    }
    for (std::size_t i = 0; i < I.size(); ++i)
        acc[i] = ml.counters()[i] ? -acc[i] / static_cast<double>(ml.counters()[i]) : cplx{};
    return acc;
}

RelativeErrors relative_errors(const TensorTestFunction& fn, const FrequencyIndexSet& I, std::span<const cplx> approx) {
    if (approx.size() != I.size()) throw InvalidArgument("approximation does not match index set");
    RelativeErrors out;
    long double diff_a = 0, diff_l2 = 0;
    for (std::size_t i = 0; i < I.size(); ++i) {
        const cplx d = fn.tensor_coeff(I[i]) - approx[i];
        const long double re = d.real(), im = d.imag();
        const long double sq = re * re + im * im;
        diff_l2 += sq;
        diff_a += std::sqrt(sq);
    }
    long double tail_a = fn.tail_a_sum(I);
    long double tail_l2 = fn.tail_l2_squared(I);
    for (auto* t : {&tail_a, &tail_l2}) {
        if (*t < 0) {
            if (*t < -1e-12L) out.warnings.push_back("negative truncation tail clamped to zero");
            *t = 0;
        }
    }
    out.rel_a = static_cast<double>((tail_a + diff_a) / fn.a_norm());
    out.rel_l2 = static_cast<double>(std::sqrt(tail_l2 + diff_l2) / fn.l2_norm());
    return out;
}

BoundKind parse_bound_kind(const std::string& name) {
    for (auto k : {BoundKind::multiple_hrt, BoundKind::multiple_linf_a, BoundKind::single_l2, BoundKind::single_linf,
                   BoundKind::single_a, BoundKind::linear_l2, BoundKind::sparse_grid_l2})
        if (to_string(k) == name) return k;
    throw ParseError("unknown bound kind '" + name + "'");
}

std::string to_string(BoundKind kind) {
    switch (kind) {
        case BoundKind::multiple_hrt: return "multiple_hrt";
        case BoundKind::multiple_linf_a: return "multiple_linf_a";
        case BoundKind::single_l2: return "single_l2";
        case BoundKind::single_linf: return "single_linf";
        case BoundKind::single_a: return "single_a";
        case BoundKind::linear_l2: return "linear_l2";
        case BoundKind::sparse_grid_l2: return "sparse_grid_l2";
    }
    return "?";
}

BoundShape bound_shape(const BoundParams& P, BoundKind kind) {
    const double d = P.d;
    if (P.d < 1) throw InvalidArgument("bound needs d >= 1");
    switch (kind) {
        case BoundKind::multiple_hrt: {
            if (!(P.T < 1)) throw InvalidArgument("bound needs T < 1");
            if (std::isinf(P.T)) {
                const double e = (P.alpha - P.r + P.beta - P.lambda - P.epsilon) / d;
                return {e, e + 1};
            }
            const double e = P.alpha - P.r + P.beta - P.t - P.lambda - P.epsilon;
            if (P.T < 0) {
                const double f = (P.T / d - 1) / (P.T - 1) * e;
                return {f, f + 1};
            }
            if (P.T == 0) return {e, d * e + 1};
            return {e, e + 1};
        }
        case BoundKind::multiple_linf_a: {
            if (P.alpha > 0 && P.beta >= 0) {
                const double e = P.alpha / d + P.beta;
                return {e, e + 1};
            }
            if (P.alpha == 0 && P.beta > 0) return {P.beta, d * P.beta + 1};
            if (P.alpha < 0 && P.alpha > -P.beta) return {P.alpha + P.beta, P.alpha + P.beta + 1};
            throw InvalidArgument("multiple_linf_a needs alpha > -beta and not alpha = beta = 0");
        }
        case BoundKind::single_l2: return {P.beta / 2, (d - 2) * P.beta / 2 + (d - 1) / 2};
        case BoundKind::single_linf: {
            const double e = P.beta / 2 - 0.25;
            return {e, (d - 2) * e + (d - 1) / 2};
        }
        case BoundKind::single_a: return {P.beta / 2, (d - 2) * P.beta / 2};
        case BoundKind::linear_l2: return {P.beta, (d - 1) * P.beta + (d - 1) / 2};
        case BoundKind::sparse_grid_l2: return {P.beta, (d - 1) * (P.beta + 0.5)};
    }
    throw InvalidArgument("unknown bound kind");
}

double bound_curve(const BoundParams& params, BoundKind kind, double M) {
    if (!(M >= 3)) throw InvalidArgument("bound curves need M >= 3");
    const auto s = bound_shape(params, kind);
    return params.scale * std::exp(-s.p * std::log(M) + s.q * std::log(std::log(M)));
}

double bound_knee(const BoundParams& params, BoundKind kind) {
    const auto s = bound_shape(params, kind);
    if (s.p <= 0) return std::numeric_limits<double>::infinity();
    return std::max(3.0, std::exp(s.q / s.p));
}

double fit_scale(BoundParams params, BoundKind kind, double M0, double err0) {
    params.scale = 1;
    return err0 / bound_curve(params, kind, M0);
}

double embedding_constant(int d, double lambda) {
    if (!(lambda > 0.5)) throw InvalidArgument("embedding constant needs lambda > 1/2");
    return std::pow(1 + 2 * std::riemann_zeta(2 * lambda), d / 2.0);
}

double fit_rate(std::vector<ErrorRecord> records, std::size_t tail_count, ErrorMetric metric) {
    if (records.size() < 3) throw InvalidArgument("fit_rate needs at least 3 records");
    if (tail_count < 2) throw InvalidArgument("fit_rate needs tail_count >= 2");
    std::sort(records.begin(), records.end(), [](const ErrorRecord& a, const ErrorRecord& b) { return a.M < b.M; });
    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].M == records[i - 1].M) throw InvalidArgument("fit_rate needs strictly increasing M");
    const std::size_t n = std::min(tail_count, records.size());
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = records.size() - n; i < records.size(); ++i) {
        const double err = metric == ErrorMetric::L2 ? records[i].rel_err_L2 : records[i].rel_err_A;
        if (!(err > 0)) throw InvalidArgument("fit_rate needs positive errors");
        const long double x = std::log(static_cast<long double>(records[i].M));
        const long double y = std::log(static_cast<long double>(err));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const long double nn = static_cast<long double>(n);
    return static_cast<double>((nn * sxy - sx * sy) / (nn * sxx - sx * sx));
}

}  // namespace mlfft
