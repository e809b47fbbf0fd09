#include "mlfft/testfuncs.hpp"

#include <cmath>
#include <numbers>

#include "mlfft/errors.hpp"
#include "mlfft/special.hpp"

namespace mlfft {

namespace {

using ld = long double;
constexpr ld kPi = std::numbers::pi_v<ld>;

const ld kC34 = 8 * std::sqrt(6 * kPi / (6369 * kPi - 4096));
const ld kC3 = 4 * std::sqrt(3 * kPi / (207 * kPi - 256));
const ld kKink = 121 * std::sqrt(33.0L) / 100;
constexpr ld kA = 5.0L / 11;

// Coefficient of |sin 2 pi x|^3 (times -1) at even k.
ld abs_sin3_even(std::int64_t k) {
    const ld k2 = static_cast<ld>(k) * static_cast<ld>(k);
    return -12 / (kPi * (1 - k2) * (9 - k2));
}

struct CoeffLd {
    ld re = 0, im = 0;
};

CoeffLd closed_form(TestFunctionKind kind, std::int64_t k) {
    switch (kind) {
        case TestFunctionKind::g34:
            if (k == 0) return {kC34 * (4 - 4 / (3 * kPi)), 0};
            if (k % 2 == 0) return {kC34 * abs_sin3_even(k), 0};
            {
                const ld kk = static_cast<ld>(k), k2 = kk * kk;
                return {0, kC34 * 48 / (kPi * kk * (k2 - 4) * (k2 - 16))};
            }
        case TestFunctionKind::g3:
            if (k == 0) return {kC3 * (2 - 4 / (3 * kPi)), 0};
            if (k % 2 == 0) return {kC3 * abs_sin3_even(k), 0};
            return {0, 0};
        case TestFunctionKind::kink: {
            if (k == 0) return {kKink * 4 * kA * kA * kA / 3, 0};
            const ld kk = static_cast<ld>(k);
            const ld w = 2 * kPi * kk;
            // w*a = 2 pi (5k/11); reduce the angle exactly.
            std::int64_t r = (5 * (k % 11)) % 11;
            if (r < 0) r += 11;
            const ld th = 2 * kPi * static_cast<ld>(r) / 11;
            const ld sign = (k % 2 == 0) ? 1 : -1;
            return {kKink * sign * 4 * (std::sin(th) - w * kA * std::cos(th)) / (w * w * w), 0};
        }
    }
    return {};
}

}  // namespace

TestFunctionKind parse_test_function(const std::string& name) {
    if (name == "g34") return TestFunctionKind::g34;
    if (name == "g3") return TestFunctionKind::g3;
    if (name == "kink") return TestFunctionKind::kink;
    throw ParseError("unknown test function '" + name + "' (expected g34, g3 or kink)");
}

std::string to_string(TestFunctionKind kind) {
    switch (kind) {
        case TestFunctionKind::g34: return "g34";
        case TestFunctionKind::g3: return "g3";
        case TestFunctionKind::kink: return "kink";
    }
    return "?";
}

const OneDimFactor& OneDimFactor::get(TestFunctionKind kind) {
    static const OneDimFactor g34(TestFunctionKind::g34);
    static const OneDimFactor g3(TestFunctionKind::g3);
    static const OneDimFactor kink(TestFunctionKind::kink);
    switch (kind) {
        case TestFunctionKind::g34: return g34;
        case TestFunctionKind::g3: return g3;
        case TestFunctionKind::kink: return kink;
    }
    throw InvalidArgument("unknown test function kind");
}

OneDimFactor::OneDimFactor(TestFunctionKind kind) : kind_(kind), kmax_(std::int64_t{1} << 16) {
    // Large-k expansions of |c_k| and |c_k|^2 per residue class.
    if (kind == TestFunctionKind::kink) {
        // Exact for k >= 3: the bracket sin(th) - 2 pi a k cos(th) keeps the sign of -cos(th).
        modulus_ = 11;
        const ld kappa = 4 * kKink / (8 * kPi * kPi * kPi);
        for (auto& s : series_) s.assign(11, {});
        for (int r = 0; r < 11; ++r) {
            const ld th = 2 * kPi * static_cast<ld>((5 * r) % 11) / 11;
            ld alpha = -2 * kPi * kA * std::cos(th) * kappa;
            ld beta = std::sin(th) * kappa;
            if (alpha < 0) {
                alpha = -alpha;
                beta = -beta;
            }
            series_[0][r] = {{2, alpha}, {3, beta}};
            series_[1][r] = {{4, alpha * alpha}, {5, 2 * alpha * beta}, {6, beta * beta}};
        }
    } else {
        modulus_ = 2;
        for (auto& s : series_) s.assign(2, {});
        const ld C = kind == TestFunctionKind::g34 ? kC34 : kC3;
        const ld A = 12 * C / kPi;
        series_[0][0] = {{4, A}, {6, 10 * A}, {8, 91 * A}};
        series_[1][0] = {{8, A * A}, {10, 20 * A * A}, {12, 282 * A * A}};
        if (kind == TestFunctionKind::g34) {
            const ld B = 48 * C / kPi;
            series_[0][1] = {{5, B}, {7, 20 * B}, {9, 336 * B}};
            series_[1][1] = {{10, B * B}, {12, 40 * B * B}, {14, 1072 * B * B}};
        }
    }
    for (int p = 0; p < 2; ++p) {
        suffix_[p].assign(static_cast<std::size_t>(kmax_) + 2, 0);
        suffix_[p][kmax_ + 1] = analytic_suffix(kmax_ + 1, p + 1);
        for (std::int64_t n = kmax_; n >= 0; --n) suffix_[p][n] = suffix_[p][n + 1] + weight(n, p + 1);
        total_[p] = 2 * suffix_[p][1] + suffix_[p][0] - suffix_[p][1];
    }
}

long double OneDimFactor::analytic_suffix(std::int64_t n, int power) const {
    const auto& classes = series_[power - 1];
    const auto m = static_cast<std::int64_t>(modulus_);
    ld sum = 0;
    for (std::int64_t r = 0; r < m; ++r) {
        const std::int64_t k0 = n + (((r - n) % m) + m) % m;
        for (const auto& t : classes[r])
            sum += t.coef * std::pow(static_cast<ld>(m), -static_cast<ld>(t.p)) *
                   hurwitz_zeta(t.p, static_cast<ld>(k0) / static_cast<ld>(m));
    }
    return sum;
}

double OneDimFactor::eval(double x) const {
    x -= std::floor(x);
    switch (kind_) {
        case TestFunctionKind::g34: {
            const double s = std::sin(2 * std::numbers::pi * x);
            const double sgn = x > 0.5 ? 1.0 : (x < 0.5 ? -1.0 : 0.0);
            const double a = std::fabs(s);
            return static_cast<double>(kC34) * (4 - a * a * a + sgn * s * s * s * s);
        }
        case TestFunctionKind::g3: {
            const double a = std::fabs(std::sin(2 * std::numbers::pi * x));
            return static_cast<double>(kC3) * (2 - a * a * a);
        }
        case TestFunctionKind::kink: {
            const double t = x - 0.5;
            return static_cast<double>(kKink) * std::max(25.0 / 121.0 - t * t, 0.0);
        }
    }
    return 0;
}

cplx OneDimFactor::coeff(std::int64_t k) const {
    const auto c = closed_form(kind_, k);
    return {static_cast<double>(c.re), static_cast<double>(c.im)};
}

long double OneDimFactor::weight(std::int64_t j, int power) const {
    const auto c = closed_form(kind_, j);
    const ld sq = c.re * c.re + c.im * c.im;
    return power == 1 ? std::sqrt(sq) : sq;
}

long double OneDimFactor::sum_from(std::int64_t a, int power) const {
    const auto& suf = suffix_[power - 1];
    auto at = [&](std::int64_t n) { return n <= kmax_ + 1 ? suf[n] : analytic_suffix(n, power); };
    if (a >= 0) return at(a);
    // Symmetric weights: sum_{j>=a} = sum_{j>=0} + sum_{1<=j<=|a|}.
    return suf[0] + (suf[1] - at(-a + 1));
}

TensorTestFunction::TensorTestFunction(TestFunctionKind kind, int dim) : factor_(&OneDimFactor::get(kind)), dim_(dim) {
    if (dim < 1) throw InvalidArgument("test function dimension must be >= 1");
}

double TensorTestFunction::eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_) throw InvalidArgument("point has wrong dimension");
    double v = 1;
    for (double xs : x) v *= factor_->eval(xs);
    return v;
}

cplx TensorTestFunction::coeff_1d(std::int64_t k) const {
    if (k > kCoeffCap || k < -kCoeffCap) throw InvalidArgument("frequency beyond coefficient cap");
    return factor_->coeff(k);
}

cplx TensorTestFunction::tensor_coeff(std::span<const std::int64_t> k) const {
    if (static_cast<int>(k.size()) != dim_) throw InvalidArgument("frequency has wrong dimension");
    cplx v = 1;
    for (auto ks : k) v *= coeff_1d(ks);
    return v;
}

double TensorTestFunction::a_norm_1d() const { return static_cast<double>(factor_->total(1)); }
double TensorTestFunction::l2_norm_1d() const { return static_cast<double>(std::sqrt(factor_->total(2))); }
double TensorTestFunction::a_norm() const { return static_cast<double>(std::pow(factor_->total(1), dim_)); }
double TensorTestFunction::l2_norm() const { return static_cast<double>(std::pow(std::sqrt(factor_->total(2)), dim_)); }

long double TensorTestFunction::complement_sum(const FrequencyIndexSet& I, int power) const {
    const ld total = factor_->total(power);
    if (I.empty()) return std::pow(total, dim_);
    if (I.dim() != dim_) throw InvalidArgument("index set dimension differs from function dimension");
    const OneDimFactor& f = *factor_;
    // Rows [lo, hi) agree in their first s coordinates.
    auto rec = [&](auto&& self, std::size_t lo, std::size_t hi, int s) -> ld {
        if (s == dim_) return 0;
        const ld rest = std::pow(total, dim_ - s - 1);
        ld inside = 0;
        ld holes = 0;
        std::int64_t first = I[lo][s], prev = first;
        std::size_t g = lo;
        while (g < hi) {
            const std::int64_t j = I[g][s];
            for (std::int64_t h = prev + 1; h < j; ++h) holes += f.weight(h, power);
            std::size_t e = g + 1;
            while (e < hi && I[e][s] == j) ++e;
            inside += f.weight(j, power) * self(self, g, e, s + 1);
            prev = j;
            g = e;
        }
        const ld outside = f.sum_from(-first + 1, power) + f.sum_from(prev + 1, power) + holes;
        return outside * rest + inside;
    };
    return rec(rec, 0, I.size(), 0);
}

long double TensorTestFunction::tail_a_sum(const FrequencyIndexSet& I) const { return complement_sum(I, 1); }
long double TensorTestFunction::tail_l2_squared(const FrequencyIndexSet& I) const { return complement_sum(I, 2); }

}  // namespace mlfft
