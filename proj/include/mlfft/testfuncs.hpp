#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mlfft/fft.hpp"
#include "mlfft/index_set.hpp"

namespace mlfft {

enum class TestFunctionKind { g34, g3, kink };

TestFunctionKind parse_test_function(const std::string& name);  // throws ParseError
std::string to_string(TestFunctionKind kind);

// One-dimensional factor with closed-form Fourier coefficients and
// cancellation-free sums of |c_k| and |c_k|^2 over arbitrary ranges.
class OneDimFactor {
public:
    static const OneDimFactor& get(TestFunctionKind kind);

    TestFunctionKind kind() const { return kind_; }
    double eval(double x) const;
    cplx coeff(std::int64_t k) const;
    // sum_{j >= a} |c_j|^power for power in {1, 2}; a may be negative.
    long double sum_from(std::int64_t a, int power) const;
    // |c_j|^power.
    long double weight(std::int64_t j, int power) const;
    // sum over all j of |c_j|^power.
    long double total(int power) const { return total_[power - 1]; }

    std::int64_t table_size() const { return kmax_; }

private:
    explicit OneDimFactor(TestFunctionKind kind);
    // Suffix sum over j >= n for n beyond the table.
    long double analytic_suffix(std::int64_t n, int power) const;

    struct Term {
        int p;
        long double coef;
    };
    TestFunctionKind kind_;
    std::int64_t kmax_;
    int modulus_ = 1;
    // series_[power-1][r]: |c_k|^power = sum coef k^{-p} for k = r mod modulus_, k > kmax_.
    std::vector<std::vector<Term>> series_[2];
    std::vector<long double> suffix_[2];  // suffix_[p][n] = sum_{j>=n} |c_j|^p, 0 <= n <= kmax_+1
    long double total_[2] = {0, 0};
};

class TensorTestFunction {
public:
    TensorTestFunction(TestFunctionKind kind, int dim);

    TestFunctionKind kind() const { return factor_->kind(); }
    std::string name() const { return to_string(kind()); }
    int dim() const { return dim_; }
    const OneDimFactor& factor() const { return *factor_; }

    double eval(std::span<const double> x) const;
    cplx coeff_1d(std::int64_t k) const;
    cplx tensor_coeff(std::span<const std::int64_t> k) const;

    double a_norm_1d() const;
    double l2_norm_1d() const;
    double a_norm() const;
    double l2_norm() const;

    // sum over the complement of I of |f_k| and |f_k|^2, summed directly
    // over the complement so that tiny tails keep full relative accuracy.
    long double tail_a_sum(const FrequencyIndexSet& I) const;
    long double tail_l2_squared(const FrequencyIndexSet& I) const;

    // Largest |k| accepted by coeff_1d.
    static constexpr std::int64_t kCoeffCap = std::int64_t{1} << 40;

private:
    long double complement_sum(const FrequencyIndexSet& I, int power) const;

    const OneDimFactor* factor_;
    int dim_;
};

}  // namespace mlfft
