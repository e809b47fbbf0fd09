#include "mlfft/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace mlfft {

namespace {

bool is_pow2(std::size_t n) { return n && (n & (n - 1)) == 0; }

inline cplx mul(cplx a, cplx b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// Iterative radix-2 transform. Twiddles are stored stage by stage so the inner loop reads them contiguously.
class Radix2Plan {
public:
    explicit Radix2Plan(std::size_t n) : n_(n), tw_(n > 1 ? n - 1 : 0), rev_(n) {
        // Stage with half-length h uses tw_[h - 1 + j] = e^{-i pi j / h}.
        for (std::size_t h = 1; h < n; h <<= 1)
            for (std::size_t j = 0; j < h; ++j) {
                const double a = -std::numbers::pi * static_cast<double>(j) / static_cast<double>(h);
                tw_[h - 1 + j] = {std::cos(a), std::sin(a)};
            }
        int bits = 0;
        while ((std::size_t{1} << bits) < n) ++bits;
        rev_[0] = 0;
        for (std::size_t i = 1; i < n; ++i) rev_[i] = (rev_[i >> 1] >> 1) | ((i & 1U) << (bits - 1));
    }

    void forward(cplx* x) const {
        for (std::size_t i = 0; i < n_; ++i)
            if (i < rev_[i]) std::swap(x[i], x[rev_[i]]);
        for (std::size_t i = 0; i + 1 < n_; i += 2) {
            const cplx u = x[i], v = x[i + 1];
            x[i] = u + v;
            x[i + 1] = u - v;
        }
        for (std::size_t half = 2; half < n_; half <<= 1) {
            const cplx* w = tw_.data() + half - 1;
            for (std::size_t i = 0; i < n_; i += 2 * half) {
                cplx* a = x + i;
                cplx* b = a + half;
                for (std::size_t j = 0; j < half; ++j) {
                    const cplx u = a[j];
                    const cplx v = mul(b[j], w[j]);
                    a[j] = u + v;
                    b[j] = u - v;
                }
            }
        }
    }

private:
    std::size_t n_;
    std::vector<cplx> tw_;
    std::vector<std::size_t> rev_;
};

class Plan {
public:
    explicit Plan(std::size_t n) : n_(n) {
        if (is_pow2(n)) {
            r2_ = std::make_unique<Radix2Plan>(n);
            return;
        }
        m_ = 1;
        while (m_ < 2 * n - 1) m_ <<= 1;
        r2_ = std::make_unique<Radix2Plan>(m_);
        // chirp_j = e^{-i pi j^2 / n}; j^2 reduced mod 2n keeps the angle small.
        chirp_.resize(n);
        const unsigned __int128 two_n = 2 * static_cast<unsigned __int128>(n);
        for (std::size_t j = 0; j < n; ++j) {
            const auto q = static_cast<std::size_t>(static_cast<unsigned __int128>(j) * j % two_n);
            const double a = -std::numbers::pi * static_cast<double>(q) / static_cast<double>(n);
            chirp_[j] = {std::cos(a), std::sin(a)};
        }
        filter_.assign(m_, cplx{});
        filter_[0] = std::conj(chirp_[0]);
        for (std::size_t j = 1; j < n; ++j) filter_[j] = filter_[m_ - j] = std::conj(chirp_[j]);
        r2_->forward(filter_.data());
    }

    void forward(std::vector<cplx>& x) const {
        if (!m_) {
            r2_->forward(x.data());
            return;
        }
        std::vector<cplx> a(m_);
        for (std::size_t j = 0; j < n_; ++j) a[j] = mul(x[j], chirp_[j]);
        r2_->forward(a.data());
        for (std::size_t j = 0; j < m_; ++j) a[j] = std::conj(mul(a[j], filter_[j]));
        r2_->forward(a.data());
        const double scale = 1.0 / static_cast<double>(m_);
        for (std::size_t j = 0; j < n_; ++j) x[j] = mul(std::conj(a[j]) * scale, chirp_[j]);
    }

private:
    std::size_t n_;
    std::size_t m_ = 0;
    std::unique_ptr<Radix2Plan> r2_;
    std::vector<cplx> chirp_;
    std::vector<cplx> filter_;
};

std::shared_ptr<const Plan> get_plan(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::shared_ptr<const Plan>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    auto plan = std::make_shared<const Plan>(n);
    std::lock_guard<std::mutex> lock(mu);
    // Keep the cache bounded; plans for long lengths are large.
    if (cache.size() > 64) cache.clear();
    return cache.emplace(n, plan).first->second;
}

}  // namespace

void fft_inplace(std::vector<cplx>& x, FftDirection dir) {
    const std::size_t n = x.size();
    if (n <= 1) return;
    const auto plan = get_plan(n);
    if (dir == FftDirection::forward) {
        plan->forward(x);
    } else {
        for (auto& v : x) v = std::conj(v);
        plan->forward(x);
        for (auto& v : x) v = std::conj(v);
    }
}

std::vector<cplx> fft_1d(std::span<const cplx> x, FftDirection dir) {
    std::vector<cplx> out(x.begin(), x.end());
    fft_inplace(out, dir);
    return out;
}

std::vector<cplx> dft_naive(std::span<const cplx> x, FftDirection dir) {
    const std::size_t n = x.size();
    const double sign = dir == FftDirection::forward ? -1.0 : 1.0;
    std::vector<cplx> out(n);
    for (std::size_t l = 0; l < n; ++l) {
        long double re = 0, im = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const auto q = static_cast<std::size_t>(static_cast<unsigned __int128>(j) * l % n);
            const long double a = sign * 2.0L * std::numbers::pi_v<long double> * q / n;
            const long double c = std::cos(a), s = std::sin(a);
            re += x[j].real() * c - x[j].imag() * s;
            im += x[j].real() * s + x[j].imag() * c;
        }
        out[l] = {static_cast<double>(re), static_cast<double>(im)};
    }
    return out;
}

}  // namespace mlfft
