#include "mlfft/transform.hpp"

#include <cmath>

#include "mlfft/errors.hpp"

namespace mlfft {

namespace {

// Bucket sums switch to compensated accumulation for very large sets.
constexpr std::size_t kCompensateAbove = 1'000'000;

void neumaier_add(double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) comp += (sum - t) + v;
    else comp += (v - t) + sum;
    sum = t;
}

}  // namespace

SampleVector evaluate_on_lattice(const FrequencyIndexSet& I, std::span<const cplx> coeffs, const Rank1Lattice& lat) {
    if (coeffs.size() != I.size()) throw InvalidArgument("coefficient vector does not match index set");
    if (!I.empty() && I.dim() != lat.dim()) throw InvalidArgument("index set and lattice dimensions differ");
    const auto M = static_cast<std::size_t>(lat.M);
    std::vector<cplx> buckets(M);
    if (I.size() > kCompensateAbove) {
        std::vector<double> re(M), im(M), cre(M), cim(M);
        for (std::size_t i = 0; i < I.size(); ++i) {
            const auto r = static_cast<std::size_t>(residue(I[i], lat));
            neumaier_add(re[r], cre[r], coeffs[i].real());
            neumaier_add(im[r], cim[r], coeffs[i].imag());
        }
        for (std::size_t r = 0; r < M; ++r) buckets[r] = {re[r] + cre[r], im[r] + cim[r]};
    } else {
        for (std::size_t i = 0; i < I.size(); ++i) buckets[static_cast<std::size_t>(residue(I[i], lat))] += coeffs[i];
    }
    fft_inplace(buckets, FftDirection::inverse);
    return {lat, std::move(buckets)};
}

std::vector<cplx> adjoint_single(const SampleVector& s, const FrequencyIndexSet& I) {
    if (s.values.size() != static_cast<std::size_t>(s.lattice.M)) throw InvalidArgument("sample vector length differs from M");
    auto h = fft_1d(s.values, FftDirection::forward);
    const double inv = 1.0 / static_cast<double>(s.lattice.M);
    std::vector<cplx> out(I.size());
    for (std::size_t i = 0; i < I.size(); ++i) out[i] = h[static_cast<std::size_t>(residue(I[i], s.lattice))] * inv;
    return out;
}

CoefficientVector reconstruct_multiple(const MultipleLattice& ml, std::span<const SampleVector> samples) {
    const FrequencyIndexSet& I = ml.index_set();
    if (samples.size() != ml.size()) throw InvalidArgument("need one sample vector per component");
    for (std::size_t i = 0; i < I.size(); ++i)
        if (ml.counters()[i] == 0) throw CoverageViolation("frequency " + std::to_string(i) + " is not covered");
    std::vector<cplx> acc(I.size());
    for (std::size_t l = 0; l < ml.size(); ++l) {
        const auto& lat = ml.components()[l];
        if (samples[l].values.size() != static_cast<std::size_t>(lat.M))
            throw InvalidArgument("sample vector length differs from component size");
        const auto h = fft_1d(samples[l].values, FftDirection::forward);
        const double inv = 1.0 / static_cast<double>(lat.M);
        for (auto i : ml.free_indices()[l]) acc[i] += h[static_cast<std::size_t>(residue(I[i], lat))] * inv;
    }
    for (std::size_t i = 0; i < I.size(); ++i) acc[i] /= static_cast<double>(ml.counters()[i]);
    return {ml.index_set_ptr(), std::move(acc)};
}

SampleVector sample_single(const PointFunction& f, const Rank1Lattice& lat) {
    SampleVector s{lat, std::vector<cplx>(static_cast<std::size_t>(lat.M))};
    std::vector<double> x(static_cast<std::size_t>(lat.dim()));
    for (std::int64_t j = 0; j < lat.M; ++j) {
        node(lat, j, x);
        s.values[static_cast<std::size_t>(j)] = f(x);
    }
    return s;
}

std::vector<SampleVector> sample_multiple(const PointFunction& f, const MultipleLattice& ml) {
    std::vector<SampleVector> out;
    out.reserve(ml.size());
    for (const auto& lat : ml.components()) out.push_back(sample_single(f, lat));
    return out;
}

Approximation approximate(const PointFunction& f, const MultipleLattice& ml) {
    const auto samples = sample_multiple(f, ml);
    return {reconstruct_multiple(ml, samples), sum_of_sizes(ml)};
}

Approximation approximate_single(const PointFunction& f, std::shared_ptr<const FrequencyIndexSet> I,
                                 const Rank1Lattice& lat) {
    auto vals = adjoint_single(sample_single(f, lat), *I);
    return {{std::move(I), std::move(vals)}, lat.M};
}

}  // namespace mlfft
