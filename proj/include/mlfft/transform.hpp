#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "mlfft/fft.hpp"
#include "mlfft/index_set.hpp"
#include "mlfft/lattice.hpp"

namespace mlfft {

// Values aligned with the order of index_set.
struct CoefficientVector {
    std::shared_ptr<const FrequencyIndexSet> index_set;
    std::vector<cplx> values;
};

// Samples at nodes j = 0..M-1 of lattice.
struct SampleVector {
    Rank1Lattice lattice;
    std::vector<cplx> values;
};

using PointFunction = std::function<cplx(std::span<const double>)>;

// p(x_j) = sum_k c_k e^{2 pi i j (k.z mod M) / M}, via residue buckets and one FFT.
SampleVector evaluate_on_lattice(const FrequencyIndexSet& I, std::span<const cplx> coeffs, const Rank1Lattice& lat);

// c_k = h[k.z mod M] / M where h is the forward FFT of the samples.
std::vector<cplx> adjoint_single(const SampleVector& s, const FrequencyIndexSet& I);

// Averages the single-lattice estimates over the components in which each
// frequency is aliasing-free. Throws CoverageViolation if one is never free.
CoefficientVector reconstruct_multiple(const MultipleLattice& ml, std::span<const SampleVector> samples);

std::vector<SampleVector> sample_multiple(const PointFunction& f, const MultipleLattice& ml);
SampleVector sample_single(const PointFunction& f, const Rank1Lattice& lat);

struct Approximation {
    CoefficientVector coeffs;
    std::int64_t sample_count = 0;  // sum of M_l
};

Approximation approximate(const PointFunction& f, const MultipleLattice& ml);
Approximation approximate_single(const PointFunction& f, std::shared_ptr<const FrequencyIndexSet> I,
                                 const Rank1Lattice& lat);

}  // namespace mlfft
