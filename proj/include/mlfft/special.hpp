#pragma once

namespace mlfft {

// zeta(s, q) = sum_{n>=0} (q+n)^{-s} for s > 1, q > 0 (Euler-Maclaurin).
long double hurwitz_zeta(long double s, long double q);

}  // namespace mlfft
