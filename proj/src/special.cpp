#include "mlfft/special.hpp"

#include <cmath>

#include "mlfft/errors.hpp"

namespace mlfft {

long double hurwitz_zeta(long double s, long double q) {
    if (!(s > 1) || !(q > 0)) throw InvalidArgument("hurwitz_zeta needs s > 1 and q > 0");
    // B_{2j} / (2j)!
    static constexpr long double kB[] = {
        1.0L / 12, -1.0L / 720, 1.0L / 30240, -1.0L / 1209600, 1.0L / 47900160,
        -691.0L / 1307674368000.0L, 1.0L / 74724249600.0L, -3617.0L / 10670622842880000.0L,
    };
    constexpr int kShift = 20;
    long double sum = 0;
    long double x = q;
    for (int n = 0; n < kShift; ++n, x += 1) sum += std::pow(x, -s);
    sum += std::pow(x, 1 - s) / (s - 1) + std::pow(x, -s) / 2;
    // Rising factorial s(s+1)...(s+2j-2) times x^{-s-2j+1}.
    long double poch = s;
    long double xp = std::pow(x, -s - 1);
    const long double inv_x2 = 1 / (x * x);
    for (int j = 0; j < 8; ++j) {
        sum += kB[j] * poch * xp;
        poch *= (s + 2 * j + 1) * (s + 2 * j + 2);
        xp *= inv_x2;
    }
    return sum;
}

}  // namespace mlfft
