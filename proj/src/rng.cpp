#include "hlrp/rng.hpp"

#include <cmath>

namespace hlrp {

double Rng::gaussian() {
    // reject u1 == 0 so the log stays finite
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Rng Rng::derive(uint64_t tag) const {
    uint64_t z = state_ ^ (0xD1342543DE82EF95ull * (tag + 1));
    z = (z ^ (z >> 30)) * kMixA;
    z = (z ^ (z >> 27)) * kMixB;
    return Rng(z ^ (z >> 31));
}

Matrix Rng::gaussian_matrix(int rows, int cols) {
    Matrix m(rows, cols);
    for (double& v : m.data) v = gaussian();
    return m;
}

Matrix Rng::uniform_matrix(int rows, int cols, double lo, double hi) {
    Matrix m(rows, cols);
    for (double& v : m.data) v = uniform(lo, hi);
    return m;
}

}  // namespace hlrp
