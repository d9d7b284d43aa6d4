#pragma once

#include <cstdint>

#include "hlrp/linalg.hpp"

namespace hlrp {

// Counter-based generator (SplitMix64 constants). The whole state is one
// 64-bit word advanced by a Weyl increment, so streams are reproducible
// bit-for-bit across platforms and trivially serializable.
class Rng {
  public:
    static constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ull;
    static constexpr uint64_t kMixA = 0xBF58476D1CE4E5B9ull;
    static constexpr uint64_t kMixB = 0x94D049BB133111EBull;

    explicit Rng(uint64_t seed = 0) : state_(seed) {}

    uint64_t next_u64() {
        state_ += kGamma;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * kMixA;
        z = (z ^ (z >> 27)) * kMixB;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // index in [0, n)
    int uniform_index(int n) { return static_cast<int>(next_u64() % static_cast<uint64_t>(n)); }

    // Box-Muller; draws two uniforms per call and keeps no cache, so the
    // state stays a single counter word.
    double gaussian();

    // Independent substream: bijective mix of the current seed and a tag.
    Rng derive(uint64_t tag) const;

    uint64_t state() const { return state_; }
    void set_state(uint64_t s) { state_ = s; }

    Matrix gaussian_matrix(int rows, int cols);
    Matrix uniform_matrix(int rows, int cols, double lo, double hi);

  private:
    uint64_t state_;
};

}  // namespace hlrp
