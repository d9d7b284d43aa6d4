#pragma once

#include <cstdint>

#include "hlrp/linalg.hpp"
#include "hlrp/pde.hpp"
#include "hlrp/reference.hpp"

namespace hlrp {

// Sampled training/test point sets for one PDE instance. 1D problems use
// (xi, ti) interior points, an initial line and periodic boundary times;
// the 2D Helmholtz problem uses (xi, yi) interior points and Dirichlet
// boundary points with exact values. Test points are snapped to reference
// grid nodes so their reference values carry no interpolation error.
struct CollocationSet {
    bool two_d = false;

    Vec xi, ti, yi;   // interior
    Vec x0, u0;       // t = 0 line (1D)
    Vec tb;           // periodic boundary times (1D)
    Vec xb, yb, ub;   // Dirichlet boundary (2D)
    Vec xt, tt, yt;   // test coordinates
    Vec ut;           // test reference values

    int interior_count() const { return static_cast<int>(xi.size()); }
    int test_count() const { return static_cast<int>(xt.size()); }
};

struct ParamGrid {
    Vec values;
};

// arithmetic progression, endpoints included when exactly reachable
ParamGrid param_grid(double lo, double hi, double step);

// Draws the Appendix-style point budget for the spec's family:
// 1D: 1,000 interior / 256 initial / 100 boundary / 1,000 test;
// 2D: 1,000 interior / 400 boundary / 10,000 test (the full grid).
// Training points come from rng(seed); test points from a derived stream.
CollocationSet sample_collocation(const ProblemSpec& spec, uint64_t seed);

// same, reusing an already computed reference field
CollocationSet sample_collocation(const ProblemSpec& spec, uint64_t seed,
                                  const ReferenceField& ref);

}  // namespace hlrp
