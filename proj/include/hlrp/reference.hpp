#pragma once

#include <complex>
#include <vector>

#include "hlrp/linalg.hpp"
#include "hlrp/pde.hpp"

namespace hlrp {

enum class Provenance { Analytic, Spectral, Splitting };

// Ground-truth solution sampled on a regular grid.
// 1D: values(i, j) = u(x[i], t[j]) with x periodic on [0, 2pi).
// 2D: values(i, j) = u(x[i], y[j]) on [-1, 1]^2.
struct ReferenceField {
    bool two_d = false;
    Vec x;
    Vec ty;  // t nodes (1D) or y nodes (2D)
    Matrix values;
    Provenance provenance = Provenance::Analytic;

    double at_node(int ix, int jt) const { return values(ix, jt); }
    // bilinear interpolation; 1D x wraps periodically
    double at(double xq, double tq) const;
};

struct Grid1D {
    Vec x;  // 256 uniform on [0, 2pi)
    Vec t;  // 100 uniform on [0, 1]
};
struct Grid2D {
    Vec x;  // 100 uniform on [-1, 1]
    Vec y;
};

Grid1D default_grid_1d(int nx = 256, int nt = 100, double t_final = 1.0);
Grid2D default_grid_2d(int n = 100);

// in-place radix-2 complex FFT (n must be a power of two); inverse applies
// the 1/n factor
void fft_radix2(std::vector<std::complex<double>>& a, bool inverse);

// method of characteristics: u(x, t) = u0((x - beta t) mod 2pi)
ReferenceField convection_exact(const ProblemSpec& spec, const Grid1D& grid);

// pointwise logistic solution of u_t = rho u (1 - u); requires u0 in [0, 1]
ReferenceField reaction_exact(const ProblemSpec& spec, const Grid1D& grid);

// exact Fourier-mode evolution of u_t + beta u_x - nu u_xx = 0
ReferenceField convdiff_spectral(const ProblemSpec& spec, const Grid1D& grid);

// Strang splitting: half-step exact reaction, full spectral conv-diff step,
// half-step reaction; global O(dt^2). dt must divide the t spacing.
ReferenceField cdr_splitting(const ProblemSpec& spec, const Grid1D& grid, double dt);

ReferenceField helmholtz_exact(const HelmholtzParams& p, const Grid2D& grid);

// picks the cheapest exact oracle for the family (characteristics,
// logistic, spectral, splitting or the closed-form 2D solution)
ReferenceField reference_solve(const ProblemSpec& spec);

// default splitting step: a tenth of the t spacing
double default_splitting_dt(const Grid1D& grid);

}  // namespace hlrp
