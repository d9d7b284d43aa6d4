#include "hlrp/reference.hpp"

#include <algorithm>
#include <cmath>

#include "hlrp/errors.hpp"

namespace hlrp {

double ReferenceField::at(double xq, double tq) const {
    const int nx = static_cast<int>(x.size());
    const int nt = static_cast<int>(ty.size());
    if (two_d) {
        double hx = x[1] - x[0], hy = ty[1] - ty[0];
        double fx = (xq - x[0]) / hx, fy = (tq - ty[0]) / hy;
        int ix = std::clamp(static_cast<int>(std::floor(fx)), 0, nx - 2);
        int iy = std::clamp(static_cast<int>(std::floor(fy)), 0, nt - 2);
        double ax = fx - ix, ay = fy - iy;
        return (1 - ax) * (1 - ay) * values(ix, iy) + ax * (1 - ay) * values(ix + 1, iy) +
               (1 - ax) * ay * values(ix, iy + 1) + ax * ay * values(ix + 1, iy + 1);
    }
    double hx = x[1] - x[0], ht = ty[1] - ty[0];
    double period = 2.0 * M_PI;
    double xw = std::fmod(xq, period);
    if (xw < 0) xw += period;
    double fx = xw / hx;
    int ix = static_cast<int>(std::floor(fx));
    double ax = fx - ix;
    int ix1 = (ix + 1) % nx;  // periodic wrap
    ix = ix % nx;
    double ft = (tq - ty[0]) / ht;
    int it = std::clamp(static_cast<int>(std::floor(ft)), 0, nt - 2);
    double at_ = ft - it;
    return (1 - ax) * (1 - at_) * values(ix, it) + ax * (1 - at_) * values(ix1, it) +
           (1 - ax) * at_ * values(ix, it + 1) + ax * at_ * values(ix1, it + 1);
}

Grid1D default_grid_1d(int nx, int nt, double t_final) {
    Grid1D g;
    g.x.resize(nx);
    for (int i = 0; i < nx; ++i) g.x[i] = 2.0 * M_PI * i / nx;
    g.t.resize(nt);
    for (int j = 0; j < nt; ++j) g.t[j] = t_final * j / (nt - 1);
    return g;
}

Grid2D default_grid_2d(int n) {
    Grid2D g;
    g.x.resize(n);
    g.y.resize(n);
    for (int i = 0; i < n; ++i) g.x[i] = -1.0 + 2.0 * i / (n - 1);
    g.y = g.x;
    return g;
}

void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    const size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw ArgumentError("fft_radix2: size must be a power of 2");
    // bit reversal
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * M_PI / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& z : a) z /= static_cast<double>(n);
}

namespace {

// signed wavenumber for index k of an n-point transform
int signed_mode(size_t k, size_t n) {
    return k <= n / 2 - 1 ? static_cast<int>(k) : static_cast<int>(k) - static_cast<int>(n);
}

Vec logistic_map(const Vec& u, double rho, double dt) {
    Vec out(u.size());
    double g = std::exp(rho * dt);
    for (size_t i = 0; i < u.size(); ++i) {
        double num = u[i] * g;
        out[i] = num / (num + 1.0 - u[i]);
    }
    return out;
}

// one exact conv-diff step of length dt applied in Fourier space
void convdiff_step(std::vector<std::complex<double>>& uhat, double beta, double nu, double dt) {
    const size_t n = uhat.size();
    for (size_t k = 0; k < n; ++k) {
        double km = static_cast<double>(signed_mode(k, n));
        std::complex<double> lambda(-nu * km * km, -beta * km);
        uhat[k] *= std::exp(lambda * dt);
    }
}

}  // namespace

ReferenceField convection_exact(const ProblemSpec& spec, const Grid1D& grid) {
    ReferenceField f;
    f.x = grid.x;
    f.ty = grid.t;
    f.provenance = Provenance::Analytic;
    f.values = Matrix(static_cast<int>(grid.x.size()), static_cast<int>(grid.t.size()));
    const double period = 2.0 * M_PI;
    for (size_t j = 0; j < grid.t.size(); ++j) {
        for (size_t i = 0; i < grid.x.size(); ++i) {
            double xs = std::fmod(grid.x[i] - spec.cdr.beta * grid.t[j], period);
            if (xs < 0) xs += period;
            Vec x1{xs};
            f.values(static_cast<int>(i), static_cast<int>(j)) = initial_condition(spec, x1)[0];
        }
    }
    return f;
}

ReferenceField reaction_exact(const ProblemSpec& spec, const Grid1D& grid) {
    Vec u0 = initial_condition(spec, grid.x);
    for (double v : u0)
        if (v < 0.0 || v > 1.0)
            throw ArgumentError("reaction_exact: initial condition must lie in [0, 1]");
    ReferenceField f;
    f.x = grid.x;
    f.ty = grid.t;
    f.provenance = Provenance::Analytic;
    f.values = Matrix(static_cast<int>(grid.x.size()), static_cast<int>(grid.t.size()));
    for (size_t j = 0; j < grid.t.size(); ++j) {
        Vec ut = logistic_map(u0, spec.cdr.rho, grid.t[j]);
        for (size_t i = 0; i < grid.x.size(); ++i)
            f.values(static_cast<int>(i), static_cast<int>(j)) = ut[i];
    }
    return f;
}

ReferenceField convdiff_spectral(const ProblemSpec& spec, const Grid1D& grid) {
    const size_t n = grid.x.size();
    Vec u0 = initial_condition(spec, grid.x);
    std::vector<std::complex<double>> uhat(n);
    for (size_t i = 0; i < n; ++i) uhat[i] = u0[i];
    fft_radix2(uhat, false);

    ReferenceField f;
    f.x = grid.x;
    f.ty = grid.t;
    f.provenance = Provenance::Spectral;
    f.values = Matrix(static_cast<int>(n), static_cast<int>(grid.t.size()));
    for (size_t j = 0; j < grid.t.size(); ++j) {
        std::vector<std::complex<double>> ut = uhat;
        convdiff_step(ut, spec.cdr.beta, spec.cdr.nu, grid.t[j]);
        fft_radix2(ut, true);
        for (size_t i = 0; i < n; ++i)
            f.values(static_cast<int>(i), static_cast<int>(j)) = ut[i].real();
    }
    return f;
}

double default_splitting_dt(const Grid1D& grid) { return (grid.t[1] - grid.t[0]) / 10.0; }

ReferenceField cdr_splitting(const ProblemSpec& spec, const Grid1D& grid, double dt) {
    const size_t n = grid.x.size();
    const double spacing = grid.t[1] - grid.t[0];
    const double steps_real = spacing / dt;
    const int steps = static_cast<int>(std::lround(steps_real));
    if (steps < 1 || std::abs(steps_real - steps) > 1e-9 * steps)
        throw ArgumentError("cdr_splitting: dt must divide the t-node spacing");

    Vec u = initial_condition(spec, grid.x);
    ReferenceField f;
    f.x = grid.x;
    f.ty = grid.t;
    f.provenance = Provenance::Splitting;
    f.values = Matrix(static_cast<int>(n), static_cast<int>(grid.t.size()));
    for (size_t i = 0; i < n; ++i) f.values(static_cast<int>(i), 0) = u[i];

    for (size_t j = 1; j < grid.t.size(); ++j) {
        for (int s = 0; s < steps; ++s) {
            u = logistic_map(u, spec.cdr.rho, 0.5 * dt);
            std::vector<std::complex<double>> uhat(n);
            for (size_t i = 0; i < n; ++i) uhat[i] = u[i];
            fft_radix2(uhat, false);
            convdiff_step(uhat, spec.cdr.beta, spec.cdr.nu, dt);
            fft_radix2(uhat, true);
            for (size_t i = 0; i < n; ++i) u[i] = uhat[i].real();
            u = logistic_map(u, spec.cdr.rho, 0.5 * dt);
        }
        for (size_t i = 0; i < n; ++i) f.values(static_cast<int>(i), static_cast<int>(j)) = u[i];
    }
    return f;
}

ReferenceField helmholtz_exact(const HelmholtzParams& p, const Grid2D& grid) {
    ReferenceField f;
    f.two_d = true;
    f.x = grid.x;
    f.ty = grid.y;
    f.provenance = Provenance::Analytic;
    f.values = Matrix(static_cast<int>(grid.x.size()), static_cast<int>(grid.y.size()));
    for (size_t i = 0; i < grid.x.size(); ++i)
        for (size_t j = 0; j < grid.y.size(); ++j)
            f.values(static_cast<int>(i), static_cast<int>(j)) =
                helmholtz_exact_value(p, grid.x[i], grid.y[j]);
    return f;
}

ReferenceField reference_solve(const ProblemSpec& spec) {
    if (spec.is_2d()) return helmholtz_exact(spec.helm, default_grid_2d());
    Grid1D grid = default_grid_1d(256, 100, spec.t_final);
    switch (spec.family) {
        case Family::Convection: return convection_exact(spec, grid);
        case Family::Reaction: return reaction_exact(spec, grid);
        case Family::Diffusion:
        case Family::ConvDiff: return convdiff_spectral(spec, grid);
        default: return cdr_splitting(spec, grid, default_splitting_dt(grid));
    }
}

}  // namespace hlrp
