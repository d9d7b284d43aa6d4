#include "hlrp/pde.hpp"

#include <cmath>

#include "hlrp/errors.hpp"

namespace hlrp {

Vec ProblemSpec::mu() const {
    switch (family) {
        case Family::Convection: return {cdr.beta};
        case Family::Diffusion: return {cdr.nu};
        case Family::Reaction: return {cdr.rho};
        case Family::ConvDiff: return {cdr.beta, cdr.nu};
        case Family::ReacDiff: return {cdr.nu, cdr.rho};
        case Family::Cdr: return {cdr.beta, cdr.nu, cdr.rho};
        case Family::Helmholtz2D: return {helm.a1};
    }
    return {};
}

ProblemSpec ProblemSpec::with_scalar(double c) const {
    ProblemSpec s = *this;
    switch (family) {
        case Family::Convection: s.cdr.beta = c; break;
        case Family::Diffusion: s.cdr.nu = c; break;
        case Family::Reaction: s.cdr.rho = c; break;
        case Family::ConvDiff: s.cdr.beta = c; break;   // nu fixed by the preset
        case Family::ReacDiff: s.cdr.nu = c; break;     // rho fixed by the preset
        case Family::Cdr:
            s.cdr.beta = s.cdr.nu = s.cdr.rho = c;
            break;
        case Family::Helmholtz2D:
            s.helm.a1 = s.helm.a2 = c;
            break;
    }
    return s;
}

ProblemSpec ProblemSpec::preset(const std::string& name) {
    ProblemSpec s;
    if (name == "convection") {
        s.family = Family::Convection;
        s.ic = IcKind::OnePlusSin;
        s.bc = BcKind::Periodic;
    } else if (name == "diffusion") {
        s.family = Family::Diffusion;
        s.ic = IcKind::Gaussian;
        s.ic_sigma = M_PI / 2.0;
        s.bc = BcKind::Periodic;
    } else if (name == "reaction") {
        s.family = Family::Reaction;
        s.ic = IcKind::Gaussian;
        s.ic_sigma = M_PI / 4.0;
        s.bc = BcKind::Periodic;
    } else if (name == "convdiff") {
        s.family = Family::ConvDiff;
        s.ic = IcKind::Gaussian;
        s.ic_sigma = M_PI / 2.0;
        s.bc = BcKind::Periodic;
        s.cdr.nu = 1.0;
    } else if (name == "reacdiff") {
        s.family = Family::ReacDiff;
        s.ic = IcKind::Gaussian;
        s.ic_sigma = M_PI / 4.0;
        s.bc = BcKind::Periodic;
        s.cdr.rho = 5.0;
    } else if (name == "cdr") {
        s.family = Family::Cdr;
        s.ic = IcKind::Gaussian;
        s.ic_sigma = M_PI / 2.0;
        s.bc = BcKind::Periodic;
    } else if (name == "helmholtz") {
        s.family = Family::Helmholtz2D;
        s.bc = BcKind::DirichletFromExact;
        s.helm.k = 1.0;
    } else {
        throw ConfigError("unknown problem preset: " + name);
    }
    return s;
}

std::string ProblemSpec::family_name() const {
    switch (family) {
        case Family::Convection: return "convection";
        case Family::Diffusion: return "diffusion";
        case Family::Reaction: return "reaction";
        case Family::ConvDiff: return "convdiff";
        case Family::ReacDiff: return "reacdiff";
        case Family::Cdr: return "cdr";
        case Family::Helmholtz2D: return "helmholtz";
    }
    return "?";
}

Vec cdr_residual(const JetBatch& jet, const CdrParams& p) {
    if (jet.mode != JetMode::Space1DTime) throw ModeError("cdr_residual: needs Space1DTime jets");
    if (jet.width() != 1) throw ShapeError("cdr_residual: expected a width-1 output jet");
    const int n = jet.batch();
    Vec r(n);
    for (int j = 0; j < n; ++j) {
        double u = jet.value(0, j);
        r[j] = jet.dt(0, j) + p.beta * jet.dx(0, j) - p.nu * jet.dxx(0, j) -
               p.rho * u * (1.0 - u);
    }
    return r;
}

Vec helmholtz_residual(const JetBatch& jet, const HelmholtzParams& p, const Vec& x, const Vec& y) {
    if (jet.mode != JetMode::Space2D) throw ModeError("helmholtz_residual: needs Space2D jets");
    if (jet.width() != 1) throw ShapeError("helmholtz_residual: expected a width-1 output jet");
    const int n = jet.batch();
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        throw ShapeError("helmholtz_residual: coordinate batch mismatch");
    Vec r(n);
    for (int j = 0; j < n; ++j)
        r[j] = jet.dxx(0, j) + jet.dyy(0, j) + p.k * p.k * jet.value(0, j) -
               forcing_q(x[j], y[j], p);
    return r;
}

double forcing_q(double x, double y, const HelmholtzParams& p) {
    double a1p = p.a1 * M_PI;
    double a2p = p.a2 * M_PI;
    return (-(a1p * a1p) - (a2p * a2p) + p.k * p.k) * std::sin(a1p * x) * std::sin(a2p * y);
}

double helmholtz_exact_value(const HelmholtzParams& p, double x, double y) {
    return std::sin(p.a1 * M_PI * x) * std::sin(p.a2 * M_PI * y);
}

Vec initial_condition(const ProblemSpec& spec, const Vec& x) {
    Vec u(x.size());
    if (spec.ic == IcKind::OnePlusSin) {
        for (size_t i = 0; i < x.size(); ++i) u[i] = 1.0 + std::sin(x[i]);
    } else {
        double s2 = 2.0 * spec.ic_sigma * spec.ic_sigma;
        for (size_t i = 0; i < x.size(); ++i) {
            double d = x[i] - M_PI;
            u[i] = std::exp(-d * d / s2);
        }
    }
    return u;
}

Vec boundary_residual(const ProblemSpec& spec,
                      const std::function<Vec(const Vec&, const Vec&)>& eval_u, const Vec& b0,
                      const Vec& b1) {
    if (spec.bc == BcKind::Periodic) {
        // b0 holds the boundary times; compare u(0, t) with u(2pi, t)
        const Vec& t = b0;
        Vec x_lo(t.size(), 0.0), x_hi(t.size(), 2.0 * M_PI);
        Vec u_lo = eval_u(x_lo, t);
        Vec u_hi = eval_u(x_hi, t);
        Vec r(t.size());
        for (size_t i = 0; i < t.size(); ++i) r[i] = u_lo[i] - u_hi[i];
        return r;
    }
    // Dirichlet data from the exact solution at (xb, yb)
    Vec u = eval_u(b0, b1);
    Vec r(u.size());
    for (size_t i = 0; i < u.size(); ++i)
        r[i] = u[i] - helmholtz_exact_value(spec.helm, b0[i], b1[i]);
    return r;
}

}  // namespace hlrp
