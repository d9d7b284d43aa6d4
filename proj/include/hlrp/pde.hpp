#pragma once

#include <functional>
#include <string>

#include "hlrp/jet.hpp"
#include "hlrp/linalg.hpp"

namespace hlrp {

// u_t + beta u_x - nu u_xx - rho u (1 - u) = 0
struct CdrParams {
    double beta = 0.0;
    double nu = 0.0;
    double rho = 0.0;
};

// u_xx + u_yy + k^2 u - q(x, y; a1, a2) = 0
struct HelmholtzParams {
    double a1 = 1.0;
    double a2 = 1.0;
    double k = 1.0;
};

enum class Family { Convection, Diffusion, Reaction, ConvDiff, ReacDiff, Cdr, Helmholtz2D };
enum class IcKind { OnePlusSin, Gaussian };
enum class BcKind { Periodic, DirichletFromExact };

// One parameterized PDE instance. 1D problems live on x in [0, 2pi),
// t in [0, 1]; the Helmholtz problem on (x, y) in [-1, 1]^2.
struct ProblemSpec {
    Family family = Family::Convection;
    CdrParams cdr;
    HelmholtzParams helm;
    IcKind ic = IcKind::OnePlusSin;
    double ic_sigma = 0.0;  // Gaussian width
    BcKind bc = BcKind::Periodic;
    double t_final = 1.0;

    bool is_2d() const { return family == Family::Helmholtz2D; }
    // hypernetwork / PINN-P encoding: the family's varying coefficients,
    // raw and unnormalized
    Vec mu() const;
    // rebinds the grid scalar to the family's varying coefficient(s)
    ProblemSpec with_scalar(double c) const;

    static ProblemSpec preset(const std::string& name);
    std::string family_name() const;
};

// residual of Eq. (5)-form CDR over a batch; jet must be an output jet
// (width 1) in Space1DTime mode
Vec cdr_residual(const JetBatch& jet, const CdrParams& p);

// residual of the 2D Helmholtz form over a batch; Space2D jets
Vec helmholtz_residual(const JetBatch& jet, const HelmholtzParams& p, const Vec& x, const Vec& y);

// forcing that makes sin(a1 pi x) sin(a2 pi y) an exact solution
double forcing_q(double x, double y, const HelmholtzParams& p);

double helmholtz_exact_value(const HelmholtzParams& p, double x, double y);

Vec initial_condition(const ProblemSpec& spec, const Vec& x);

// Periodic: u(0, t) - u(2pi, t) over the t batch.
// DirichletFromExact: u(xb, yb) - u_exact(xb, yb).
// `eval_u` evaluates the model at coordinate pairs (x/t for 1D, x/y for 2D).
Vec boundary_residual(const ProblemSpec& spec,
                      const std::function<Vec(const Vec&, const Vec&)>& eval_u, const Vec& b0,
                      const Vec& b1);

}  // namespace hlrp
