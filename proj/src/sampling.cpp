#include "hlrp/sampling.hpp"

#include <cmath>
#include <unordered_set>

#include "hlrp/errors.hpp"
#include "hlrp/rng.hpp"

namespace hlrp {

ParamGrid param_grid(double lo, double hi, double step) {
    if (step <= 0.0) throw ArgumentError("param_grid: step must be positive");
    if (lo > hi) throw ArgumentError("param_grid: empty range");
    ParamGrid g;
    const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (int i = 0; i < n; ++i) g.values.push_back(lo + i * step);
    // snap an exactly-reachable endpoint
    if (!g.values.empty() && std::abs(g.values.back() - hi) < 1e-9 * std::max(1.0, std::abs(hi)))
        g.values.back() = hi;
    if (g.values.empty()) throw ArgumentError("param_grid: empty grid");
    for (size_t i = 1; i < g.values.size(); ++i)
        if (g.values[i] == g.values[i - 1]) throw ArgumentError("param_grid: duplicate values");
    return g;
}

namespace {

constexpr uint64_t kTestStreamTag = 0x7e57;

struct NodeKey {
    int a, b;
    bool operator==(const NodeKey& o) const { return a == o.a && b == o.b; }
};
struct NodeKeyHash {
    size_t operator()(const NodeKey& k) const {
        return std::hash<long long>()((static_cast<long long>(k.a) << 32) ^ k.b);
    }
};

void check_disjoint_1d(const CollocationSet& c) {
    for (size_t i = 0; i < c.xt.size(); ++i)
        for (size_t j = 0; j < c.xi.size(); ++j)
            if (c.xt[i] == c.xi[j] && c.tt[i] == c.ti[j])
                throw NumericError("sample_collocation", "test point collides with training point");
}

}  // namespace

CollocationSet sample_collocation(const ProblemSpec& spec, uint64_t seed) {
    return sample_collocation(spec, seed, reference_solve(spec));
}

CollocationSet sample_collocation(const ProblemSpec& spec, uint64_t seed,
                                  const ReferenceField& ref) {
    Rng rng(seed);
    Rng test_rng = rng.derive(kTestStreamTag);
    CollocationSet c;
    c.two_d = spec.is_2d();

    if (!c.two_d) {
        const int n_interior = 1000, n_initial = 256, n_boundary = 100, n_test = 1000;
        c.xi.resize(n_interior);
        c.ti.resize(n_interior);
        for (int i = 0; i < n_interior; ++i) {
            c.xi[i] = rng.uniform(0.0, 2.0 * M_PI);
            c.ti[i] = rng.uniform(0.0, spec.t_final);
        }
        c.x0.resize(n_initial);
        for (int i = 0; i < n_initial; ++i) c.x0[i] = rng.uniform(0.0, 2.0 * M_PI);
        c.u0 = initial_condition(spec, c.x0);
        c.tb.resize(n_boundary);
        for (int i = 0; i < n_boundary; ++i) c.tb[i] = rng.uniform(0.0, spec.t_final);

        // test points: draws snapped to distinct reference-grid nodes
        const int nx = static_cast<int>(ref.x.size());
        const int nt = static_cast<int>(ref.ty.size());
        std::unordered_set<NodeKey, NodeKeyHash> used;
        c.xt.reserve(n_test);
        while (static_cast<int>(c.xt.size()) < n_test) {
            int ix = static_cast<int>(test_rng.uniform() * nx) % nx;
            int it = static_cast<int>(test_rng.uniform() * nt) % nt;
            if (!used.insert(NodeKey{ix, it}).second) continue;
            c.xt.push_back(ref.x[ix]);
            c.tt.push_back(ref.ty[it]);
            c.ut.push_back(ref.at_node(ix, it));
        }
        check_disjoint_1d(c);
    } else {
        const int n_interior = 1000, n_boundary = 400;
        c.xi.resize(n_interior);
        c.yi.resize(n_interior);
        for (int i = 0; i < n_interior; ++i) {
            c.xi[i] = rng.uniform(-1.0, 1.0);
            c.yi[i] = rng.uniform(-1.0, 1.0);
        }
        c.xb.resize(n_boundary);
        c.yb.resize(n_boundary);
        c.ub.resize(n_boundary);
        for (int i = 0; i < n_boundary; ++i) {
            int side = rng.uniform_index(4);
            double s = rng.uniform(-1.0, 1.0);
            double x = 0, y = 0;
            switch (side) {
                case 0: x = -1.0, y = s; break;
                case 1: x = 1.0, y = s; break;
                case 2: x = s, y = -1.0; break;
                default: x = s, y = 1.0;
            }
            c.xb[i] = x;
            c.yb[i] = y;
            c.ub[i] = helmholtz_exact_value(spec.helm, x, y);
        }
        // the 10,000-point test set is the full 100x100 reference grid
        const int nx = static_cast<int>(ref.x.size());
        const int ny = static_cast<int>(ref.ty.size());
        c.xt.reserve(static_cast<size_t>(nx) * ny);
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) {
                c.xt.push_back(ref.x[i]);
                c.yt.push_back(ref.ty[j]);
                c.ut.push_back(ref.at_node(i, j));
            }
    }

    for (double v : c.ut)
        if (!std::isfinite(v)) throw NumericError("sample_collocation", "non-finite reference value");
    return c;
}

}  // namespace hlrp
