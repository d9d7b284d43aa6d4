#pragma once

#include "hlrp/linalg.hpp"

namespace hlrp {

// Which input-derivative channels a jet carries besides the value.
//   ValueOnly:   plain batched evaluation (IC/BC/test points)
//   Space1DTime: d/dx, d/dt, d2/dx2
//   Space2D:     d/dx, d/dy, d2/dx2, d2/dy2
enum class JetMode { ValueOnly, Space1DTime, Space2D };

// A batch of network activations together with their input derivatives.
// Every channel is a width x batch matrix (one column per point). Channels
// not used by the mode stay empty. Mixed partials are not carried; no
// supported residual needs them.
struct JetBatch {
    JetMode mode = JetMode::ValueOnly;
    Matrix value;
    Matrix dx, dt, dxx;
    Matrix dy, dyy;

    int width() const { return value.rows; }
    int batch() const { return value.cols; }

    static JetBatch zeros_like(const JetBatch& j);
    static JetBatch zeros(JetMode mode, int width, int batch);

    bool same_shape(const JetBatch& o) const;
    bool all_finite() const;
};

// visits every channel present in the mode (value first)
template <class J, class F>
void for_each_channel(J& j, F&& f) {
    f(j.value);
    if (j.mode == JetMode::ValueOnly) return;
    f(j.dx);
    f(j.dxx);
    if (j.mode == JetMode::Space1DTime) f(j.dt);
    if (j.mode == JetMode::Space2D) {
        f(j.dy);
        f(j.dyy);
    }
}

// Coordinate seeds: unit first-derivative channels on the coordinate rows,
// zero second derivatives. Extra rows (e.g. PDE parameters appended as
// network inputs) ride along as constants with zero derivatives.
JetBatch seed_space1dtime(const Vec& x, const Vec& t, const std::vector<Vec>& extra_rows = {});
JetBatch seed_space2d(const Vec& x, const Vec& y, const std::vector<Vec>& extra_rows = {});
JetBatch seed_value_only(const std::vector<Vec>& rows);

// out.value = W value + b, out.d = W d for every derivative channel.
// Pass an empty bias for a pure linear map.
JetBatch affine_jet(const Matrix& w, const Vec& b, const JetBatch& in);
// out = W^T in (all channels)
JetBatch affine_t_jet(const Matrix& w, const JetBatch& in);
// row i of every channel scaled by s[i]
JetBatch diag_jet(const Vec& s, const JetBatch& in);
// elementwise tanh with exact first/second derivative propagation
JetBatch tanh_jet(const JetBatch& in);
// elementwise relu; second derivative is zero a.e. so curvature passes
// through the active set unchanged
JetBatch relu_jet(const JetBatch& in);

}  // namespace hlrp
