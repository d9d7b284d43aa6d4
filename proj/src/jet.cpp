#include "hlrp/jet.hpp"

#include <cmath>

#include "hlrp/errors.hpp"

namespace hlrp {

JetBatch JetBatch::zeros(JetMode mode, int width, int batch) {
    JetBatch j;
    j.mode = mode;
    j.value = Matrix(width, batch);
    if (mode != JetMode::ValueOnly) {
        j.dx = Matrix(width, batch);
        j.dxx = Matrix(width, batch);
        if (mode == JetMode::Space1DTime) j.dt = Matrix(width, batch);
        if (mode == JetMode::Space2D) {
            j.dy = Matrix(width, batch);
            j.dyy = Matrix(width, batch);
        }
    }
    return j;
}

JetBatch JetBatch::zeros_like(const JetBatch& j) { return zeros(j.mode, j.width(), j.batch()); }

bool JetBatch::same_shape(const JetBatch& o) const {
    return mode == o.mode && width() == o.width() && batch() == o.batch();
}

bool JetBatch::all_finite() const {
    bool ok = true;
    for_each_channel(*this, [&](const Matrix& m) { ok = ok && hlrp::all_finite(m); });
    return ok;
}

namespace {

Matrix rows_to_matrix(const std::vector<const Vec*>& rows) {
    const int n = static_cast<int>(rows[0]->size());
    Matrix m(static_cast<int>(rows.size()), n);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(rows[i]->size()) != n)
            throw ShapeError("jet seed: coordinate rows differ in length");
        for (int j = 0; j < n; ++j) m(static_cast<int>(i), j) = (*rows[i])[j];
    }
    return m;
}

void set_row(Matrix& m, int row, double v) {
    for (int j = 0; j < m.cols; ++j) m(row, j) = v;
}

}  // namespace

JetBatch seed_space1dtime(const Vec& x, const Vec& t, const std::vector<Vec>& extra_rows) {
    std::vector<const Vec*> rows{&x, &t};
    for (const Vec& e : extra_rows) rows.push_back(&e);
    JetBatch j = JetBatch::zeros(JetMode::Space1DTime, static_cast<int>(rows.size()),
                                 static_cast<int>(x.size()));
    j.value = rows_to_matrix(rows);
    set_row(j.dx, 0, 1.0);
    set_row(j.dt, 1, 1.0);
    return j;
}

JetBatch seed_space2d(const Vec& x, const Vec& y, const std::vector<Vec>& extra_rows) {
    std::vector<const Vec*> rows{&x, &y};
    for (const Vec& e : extra_rows) rows.push_back(&e);
    JetBatch j =
        JetBatch::zeros(JetMode::Space2D, static_cast<int>(rows.size()), static_cast<int>(x.size()));
    j.value = rows_to_matrix(rows);
    set_row(j.dx, 0, 1.0);
    set_row(j.dy, 1, 1.0);
    return j;
}

JetBatch seed_value_only(const std::vector<Vec>& rows) {
    std::vector<const Vec*> ptrs;
    for (const Vec& r : rows) ptrs.push_back(&r);
    JetBatch j;
    j.mode = JetMode::ValueOnly;
    j.value = rows_to_matrix(ptrs);
    return j;
}

JetBatch affine_jet(const Matrix& w, const Vec& b, const JetBatch& in) {
    if (w.cols != in.width()) throw ShapeError("affine_jet: W.cols != jet width");
    if (!b.empty() && static_cast<int>(b.size()) != w.rows)
        throw ShapeError("affine_jet: bias length != W.rows");
    JetBatch out;
    out.mode = in.mode;
    out.value = matmul(w, in.value);
    if (!b.empty()) add_col_broadcast(out.value, b);
    if (in.mode != JetMode::ValueOnly) {
        out.dx = matmul(w, in.dx);
        out.dxx = matmul(w, in.dxx);
        if (in.mode == JetMode::Space1DTime) out.dt = matmul(w, in.dt);
        if (in.mode == JetMode::Space2D) {
            out.dy = matmul(w, in.dy);
            out.dyy = matmul(w, in.dyy);
        }
    }
    return out;
}

JetBatch affine_t_jet(const Matrix& w, const JetBatch& in) {
    if (w.rows != in.width()) throw ShapeError("affine_t_jet: W.rows != jet width");
    JetBatch out;
    out.mode = in.mode;
    out.value = matmul_tn(w, in.value);
    if (in.mode != JetMode::ValueOnly) {
        out.dx = matmul_tn(w, in.dx);
        out.dxx = matmul_tn(w, in.dxx);
        if (in.mode == JetMode::Space1DTime) out.dt = matmul_tn(w, in.dt);
        if (in.mode == JetMode::Space2D) {
            out.dy = matmul_tn(w, in.dy);
            out.dyy = matmul_tn(w, in.dyy);
        }
    }
    return out;
}

JetBatch diag_jet(const Vec& s, const JetBatch& in) {
    if (static_cast<int>(s.size()) != in.width()) throw ShapeError("diag_jet: length(s) != width");
    JetBatch out = in;
    for_each_channel(out, [&](Matrix& m) {
        for (int i = 0; i < m.rows; ++i) {
            double si = s[i];
            double* row = m.data.data() + static_cast<size_t>(i) * m.cols;
            for (int j = 0; j < m.cols; ++j) row[j] *= si;
        }
    });
    return out;
}

JetBatch tanh_jet(const JetBatch& in) {
    JetBatch out = JetBatch::zeros_like(in);
    const size_t n = in.value.size();
    const double* z = in.value.data.data();
    double* t = out.value.data.data();
    for (size_t i = 0; i < n; ++i) t[i] = std::tanh(z[i]);

    if (in.mode == JetMode::ValueOnly) return out;

    // chain rule with sigma' = 1 - t^2, sigma'' = -2 t sigma'
    auto first = [&](const Matrix& g, Matrix& go) {
        const double* gp = g.data.data();
        double* op = go.data.data();
        for (size_t i = 0; i < n; ++i) {
            double p = 1.0 - t[i] * t[i];
            op[i] = p * gp[i];
        }
    };
    auto second = [&](const Matrix& g, const Matrix& h, Matrix& ho) {
        const double* gp = g.data.data();
        const double* hp = h.data.data();
        double* op = ho.data.data();
        for (size_t i = 0; i < n; ++i) {
            double p = 1.0 - t[i] * t[i];
            double q = -2.0 * t[i] * p;
            op[i] = q * gp[i] * gp[i] + p * hp[i];
        }
    };
    first(in.dx, out.dx);
    second(in.dx, in.dxx, out.dxx);
    if (in.mode == JetMode::Space1DTime) first(in.dt, out.dt);
    if (in.mode == JetMode::Space2D) {
        first(in.dy, out.dy);
        second(in.dy, in.dyy, out.dyy);
    }
    return out;
}

JetBatch relu_jet(const JetBatch& in) {
    JetBatch out = JetBatch::zeros_like(in);
    const size_t n = in.value.size();
    const double* z = in.value.data.data();
    double* v = out.value.data.data();
    for (size_t i = 0; i < n; ++i) v[i] = z[i] > 0.0 ? z[i] : 0.0;
    if (in.mode == JetMode::ValueOnly) return out;
    auto gate = [&](const Matrix& g, Matrix& go) {
        const double* gp = g.data.data();
        double* op = go.data.data();
        for (size_t i = 0; i < n; ++i) op[i] = z[i] > 0.0 ? gp[i] : 0.0;
    };
    gate(in.dx, out.dx);
    gate(in.dxx, out.dxx);
    if (in.mode == JetMode::Space1DTime) gate(in.dt, out.dt);
    if (in.mode == JetMode::Space2D) {
        gate(in.dy, out.dy);
        gate(in.dyy, out.dyy);
    }
    return out;
}

}  // namespace hlrp
