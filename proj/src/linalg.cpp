#include "hlrp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <cblas.h>

#include "hlrp/errors.hpp"

namespace hlrp {

Matrix::Matrix(int r, int c, std::vector<double> d) : rows(r), cols(c), data(std::move(d)) {
    if (data.size() != static_cast<size_t>(r) * c)
        throw ShapeError("matrix init: data length " + std::to_string(data.size()) + " != " +
                         std::to_string(r) + "x" + std::to_string(c));
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::column(const Vec& v) {
    Matrix m(static_cast<int>(v.size()), 1);
    m.data = v;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

namespace {

void check(bool ok, const char* what) {
    if (!ok) throw ShapeError(what);
}

void dgemm(CBLAS_TRANSPOSE ta, CBLAS_TRANSPOSE tb, int m, int n, int k, double alpha,
           const Matrix& a, const Matrix& b, double beta, Matrix& c) {
    cblas_dgemm(CblasRowMajor, ta, tb, m, n, k, alpha, a.data.data(), a.cols, b.data.data(),
                b.cols, beta, c.data.data(), c.cols);
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
    check(a.cols == b.rows, "matmul: inner dimensions differ");
    Matrix c(a.rows, b.cols);
    dgemm(CblasNoTrans, CblasNoTrans, a.rows, b.cols, a.cols, 1.0, a, b, 0.0, c);
    return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    check(a.rows == b.rows, "matmul_tn: inner dimensions differ");
    Matrix c(a.cols, b.cols);
    dgemm(CblasTrans, CblasNoTrans, a.cols, b.cols, a.rows, 1.0, a, b, 0.0, c);
    return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    check(a.cols == b.cols, "matmul_nt: inner dimensions differ");
    Matrix c(a.rows, b.rows);
    dgemm(CblasNoTrans, CblasTrans, a.rows, b.rows, a.cols, 1.0, a, b, 0.0, c);
    return c;
}

void gemm_acc(Matrix& c, const Matrix& a, const Matrix& b, double alpha) {
    check(a.cols == b.rows && c.rows == a.rows && c.cols == b.cols, "gemm_acc: shape mismatch");
    dgemm(CblasNoTrans, CblasNoTrans, a.rows, b.cols, a.cols, alpha, a, b, 1.0, c);
}

void gemm_tn_acc(Matrix& c, const Matrix& a, const Matrix& b, double alpha) {
    check(a.rows == b.rows && c.rows == a.cols && c.cols == b.cols, "gemm_tn_acc: shape mismatch");
    dgemm(CblasTrans, CblasNoTrans, a.cols, b.cols, a.rows, alpha, a, b, 1.0, c);
}

void gemm_nt_acc(Matrix& c, const Matrix& a, const Matrix& b, double alpha) {
    check(a.cols == b.cols && c.rows == a.rows && c.cols == b.rows, "gemm_nt_acc: shape mismatch");
    dgemm(CblasNoTrans, CblasTrans, a.rows, b.rows, a.cols, alpha, a, b, 1.0, c);
}

Vec matvec(const Matrix& a, const Vec& x) {
    check(a.cols == static_cast<int>(x.size()), "matvec: dimension mismatch");
    Vec y(a.rows, 0.0);
    cblas_dgemv(CblasRowMajor, CblasNoTrans, a.rows, a.cols, 1.0, a.data.data(), a.cols, x.data(),
                1, 0.0, y.data(), 1);
    return y;
}

void add_inplace(Matrix& a, const Matrix& b, double alpha) {
    check(a.same_shape(b), "add_inplace: shape mismatch");
    cblas_daxpy(static_cast<int>(a.size()), alpha, b.data.data(), 1, a.data.data(), 1);
}

void scale_inplace(Matrix& a, double alpha) {
    cblas_dscal(static_cast<int>(a.size()), alpha, a.data.data(), 1);
}

void add_col_broadcast(Matrix& a, const Vec& b) {
    check(a.rows == static_cast<int>(b.size()), "add_col_broadcast: bias length != rows");
    for (int i = 0; i < a.rows; ++i) {
        double bi = b[i];
        double* row = a.data.data() + static_cast<size_t>(i) * a.cols;
        for (int j = 0; j < a.cols; ++j) row[j] += bi;
    }
}

double frobenius_norm(const Matrix& a) {
    return cblas_dnrm2(static_cast<int>(a.size()), a.data.data(), 1);
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    for (double v : a.data) m = std::max(m, std::abs(v));
    return m;
}

bool all_finite(const Matrix& a) {
    for (double v : a.data)
        if (!std::isfinite(v)) return false;
    return true;
}

double gram_defect(const Matrix& a) {
    Matrix g = matmul_tn(a, a);
    for (int i = 0; i < g.rows; ++i) g(i, i) -= 1.0;
    double f = frobenius_norm(g);
    return f * f;
}

namespace {

// One-sided Jacobi on the columns of g; accumulates rotations into v.
void jacobi_sweeps(Matrix& g, Matrix& v) {
    const int n = g.cols;
    const int m = g.rows;
    const double tol = 1e-15;
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (int i = 0; i < m; ++i) {
                    double gp = g(i, p), gq = g(i, q);
                    app += gp * gp;
                    aqq += gq * gq;
                    apq += gp * gq;
                }
                if (std::abs(apq) <= tol * std::sqrt(app * aqq) || apq == 0.0) continue;
                rotated = true;
                double zeta = (aqq - app) / (2.0 * apq);
                double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double cs = 1.0 / std::sqrt(1.0 + t * t);
                double sn = cs * t;
                for (int i = 0; i < m; ++i) {
                    double gp = g(i, p), gq = g(i, q);
                    g(i, p) = cs * gp - sn * gq;
                    g(i, q) = sn * gp + cs * gq;
                }
                for (int i = 0; i < n; ++i) {
                    double vp = v(i, p), vq = v(i, q);
                    v(i, p) = cs * vp - sn * vq;
                    v(i, q) = sn * vp + cs * vq;
                }
            }
        }
        if (!rotated) break;
    }
}

}  // namespace

SvdResult svd(const Matrix& a) {
    if (!all_finite(a)) throw NumericError("svd", "non-finite input");
    if (a.rows < a.cols) {
        SvdResult t = svd(a.transposed());
        return SvdResult{std::move(t.v), std::move(t.s), std::move(t.u)};
    }
    const int m = a.rows, n = a.cols;
    Matrix g = a;
    Matrix v = Matrix::identity(n);
    jacobi_sweeps(g, v);

    Vec s(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double norm = 0.0;
        for (int i = 0; i < m; ++i) norm += g(i, j) * g(i, j);
        s[j] = std::sqrt(norm);
    }
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return s[i] > s[j]; });

    SvdResult out;
    out.u = Matrix(m, n);
    out.v = Matrix(n, n);
    out.s.resize(n);
    for (int jj = 0; jj < n; ++jj) {
        int j = idx[jj];
        out.s[jj] = s[j];
        if (s[j] > 0.0) {
            for (int i = 0; i < m; ++i) out.u(i, jj) = g(i, j) / s[j];
        } else {
            // zero singular value: leave a zero column; orthogonality of U is
            // only meaningful on the numerical range anyway
            for (int i = 0; i < m; ++i) out.u(i, jj) = 0.0;
        }
        for (int i = 0; i < n; ++i) out.v(i, jj) = v(i, j);
    }
    return out;
}

Matrix orthonormalize_columns(const Matrix& a) {
    if (a.rows < a.cols) throw ArgumentError("orthonormalize_columns: needs rows >= cols");
    Matrix q = a;
    const int m = q.rows, n = q.cols;
    // two MGS passes; plenty for Gaussian draws
    for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < j; ++k) {
                double dot = 0.0;
                for (int i = 0; i < m; ++i) dot += q(i, k) * q(i, j);
                for (int i = 0; i < m; ++i) q(i, j) -= dot * q(i, k);
            }
            double norm = 0.0;
            for (int i = 0; i < m; ++i) norm += q(i, j) * q(i, j);
            norm = std::sqrt(norm);
            if (norm == 0.0) throw NumericError("orthonormalize_columns", "rank-deficient draw");
            for (int i = 0; i < m; ++i) q(i, j) /= norm;
        }
    }
    return q;
}

}  // namespace hlrp
