#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hlrp {

using Vec = std::vector<double>;

// Dense row-major double matrix. A column vector is a rows x 1 matrix.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}
    Matrix(int r, int c, std::vector<double> d);

    static Matrix identity(int n);
    static Matrix from_rows(int r, int c, const std::vector<double>& d) { return Matrix(r, c, d); }
    static Matrix column(const Vec& v);

    double& operator()(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    size_t size() const { return data.size(); }
    bool empty() const { return data.empty(); }
    bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }

    Matrix transposed() const;
};

// C = A * B
Matrix matmul(const Matrix& a, const Matrix& b);
// C = A^T * B
Matrix matmul_tn(const Matrix& a, const Matrix& b);
// C = A * B^T
Matrix matmul_nt(const Matrix& a, const Matrix& b);
// C += alpha * A * B (and the transposed variants)
void gemm_acc(Matrix& c, const Matrix& a, const Matrix& b, double alpha = 1.0);
void gemm_tn_acc(Matrix& c, const Matrix& a, const Matrix& b, double alpha = 1.0);
void gemm_nt_acc(Matrix& c, const Matrix& a, const Matrix& b, double alpha = 1.0);

// y = A * x for a column vector x
Vec matvec(const Matrix& a, const Vec& x);

void add_inplace(Matrix& a, const Matrix& b, double alpha = 1.0);
void scale_inplace(Matrix& a, double alpha);
// adds b[i] to every entry of row i
void add_col_broadcast(Matrix& a, const Vec& b);

double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);
bool all_finite(const Matrix& a);

// ||A^T A - I||_F^2, the column-orthonormality defect
double gram_defect(const Matrix& a);

struct SvdResult {
    Matrix u;   // m x n (thin)
    Vec s;      // n, descending, nonnegative
    Matrix v;   // n x n
};

// Thin SVD via one-sided Jacobi. Intended for matrices up to ~128x128.
// Satisfies A = U diag(s) V^T with reconstruction and orthogonality
// residuals at the 1e-10 * max(1, ||A||_F) level.
SvdResult svd(const Matrix& a);

// Orthonormal basis of a Gaussian draw: QR via repeated modified
// Gram-Schmidt. Requires rows >= cols.
Matrix orthonormalize_columns(const Matrix& a);

}  // namespace hlrp
