#pragma once

#include <string>
#include <vector>

namespace mdflow {

using Vec = std::vector<double>;

struct Mat {
    int rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n);
    static Mat diag(const Vec& d);
};

Vec matvec(const Mat& m, const Vec& x);
Mat matmul(const Mat& a, const Mat& b);
Mat transpose(const Mat& m);
double trace(const Mat& m);
double frobenius_sq(const Mat& m);

double dot(const Vec& a, const Vec& b);
Vec axpy(double alpha, const Vec& x, const Vec& y);  // alpha*x + y
double norm2(const Vec& v);
double norm1(const Vec& v);
double norm_inf(const Vec& v);

// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
// Intended for the small dense matrices used here (n <= 16 or so).
struct EigenSym {
    Vec values;   // ascending
    Mat vectors;  // column k pairs with values[k]
};
EigenSym jacobi_eigensym(Mat m, double off_tol = 1e-12, int max_sweeps = 100);

// Symmetric packing: off-diagonal entries scaled by sqrt(2) so that
// dot(svec(A), svec(B)) = trace(A*B) and norm2(svec(A)) = ||A||_F.
int svec_dim(int order);          // order*(order+1)/2
int svec_order(int dim);          // inverse; throws if dim is not triangular
Vec svec(const Mat& symmetric);
Mat smat(const Vec& packed);

// Gaussian elimination with partial pivoting; throws on (near-)singular.
Vec solve_linear(Mat m, Vec rhs);

}  // namespace mdflow
