#include "mdflow/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace mdflow {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::diag(const Vec& d) {
    Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

Vec matvec(const Mat& m, const Vec& x) {
    if (static_cast<int>(x.size()) != m.cols)
        throw std::invalid_argument("matvec: dimension mismatch");
    Vec y(m.rows, 0.0);
    for (int i = 0; i < m.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < m.cols; ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Mat matmul(const Mat& a, const Mat& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: dimension mismatch");
    Mat c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Mat transpose(const Mat& m) {
    Mat t(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
    return t;
}

double trace(const Mat& m) {
    double s = 0.0;
    for (int i = 0; i < std::min(m.rows, m.cols); ++i) s += m(i, i);
    return s;
}

double frobenius_sq(const Mat& m) {
    double s = 0.0;
    for (double v : m.a) s += v * v;
    return s;
}

double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec axpy(double alpha, const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("axpy: dimension mismatch");
    Vec z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = alpha * x[i] + y[i];
    return z;
}

double norm2(const Vec& v) { return std::sqrt(dot(v, v)); }

double norm1(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

double norm_inf(const Vec& v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
}

EigenSym jacobi_eigensym(Mat m, double off_tol, int max_sweeps) {
    if (m.rows != m.cols) throw std::invalid_argument("jacobi: matrix not square");
    int n = m.rows;
    Mat v = Mat::identity(n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += m(i, j) * m(i, j);
        return std::sqrt(2.0 * s);
    };

    for (int sweep = 0; sweep < max_sweeps && off_norm() > off_tol; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = m(p, q);
                if (std::abs(apq) <= off_tol * 1e-4) continue;
                double app = m(p, p), aqq = m(q, q);
                double theta = (aqq - app) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    EigenSym e;
    e.values.resize(n);
    for (int i = 0; i < n; ++i) e.values[i] = m(i, i);
    // sort ascending, permuting eigenvector columns alongside
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (e.values[order[j]] < e.values[order[i]]) std::swap(order[i], order[j]);
    EigenSym out;
    out.values.resize(n);
    out.vectors = Mat(n, n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = e.values[order[k]];
        for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

int svec_dim(int order) { return order * (order + 1) / 2; }

int svec_order(int dim) {
    int n = static_cast<int>(std::floor((std::sqrt(8.0 * dim + 1.0) - 1.0) / 2.0));
    for (int k = std::max(1, n - 1); k <= n + 1; ++k)
        if (svec_dim(k) == dim) return k;
    throw std::invalid_argument("svec_order: length " + std::to_string(dim) +
                                " is not a triangular number");
}

static const double kSqrt2 = std::sqrt(2.0);

Vec svec(const Mat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("svec: matrix not square");
    Vec v(svec_dim(m.rows));
    int k = 0;
    for (int i = 0; i < m.rows; ++i)
        for (int j = i; j < m.cols; ++j)
            v[k++] = (i == j) ? m(i, j) : kSqrt2 * 0.5 * (m(i, j) + m(j, i));
    return v;
}

Mat smat(const Vec& packed) {
    int n = svec_order(static_cast<int>(packed.size()));
    Mat m(n, n);
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double v = packed[k++];
            if (i == j) {
                m(i, j) = v;
            } else {
                m(i, j) = v / kSqrt2;
                m(j, i) = v / kSqrt2;
            }
        }
    return m;
}

Vec solve_linear(Mat m, Vec rhs) {
    if (m.rows != m.cols || m.rows != static_cast<int>(rhs.size()))
        throw std::invalid_argument("solve_linear: dimension mismatch");
    int n = m.rows;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
        if (std::abs(m(piv, col)) < 1e-14)
            throw std::runtime_error("solve_linear: singular system");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m(col, j), m(piv, j));
            std::swap(rhs[col], rhs[piv]);
        }
        for (int r = col + 1; r < n; ++r) {
            double f = m(r, col) / m(col, col);
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) m(r, j) -= f * m(col, j);
            rhs[r] -= f * rhs[col];
        }
    }
    Vec x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = rhs[i];
        for (int j = i + 1; j < n; ++j) s -= m(i, j) * x[j];
        x[i] = s / m(i, i);
    }
    return x;
}

}  // namespace mdflow
