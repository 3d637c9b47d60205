#include "cmi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmi {

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("matrix dimensions do not match");
    const int n = a.dim();
    Matrix out(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j)
                out(i, j) += aik * b(k, j);
        }
    return out;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("matrix dimensions do not match");
    Matrix out(a.dim());
    for (std::size_t i = 0; i < out.data().size(); ++i)
        out.data()[i] = a.data()[i] - b.data()[i];
    return out;
}

double trace(const Matrix& a) {
    double t = 0.0;
    for (int i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    for (double v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("matrix dimensions do not match");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

double max_asymmetry(const Matrix& a) {
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j)
            m = std::max(m, std::abs(a(i, j) - a(j, i)));
    return m;
}

namespace {

double frobenius(const Matrix& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

double off_diagonal_frobenius(const Matrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

} // namespace

std::vector<double> jacobi_eigenvalues(Matrix a) {
    const int n = a.dim();
    if (n == 0) return {};
    const double norm = frobenius(a);
    if (max_asymmetry(a) > 1e-8 * std::max(1.0, norm))
        throw std::invalid_argument("jacobi_eigenvalues requires a symmetric matrix");
    // Symmetrize so rotations preserve symmetry exactly.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = v;
            a(j, i) = v;
        }

    const double tol = 1e-12 * std::max(1.0, norm);
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_frobenius(a) < tol) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
    }

    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

} // namespace cmi
