#pragma once

#include <vector>

namespace cmi {

// Dense square matrix, row-major. Big enough for the covariance/Hessian work
// here (dimension = number of pmf cells, at most a few dozen), so no external
// linear-algebra dependency is pulled in.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim, 0.0) {}

    int dim() const { return dim_; }
    double& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
    double operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * dim_ + c]; }

    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

private:
    int dim_ = 0;
    std::vector<double> a_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);
double trace(const Matrix& a);
double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_asymmetry(const Matrix& a); // max |a - a^T| entry

// Eigenvalues of a symmetric matrix (ascending), cyclic Jacobi rotations.
// Sweeps run until the off-diagonal Frobenius norm drops below
// 1e-12 * max(1, ||A||_F). Throws if the input is visibly asymmetric.
std::vector<double> jacobi_eigenvalues(Matrix a);

} // namespace cmi
