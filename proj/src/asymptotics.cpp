#include "cmi/asymptotics.hpp"

#include "cmi/info.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmi {

namespace {

void require_positive_cells(const JointPmf& p, const char* who) {
    for (double v : p.cells())
        if (!(v > 0.0))
            throw std::invalid_argument(std::string(who) + " requires strictly positive cells");
}

void require_positive_strata(const JointPmf& p, const char* who) {
    for (int z = 0; z < p.space().nz; ++z)
        if (!(p.z(z) > 0.0))
            throw std::invalid_argument(std::string(who) + " requires positive stratum mass");
}

} // namespace

std::vector<double> cmi_gradient(const JointPmf& p) {
    require_positive_cells(p, "cmi_gradient");
    const LabelSpace& s = p.space();
    std::vector<double> g(static_cast<std::size_t>(s.cells()));
    for (int z = 0; z < s.nz; ++z)
        for (int y = 0; y < s.ny; ++y)
            for (int x = 0; x < s.nx; ++x)
                g[flat_index_unchecked(s, x, y, z)] =
                    std::log(p.cell(x, y, z) * p.z(z) / (p.xz(x, z) * p.yz(y, z)));
    return g;
}

Matrix cmi_hessian(const JointPmf& p) {
    require_positive_cells(p, "cmi_hessian");
    const LabelSpace& s = p.space();
    Matrix h(s.cells());
    for (int z = 0; z < s.nz; ++z)
        for (int y = 0; y < s.ny; ++y)
            for (int x = 0; x < s.nx; ++x) {
                const int r = flat_index_unchecked(s, x, y, z);
                for (int y2 = 0; y2 < s.ny; ++y2)
                    for (int x2 = 0; x2 < s.nx; ++x2) {
                        const int c = flat_index_unchecked(s, x2, y2, z);
                        double v = 1.0 / p.z(z);
                        if (x == x2) v -= 1.0 / p.xz(x, z);
                        if (y == y2) v -= 1.0 / p.yz(y, z);
                        if (x == x2 && y == y2) v += 1.0 / p.cell(x, y, z);
                        h(r, c) = v;
                    }
            }
    return h;
}

Matrix sigma_cp(const JointPmf& p) {
    require_positive_strata(p, "sigma_cp");
    const LabelSpace& s = p.space();
    Matrix out(s.cells());
    for (int z = 0; z < s.nz; ++z) {
        const double pz = p.z(z);
        for (int y = 0; y < s.ny; ++y)
            for (int x = 0; x < s.nx; ++x) {
                const int r = flat_index_unchecked(s, x, y, z);
                const double ax = p.xz(x, z) / pz;
                const double by = p.yz(y, z) / pz;
                for (int y2 = 0; y2 < s.ny; ++y2)
                    for (int x2 = 0; x2 < s.nx; ++x2) {
                        const double ax2 = p.xz(x2, z) / pz;
                        const double by2 = p.yz(y2, z) / pz;
                        const double ae = (x == x2 ? ax : 0.0) - ax * ax2;
                        const double be = (y == y2 ? by : 0.0) - by * by2;
                        out(r, flat_index_unchecked(s, x2, y2, z)) = pz * ae * be;
                    }
            }
    }
    return out;
}

Matrix sigma_cr(const JointPmf& p) {
    require_positive_strata(p, "sigma_cr");
    const LabelSpace& s = p.space();
    Matrix out(s.cells());
    for (int z = 0; z < s.nz; ++z) {
        const double pz = p.z(z);
        for (int y = 0; y < s.ny; ++y) {
            const double by = p.yz(y, z) / pz;
            for (int x = 0; x < s.nx; ++x) {
                const int r = flat_index_unchecked(s, x, y, z);
                const double ax = p.xz(x, z) / pz;
                for (int x2 = 0; x2 < s.nx; ++x2) {
                    const double ax2 = p.xz(x2, z) / pz;
                    out(r, flat_index_unchecked(s, x2, y, z)) =
                        by * pz * ax * ((x == x2 ? 1.0 : 0.0) - ax2);
                }
            }
        }
    }
    return out;
}

Matrix m_matrix(const JointPmf& p, Scheme scheme) {
    require_positive_cells(p, "m_matrix");
    if (!(cmi(p) < 1e-10))
        throw std::invalid_argument("m_matrix requires a conditionally independent pmf");
    return multiply(cmi_hessian(p), scheme == Scheme::cp ? sigma_cp(p) : sigma_cr(p));
}

Matrix m_matrix_closed_form(const JointPmf& p) {
    require_positive_strata(p, "m_matrix_closed_form");
    const LabelSpace& s = p.space();
    Matrix out(s.cells());
    for (int z = 0; z < s.nz; ++z) {
        const double pz = p.z(z);
        for (int y = 0; y < s.ny; ++y)
            for (int x = 0; x < s.nx; ++x) {
                const int r = flat_index_unchecked(s, x, y, z);
                for (int y2 = 0; y2 < s.ny; ++y2) {
                    const double by2 = p.yz(y2, z) / pz;
                    for (int x2 = 0; x2 < s.nx; ++x2) {
                        const double ax2 = p.xz(x2, z) / pz;
                        out(r, flat_index_unchecked(s, x2, y2, z)) =
                            ((x == x2 ? 1.0 : 0.0) - ax2) * ((y == y2 ? 1.0 : 0.0) - by2);
                    }
                }
            }
    }
    return out;
}

PsdOrder psd_order_check(const Matrix& a, const Matrix& b) {
    Matrix diff = subtract(b, a);
    // Symmetrize the rounding noise away before the eigensolve.
    for (int i = 0; i < diff.dim(); ++i)
        for (int j = i + 1; j < diff.dim(); ++j) {
            const double v = 0.5 * (diff(i, j) + diff(j, i));
            diff(i, j) = v;
            diff(j, i) = v;
        }
    const std::vector<double> eig = jacobi_eigenvalues(diff);
    PsdOrder out;
    out.min_eigenvalue = eig.empty() ? 0.0 : eig.front();
    out.dominated = out.min_eigenvalue >= -1e-10;
    return out;
}

} // namespace cmi
