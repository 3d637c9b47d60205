#include "cmi/info.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmi {

double cmi_raw(const JointPmf& p) {
    const LabelSpace& s = p.space();
    double total = 0.0;
    for (int z = 0; z < s.nz; ++z)
        for (int y = 0; y < s.ny; ++y)
            for (int x = 0; x < s.nx; ++x) {
                const double pxyz = p.cell(x, y, z);
                if (pxyz <= 0.0) continue;
                total += pxyz * std::log(pxyz * p.z(z) / (p.xz(x, z) * p.yz(y, z)));
            }
    return total;
}

double cmi(const JointPmf& p) {
    return std::max(0.0, cmi_raw(p));
}

double cmi_hat(const CellCounts& counts) {
    const LabelSpace& s = counts.space();
    if (counts.n() == 0)
        throw std::invalid_argument("empty sample");
    const double n = static_cast<double>(counts.n());
    double total = 0.0;
    for (int z = 0; z < s.nz; ++z)
        for (int y = 0; y < s.ny; ++y)
            for (int x = 0; x < s.nx; ++x) {
                const long long c = counts.cell(x, y, z);
                if (c == 0) continue;
                total += (static_cast<double>(c) / n) *
                         std::log(static_cast<double>(c) * static_cast<double>(counts.z(z)) /
                                  (static_cast<double>(counts.xz(x, z)) *
                                   static_cast<double>(counts.yz(y, z))));
            }
    return std::max(0.0, total);
}

double kl_divergence(const JointPmf& p, const JointPmf& q) {
    if (!(p.space() == q.space()))
        throw std::invalid_argument("kl_divergence requires matching label spaces");
    double total = 0.0;
    for (std::size_t i = 0; i < p.cells().size(); ++i) {
        const double pi = p.cells()[i];
        if (pi <= 0.0) continue;
        const double qi = q.cells()[i];
        if (qi <= 0.0)
            throw std::invalid_argument("kl_divergence requires absolute continuity");
        total += pi * std::log(pi / qi);
    }
    return std::max(0.0, total);
}

JointPmf ci_projection(const JointPmf& p) {
    const LabelSpace& s = p.space();
    std::vector<double> cells(static_cast<std::size_t>(s.cells()), 0.0);
    for (int z = 0; z < s.nz; ++z) {
        const double pz = p.z(z);
        if (pz <= 0.0) continue;
        for (int y = 0; y < s.ny; ++y)
            for (int x = 0; x < s.nx; ++x)
                cells[flat_index_unchecked(s, x, y, z)] = p.xz(x, z) * p.yz(y, z) / pz;
    }
    // Remove rounding drift so the constructor's mass check stays happy.
    double total = 0.0;
    for (double v : cells) total += v;
    for (double& v : cells) v /= total;
    return JointPmf(s, std::move(cells));
}

JointPmf mix(const JointPmf& p, double lambda) {
    if (!(lambda >= 0.0) || !(lambda <= 1.0))
        throw std::invalid_argument("mix requires lambda in [0, 1]");
    const JointPmf proj = ci_projection(p);
    std::vector<double> cells(p.cells().size());
    for (std::size_t i = 0; i < cells.size(); ++i)
        cells[i] = lambda * proj.cells()[i] + (1.0 - lambda) * p.cells()[i];
    return JointPmf(p.space(), std::move(cells));
}

double min_cell_prob(const JointPmf& p) {
    return *std::min_element(p.cells().begin(), p.cells().end());
}

} // namespace cmi
