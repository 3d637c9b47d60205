#pragma once

#include "cmi/core.hpp"
#include "cmi/linalg.hpp"

#include <vector>

namespace cmi {

// Gradient of the CMI functional on R^{cells} at p (strictly positive):
//   d CMI / d p(x,y,z) = log[ p(x,y,z) p(z) / (p(x,z) p(y,z)) ].
// Vanishes exactly at conditionally independent pmfs.
std::vector<double> cmi_gradient(const JointPmf& p);

// Hessian of the CMI functional at p (strictly positive):
//   I(x=x',y=y',z=z')/p(x,y,z) - I(x=x',z=z')/p(x,z)
//   - I(y=y',z=z')/p(y,z) + I(z=z')/p(z).
Matrix cmi_hessian(const JointPmf& p);

// Asymptotic covariance of sqrt(n)(phat* - center) under the two schemes,
// evaluated at a strictly positive p. Block-diagonal across z for cp:
//   I(z=z') p(z) [ p(x|z)p(y|z)p(x'|z)p(y'|z) - I(x=x') p(x|z)p(y|z)p(y'|z)
//                  - I(y=y') p(x|z)p(x'|z)p(y|z) + I(x=x',y=y') p(x|z)p(y|z) ]
// and diagonal across (y,z) for cr:
//   I(y=y',z=z') p(y|z) p(z) p(x|z) [ I(x=x') - p(x'|z) ].
Matrix sigma_cp(const JointPmf& p);
Matrix sigma_cr(const JointPmf& p);

// M = cmi_hessian(p) * sigma; only meaningful where the quadratic term drives
// the statistic, so p must satisfy cmi(p) < 1e-10 (and be strictly positive).
// At such p the product is the same for both schemes, idempotent, and has
// trace (nx-1)(ny-1)nz.
Matrix m_matrix(const JointPmf& p, Scheme scheme);

// Direct construction of the same projector:
//   I(x=x'',y=y'',z=z'') - I(x=x'',z=z'') p(y''|z'')
//   - I(y=y'',z=z'') p(x''|z'') + I(z=z'') p(x''|z'') p(y''|z'').
Matrix m_matrix_closed_form(const JointPmf& p);

struct PsdOrder {
    bool dominated = false;  // b - a is PSD up to the tolerance
    double min_eigenvalue = 0.0;
};

// Tests a <= b in the PSD order; tolerance on the smallest eigenvalue -1e-10.
PsdOrder psd_order_check(const Matrix& a, const Matrix& b);

} // namespace cmi
