#pragma once

#include "cmi/core.hpp"

namespace cmi {

// Conditional mutual information I(X;Y|Z) in nats:
//   sum_{x,y,z} p(x,y,z) * log[ p(x,y,z) p(z) / (p(x,z) p(y,z)) ],
// summands with p(x,y,z) = 0 contribute nothing. Non-negative; equals zero
// iff X and Y are conditionally independent given Z.
double cmi(const JointPmf& p);

// Same sum without the final clamp to zero; can be a tiny negative residue
// from rounding. Kept separate for diagnostics.
double cmi_raw(const JointPmf& p);

// Plug-in estimate from counts:
//   sum over cells with n(x,y,z) > 0 of
//   (n(x,y,z)/n) * log[ n(x,y,z) n(z) / (n(x,z) n(y,z)) ].
// Empty cells are omitted, so the margins in the ratio are always positive.
double cmi_hat(const CellCounts& counts);

// KL divergence D(p || q) in nats; requires matching spaces and absolute
// continuity (q(c) = 0 forces p(c) = 0).
double kl_divergence(const JointPmf& p, const JointPmf& q);

// Product pmf p(x|z) p(y|z) p(z): the information projection of p onto the
// conditionally independent family. Strata with p(z) = 0 get zero mass.
JointPmf ci_projection(const JointPmf& p);

// lambda * ci_projection(p) + (1 - lambda) * p; shares margins (and hence the
// projection) with p for every lambda in [0, 1].
JointPmf mix(const JointPmf& p, double lambda);

double min_cell_prob(const JointPmf& p);

} // namespace cmi
