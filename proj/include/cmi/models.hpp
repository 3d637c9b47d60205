#pragma once

#include "cmi/core.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace cmi {

// Four binary benchmark models over (X, Y, Z_1..Z_s), Z flattened
// little-endian into one categorical variable with 2^s strata.
//
//   y_to_xz:    Y ~ Bern(1/2); given Y=y, X and every Z_i are independent,
//               X ~ Bern(Phi((2y-1)/(2 sigma))),
//               Z_i ~ Bern(Phi((2y-1) gamma^i / (2 sigma))).
//   xz_to_y:    X, Z_i iid Bern(1/2);
//               Y | x,z ~ Bern(1 - Phi(((x + sum z_i)/(s+1) - 1/2)/sigma)).
//   xy_to_z:    X, Y iid Bern(1/2); given w = (x+y)/2 the Z_i are iid
//               Bern(1 - Phi(alpha (1/2 - w))).
//   xor_parity: X, Z_1..Z_s iid Bern(1/2);
//               P(Y=1 | x+z_1+z_2 odd) = beta, P(Y=0 | even) = beta;
//               Z_3..Z_s carry no signal.
enum class ModelKind { y_to_xz, xz_to_y, xy_to_z, xor_parity };

std::array<ModelKind, 4> all_model_kinds();
const char* model_name(ModelKind kind);
std::optional<ModelKind> model_from_name(const std::string& name);

struct ModelSpec {
    ModelKind kind = ModelKind::xor_parity;
    int s = 4;          // number of conditioning bits, 2^(s+2) cells; s <= 20
    double gamma = 0.5; // y_to_xz
    double sigma = 0.5; // y_to_xz (0.5) and xz_to_y (0.07)
    double alpha = 3.0; // xy_to_z
    double beta = 0.8;  // xor_parity
};

ModelSpec default_spec(ModelKind kind, int s = 4);
void validate_spec(const ModelSpec& spec);

// Exact pmf over all 2^(s+2) cells by direct enumeration of the defining
// conditionals; no sampling involved.
JointPmf build_pmf(const ModelSpec& spec);

// n iid draws by inverse CDF on the flattened cumulative cell array.
Dataset sample(const JointPmf& p, long long n, uint64_t seed);

// (n * min cell of ci_projection(p), n * min cell of p).
std::pair<double, double> table1_row(const ModelSpec& spec, long long n);

} // namespace cmi
