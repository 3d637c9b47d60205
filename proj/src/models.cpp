#include "cmi/models.hpp"

#include "cmi/info.hpp"
#include "cmi/rng.hpp"
#include "cmi/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmi {

std::array<ModelKind, 4> all_model_kinds() {
    return {ModelKind::y_to_xz, ModelKind::xz_to_y, ModelKind::xy_to_z,
            ModelKind::xor_parity};
}

const char* model_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::y_to_xz: return "y_to_xz";
        case ModelKind::xz_to_y: return "xz_to_y";
        case ModelKind::xy_to_z: return "xy_to_z";
        case ModelKind::xor_parity: return "xor";
    }
    return "?";
}

std::optional<ModelKind> model_from_name(const std::string& name) {
    for (ModelKind kind : all_model_kinds())
        if (name == model_name(kind)) return kind;
    if (name == "xor_parity") return ModelKind::xor_parity;
    return std::nullopt;
}

ModelSpec default_spec(ModelKind kind, int s) {
    ModelSpec spec;
    spec.kind = kind;
    spec.s = s;
    if (kind == ModelKind::xz_to_y) spec.sigma = 0.07;
    return spec;
}

void validate_spec(const ModelSpec& spec) {
    const int min_s = spec.kind == ModelKind::xor_parity ? 2 : 1;
    if (spec.s < min_s || spec.s > 20)
        throw std::invalid_argument("model spec: s out of range");
    if (!(spec.sigma > 0.0))
        throw std::invalid_argument("model spec: sigma must be positive");
    if (!(spec.gamma > 0.0))
        throw std::invalid_argument("model spec: gamma must be positive");
    if (!(spec.beta > 0.0) || !(spec.beta < 1.0))
        throw std::invalid_argument("model spec: beta must lie in (0, 1)");
    if (!std::isfinite(spec.alpha))
        throw std::invalid_argument("model spec: alpha must be finite");
}

namespace {

inline int bit(int z, int i) { return (z >> (i - 1)) & 1; } // z_i, i = 1..s

inline double bern(double p1, int value) { return value ? p1 : 1.0 - p1; }

double cell_prob(const ModelSpec& spec, int x, int y, int z) {
    const int s = spec.s;
    switch (spec.kind) {
        case ModelKind::y_to_xz: {
            const double sign = 2.0 * y - 1.0;
            double p = 0.5 * bern(std_normal_cdf(sign / (2.0 * spec.sigma)), x);
            double gamma_pow = 1.0;
            for (int i = 1; i <= s; ++i) {
                gamma_pow *= spec.gamma;
                p *= bern(std_normal_cdf(sign * gamma_pow / (2.0 * spec.sigma)), bit(z, i));
            }
            return p;
        }
        case ModelKind::xz_to_y: {
            int total = x;
            for (int i = 1; i <= s; ++i) total += bit(z, i);
            const double mean = static_cast<double>(total) / (s + 1);
            const double p1 = 1.0 - std_normal_cdf((mean - 0.5) / spec.sigma);
            return std::ldexp(bern(p1, y), -(s + 1));
        }
        case ModelKind::xy_to_z: {
            const double w = 0.5 * (x + y);
            const double q1 = 1.0 - std_normal_cdf(spec.alpha * (0.5 - w));
            double p = 0.25;
            for (int i = 1; i <= s; ++i) p *= bern(q1, bit(z, i));
            return p;
        }
        case ModelKind::xor_parity: {
            const int parity = (x + bit(z, 1) + bit(z, 2)) & 1;
            const double p1 = parity ? spec.beta : 1.0 - spec.beta;
            return std::ldexp(bern(p1, y), -(s + 1));
        }
    }
    return 0.0;
}

} // namespace

JointPmf build_pmf(const ModelSpec& spec) {
    validate_spec(spec);
    const LabelSpace space(2, 2, 1 << spec.s);
    std::vector<double> cells(static_cast<std::size_t>(space.cells()));
    for (int z = 0; z < space.nz; ++z)
        for (int y = 0; y < 2; ++y)
            for (int x = 0; x < 2; ++x)
                cells[flat_index_unchecked(space, x, y, z)] = cell_prob(spec, x, y, z);
    // The conditionals multiply out to exactly 1 in total, but make the
    // constructor's mass check independent of rounding order anyway.
    double total = 0.0;
    for (double v : cells) total += v;
    for (double& v : cells) v /= total;
    return JointPmf(space, std::move(cells));
}

Dataset sample(const JointPmf& p, long long n, uint64_t seed) {
    if (n < 1)
        throw std::invalid_argument("sample needs n >= 1");
    const LabelSpace& s = p.space();
    std::vector<double> cum(p.cells().size());
    double acc = 0.0;
    for (std::size_t i = 0; i < cum.size(); ++i) {
        acc += p.cells()[i];
        cum[i] = acc;
    }
    cum.back() = 1.0;

    Dataset data;
    data.space = s;
    data.x.resize(static_cast<std::size_t>(n));
    data.y.resize(static_cast<std::size_t>(n));
    data.z.resize(static_cast<std::size_t>(n));
    Rng rng(seed);
    for (long long i = 0; i < n; ++i) {
        const double u = rng.next_unit();
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        const int flat = static_cast<int>(it - cum.begin());
        int x = 0, y = 0, z = 0;
        unflat_index(s, std::min(flat, s.cells() - 1), x, y, z);
        data.x[static_cast<std::size_t>(i)] = static_cast<int32_t>(x);
        data.y[static_cast<std::size_t>(i)] = static_cast<int32_t>(y);
        data.z[static_cast<std::size_t>(i)] = static_cast<int32_t>(z);
    }
    return data;
}

std::pair<double, double> table1_row(const ModelSpec& spec, long long n) {
    const JointPmf p = build_pmf(spec);
    const double nd = static_cast<double>(n);
    return {nd * min_cell_prob(ci_projection(p)), nd * min_cell_prob(p)};
}

} // namespace cmi
