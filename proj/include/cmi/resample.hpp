#pragma once

#include "cmi/core.hpp"
#include "cmi/linalg.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cmi {

// Conditional distribution q(x|z), one column per stratum. Columns must be
// non-negative and sum to 1 within 1e-12.
struct CondTable {
    int nx = 0;
    int nz = 0;
    std::vector<double> q; // x + nx*z

    double at(int x, int z) const { return q[x + nx * z]; }
};

CondTable make_cond_table(int nx, int nz, std::vector<double> q);

// q(x|z) = p(x,z)/p(z); throws if some stratum has p(z) = 0.
CondTable true_conditional(const JointPmf& p);

struct ResamplePlan {
    Scheme scheme = Scheme::cp;
    int b_count = 50;
    std::optional<CondTable> conditional; // required for cr
};

void validate_plan(const ResamplePlan& plan, const LabelSpace& space);

// Permutes the x-values uniformly within each z-stratum; y and z stay put.
// Deterministic in (data margins, seed): each stratum draws from its own
// child stream, and the shuffle acts on a canonical ordering (positions
// sorted by y, x multiset sorted), which leaves the arrangement distribution
// uniform but makes the resampled cell counts depend on the data only through
// the per-stratum margins.
Dataset cp_resample(const Dataset& data, uint64_t seed);

// Redraws each x-value independently from q(.|z_i); y and z stay put.
// Throws if a row's stratum has no column in the conditional.
Dataset cr_resample(const Dataset& data, const CondTable& conditional, uint64_t seed);

// Reusable scaffolding for repeated resampling of one dataset. The counts
// produced for a given seed are identical to count(cp_resample(data, seed))
// resp. count(cr_resample(data, conditional, seed)).
class Resampler {
public:
    Resampler(const Dataset& data, const ResamplePlan& plan);

    const LabelSpace& space() const { return space_; }
    long long n() const { return static_cast<long long>(ys_.size()); }

    // Fills `cells` (resized to space.cells()) with the resampled counts.
    // `scratch` is caller-provided so one Resampler can serve many threads.
    void resampled_cells(uint64_t seed, std::vector<int32_t>& scratch,
                         std::vector<long long>& cells) const;

private:
    LabelSpace space_;
    Scheme scheme_;
    std::vector<double> cum_;           // cr: cumulative q per stratum
    std::vector<int32_t> ys_, zs_;      // rows grouped by stratum (cp: y-sorted)
    std::vector<int32_t> xs_sorted_;    // cp: per-stratum sorted x multiset
    std::vector<int32_t> stratum_begin_; // offsets into the grouped rows, size nz+1
};

// Per-stratum margins (n(x,z)), (n(y,z)); the support and law of the cell
// counts produced by cp_resample depend on the data only through these.
class TableLaw {
public:
    static TableLaw from_counts(const CellCounts& counts);
    TableLaw(LabelSpace space, std::vector<long long> xz, std::vector<long long> yz);

    const LabelSpace& space() const { return space_; }
    long long xz(int x, int z) const { return xz_[x + space_.nx * z]; }
    long long yz(int y, int z) const { return yz_[y + space_.ny * z]; }
    long long z(int z) const { return z_[z]; }
    long long n() const { return n_; }

private:
    LabelSpace space_;
    std::vector<long long> xz_, yz_, z_;
    long long n_ = 0;
};

// log P*(counts) for the cp scheme:
//   sum_z log[ prod_x n(x,z)! prod_y n(y,z)! / ( n(z)! prod_{x,y} k(x,y,z)! ) ].
// Returns -infinity when the counts' margins do not match the law's.
double table_log_prob(const TableLaw& law, const CellCounts& counts);

// All cell-count tables consistent with the margins (the support of the cp
// law). Throws "enumeration too large" beyond `max_tables`.
std::vector<CellCounts> enumerate_tables(const TableLaw& law,
                                         std::size_t max_tables = 1000000);

// Empirical covariance of sqrt(n) (phat* - center) over `draws` resamples.
// `center` has one entry per cell. Accumulation is chunked in a fixed layout,
// so serial and parallel execution give bit-identical results.
Matrix resample_covariance(const Dataset& data, const ResamplePlan& plan,
                           const std::vector<double>& center, int draws,
                           uint64_t seed, bool parallel);

} // namespace cmi
