#include "cmi/resample.hpp"

#include "cmi/exec.hpp"
#include "cmi/rng.hpp"
#include "cmi/special.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cmi {

CondTable make_cond_table(int nx, int nz, std::vector<double> q) {
    if (nx < 2 || nz < 1)
        throw std::invalid_argument("conditional table needs nx >= 2 and nz >= 1");
    if (static_cast<int>(q.size()) != nx * nz)
        throw std::invalid_argument("conditional table has wrong size");
    for (int z = 0; z < nz; ++z) {
        double col = 0.0;
        for (int x = 0; x < nx; ++x) {
            const double v = q[x + nx * z];
            if (!(v >= 0.0))
                throw std::invalid_argument("conditional table entries must be non-negative");
            col += v;
        }
        if (std::abs(col - 1.0) > 1e-12)
            throw std::invalid_argument("conditional table columns must sum to 1");
    }
    return CondTable{nx, nz, std::move(q)};
}

CondTable true_conditional(const JointPmf& p) {
    const LabelSpace& s = p.space();
    std::vector<double> q(static_cast<std::size_t>(s.nx) * s.nz);
    for (int z = 0; z < s.nz; ++z) {
        const double pz = p.z(z);
        if (!(pz > 0.0))
            throw std::invalid_argument("true_conditional requires positive stratum mass");
        for (int x = 0; x < s.nx; ++x)
            q[x + s.nx * z] = p.xz(x, z) / pz;
    }
    return make_cond_table(s.nx, s.nz, std::move(q));
}

void validate_plan(const ResamplePlan& plan, const LabelSpace& space) {
    if (plan.b_count < 1)
        throw std::invalid_argument("resample plan needs b_count >= 1");
    if (plan.scheme == Scheme::cr) {
        if (!plan.conditional)
            throw std::invalid_argument("cr resampling needs a conditional table");
        if (plan.conditional->nx != space.nx || plan.conditional->nz != space.nz)
            throw std::invalid_argument("conditional table does not match the label space");
    }
}

namespace {

// Rows of each stratum in dataset order; for cp the y-values are additionally
// sorted so the dealt counts depend on the data only through the margins.
struct StratumIndex {
    std::vector<int32_t> order;  // dataset positions grouped by stratum
    std::vector<int32_t> begin;  // size nz+1
};

StratumIndex group_by_stratum(const Dataset& data) {
    StratumIndex idx;
    idx.begin.assign(data.space.nz + 1, 0);
    for (int32_t z : data.z) ++idx.begin[z + 1];
    for (int z = 0; z < data.space.nz; ++z) idx.begin[z + 1] += idx.begin[z];
    idx.order.resize(data.n());
    std::vector<int32_t> cursor(idx.begin.begin(), idx.begin.end() - 1);
    for (std::size_t i = 0; i < data.n(); ++i)
        idx.order[cursor[data.z[i]]++] = static_cast<int32_t>(i);
    return idx;
}

int draw_from_column(Rng& rng, const double* cum, int nx) {
    const double u = rng.next_unit();
    for (int x = 0; x < nx - 1; ++x)
        if (u < cum[x]) return x;
    return nx - 1;
}

} // namespace

Dataset cp_resample(const Dataset& data, uint64_t seed) {
    validate_dataset(data);
    const StratumIndex idx = group_by_stratum(data);
    Dataset out = data;
    std::vector<int32_t> positions, values;
    for (int z = 0; z < data.space.nz; ++z) {
        const int b = idx.begin[z], e = idx.begin[z + 1];
        if (b == e) continue;
        positions.assign(idx.order.begin() + b, idx.order.begin() + e);
        std::stable_sort(positions.begin(), positions.end(),
                         [&](int32_t i, int32_t j) { return data.y[i] < data.y[j]; });
        values.clear();
        for (int k = b; k < e; ++k) values.push_back(data.x[idx.order[k]]);
        std::sort(values.begin(), values.end());
        Rng rng(derive_seed(seed, {static_cast<uint64_t>(z)}));
        for (std::size_t i = values.size() - 1; i > 0; --i)
            std::swap(values[i], values[rng.below(i + 1)]);
        for (std::size_t k = 0; k < positions.size(); ++k)
            out.x[positions[k]] = values[k];
    }
    return out;
}

Dataset cr_resample(const Dataset& data, const CondTable& conditional, uint64_t seed) {
    validate_dataset(data);
    if (conditional.nx != data.space.nx || conditional.nz != data.space.nz)
        throw std::invalid_argument("conditional table does not match the label space");
    std::vector<double> cum(conditional.q.size());
    for (int z = 0; z < conditional.nz; ++z) {
        double acc = 0.0;
        for (int x = 0; x < conditional.nx; ++x) {
            acc += conditional.at(x, z);
            cum[x + conditional.nx * z] = acc;
        }
    }
    const StratumIndex idx = group_by_stratum(data);
    Dataset out = data;
    for (int z = 0; z < data.space.nz; ++z) {
        const int b = idx.begin[z], e = idx.begin[z + 1];
        if (b == e) continue;
        Rng rng(derive_seed(seed, {static_cast<uint64_t>(z)}));
        for (int k = b; k < e; ++k)
            out.x[idx.order[k]] =
                draw_from_column(rng, cum.data() + static_cast<std::size_t>(conditional.nx) * z,
                                 conditional.nx);
    }
    return out;
}

Resampler::Resampler(const Dataset& data, const ResamplePlan& plan) : space_(data.space) {
    validate_dataset(data);
    validate_plan(plan, data.space);
    scheme_ = plan.scheme;

    const StratumIndex idx = group_by_stratum(data);
    stratum_begin_ = idx.begin;
    ys_.resize(data.n());
    zs_.resize(data.n());
    for (std::size_t k = 0; k < data.n(); ++k) {
        ys_[k] = data.y[idx.order[k]];
        zs_[k] = data.z[idx.order[k]];
    }

    if (scheme_ == Scheme::cp) {
        xs_sorted_.resize(data.n());
        for (std::size_t k = 0; k < data.n(); ++k) xs_sorted_[k] = data.x[idx.order[k]];
        for (int z = 0; z < space_.nz; ++z) {
            std::sort(ys_.begin() + stratum_begin_[z], ys_.begin() + stratum_begin_[z + 1]);
            std::sort(xs_sorted_.begin() + stratum_begin_[z],
                      xs_sorted_.begin() + stratum_begin_[z + 1]);
        }
    } else {
        const CondTable& q = *plan.conditional;
        cum_.resize(q.q.size());
        for (int z = 0; z < q.nz; ++z) {
            double acc = 0.0;
            for (int x = 0; x < q.nx; ++x) {
                acc += q.at(x, z);
                cum_[x + q.nx * z] = acc;
            }
        }
    }
}

void Resampler::resampled_cells(uint64_t seed, std::vector<int32_t>& scratch,
                                std::vector<long long>& cells) const {
    cells.assign(static_cast<std::size_t>(space_.cells()), 0);
    for (int z = 0; z < space_.nz; ++z) {
        const int b = stratum_begin_[z], e = stratum_begin_[z + 1];
        if (b == e) continue;
        Rng rng(derive_seed(seed, {static_cast<uint64_t>(z)}));
        if (scheme_ == Scheme::cp) {
            scratch.assign(xs_sorted_.begin() + b, xs_sorted_.begin() + e);
            for (std::size_t i = scratch.size() - 1; i > 0; --i)
                std::swap(scratch[i], scratch[rng.below(i + 1)]);
            for (int k = b; k < e; ++k)
                ++cells[flat_index_unchecked(space_, scratch[k - b], ys_[k], z)];
        } else {
            const double* col = cum_.data() + static_cast<std::size_t>(space_.nx) * z;
            for (int k = b; k < e; ++k)
                ++cells[flat_index_unchecked(space_, draw_from_column(rng, col, space_.nx),
                                             ys_[k], z)];
        }
    }
}

TableLaw TableLaw::from_counts(const CellCounts& counts) {
    std::vector<long long> xz(counts.space().nx * counts.space().nz);
    std::vector<long long> yz(counts.space().ny * counts.space().nz);
    for (int z = 0; z < counts.space().nz; ++z) {
        for (int x = 0; x < counts.space().nx; ++x)
            xz[x + counts.space().nx * z] = counts.xz(x, z);
        for (int y = 0; y < counts.space().ny; ++y)
            yz[y + counts.space().ny * z] = counts.yz(y, z);
    }
    return TableLaw(counts.space(), std::move(xz), std::move(yz));
}

TableLaw::TableLaw(LabelSpace space, std::vector<long long> xz, std::vector<long long> yz)
    : space_(space), xz_(std::move(xz)), yz_(std::move(yz)) {
    if (static_cast<int>(xz_.size()) != space_.nx * space_.nz ||
        static_cast<int>(yz_.size()) != space_.ny * space_.nz)
        throw std::invalid_argument("margin vectors do not match the label space");
    z_.assign(space_.nz, 0);
    for (int z = 0; z < space_.nz; ++z) {
        long long sx = 0, sy = 0;
        for (int x = 0; x < space_.nx; ++x) {
            if (xz_[x + space_.nx * z] < 0)
                throw std::invalid_argument("margins must be non-negative");
            sx += xz_[x + space_.nx * z];
        }
        for (int y = 0; y < space_.ny; ++y) {
            if (yz_[y + space_.ny * z] < 0)
                throw std::invalid_argument("margins must be non-negative");
            sy += yz_[y + space_.ny * z];
        }
        if (sx != sy)
            throw std::invalid_argument("x and y margins disagree on a stratum total");
        z_[z] = sx;
        n_ += sx;
    }
}

double table_log_prob(const TableLaw& law, const CellCounts& counts) {
    if (!(counts.space() == law.space()))
        throw std::invalid_argument("table_log_prob requires matching label spaces");
    const LabelSpace& s = law.space();
    for (int z = 0; z < s.nz; ++z) {
        for (int x = 0; x < s.nx; ++x)
            if (counts.xz(x, z) != law.xz(x, z))
                return -std::numeric_limits<double>::infinity();
        for (int y = 0; y < s.ny; ++y)
            if (counts.yz(y, z) != law.yz(y, z))
                return -std::numeric_limits<double>::infinity();
    }
    const LogFactorial lf(law.n());
    double lp = 0.0;
    for (int z = 0; z < s.nz; ++z) {
        for (int x = 0; x < s.nx; ++x) lp += lf(law.xz(x, z));
        for (int y = 0; y < s.ny; ++y) lp += lf(law.yz(y, z));
        lp -= lf(law.z(z));
        for (int y = 0; y < s.ny; ++y)
            for (int x = 0; x < s.nx; ++x) lp -= lf(counts.cell(x, y, z));
    }
    return lp;
}

namespace {

// All non-negative nx-by-ny integer matrices with the given margins.
void enumerate_stratum(const std::vector<long long>& row_sum,
                       const std::vector<long long>& col_sum, std::size_t max_tables,
                       std::vector<std::vector<long long>>& out) {
    const int nx = static_cast<int>(row_sum.size());
    const int ny = static_cast<int>(col_sum.size());
    std::vector<long long> cell(static_cast<std::size_t>(nx) * ny, 0);
    std::vector<long long> col_left = col_sum;

    // Fill row by row; within a row, entries left-to-right with the last
    // column forced. The last row is forced entirely.
    std::function<void(int)> fill_row = [&](int x) {
        if (x == nx - 1) {
            long long remaining = row_sum[x];
            for (int y = 0; y < ny; ++y) remaining -= col_left[y];
            if (remaining != 0) return;
            for (int y = 0; y < ny; ++y) cell[x + nx * y] = col_left[y];
            if (out.size() >= max_tables)
                throw std::runtime_error("enumeration too large");
            out.push_back(cell);
            return;
        }
        std::function<void(int, long long)> fill_entry = [&](int y, long long left) {
            if (y == ny - 1) {
                if (left > col_left[y]) return;
                cell[x + nx * y] = left;
                col_left[y] -= left;
                fill_row(x + 1);
                col_left[y] += left;
                return;
            }
            const long long cap = std::min(left, col_left[y]);
            for (long long v = 0; v <= cap; ++v) {
                cell[x + nx * y] = v;
                col_left[y] -= v;
                fill_entry(y + 1, left - v);
                col_left[y] += v;
            }
        };
        fill_entry(0, row_sum[x]);
    };
    fill_row(0);
}

} // namespace

std::vector<CellCounts> enumerate_tables(const TableLaw& law, std::size_t max_tables) {
    const LabelSpace& s = law.space();
    std::vector<std::vector<std::vector<long long>>> per_stratum(s.nz);
    std::size_t total = 1;
    for (int z = 0; z < s.nz; ++z) {
        std::vector<long long> row_sum(s.nx), col_sum(s.ny);
        for (int x = 0; x < s.nx; ++x) row_sum[x] = law.xz(x, z);
        for (int y = 0; y < s.ny; ++y) col_sum[y] = law.yz(y, z);
        enumerate_stratum(row_sum, col_sum, max_tables, per_stratum[z]);
        if (total > max_tables / per_stratum[z].size())
            throw std::runtime_error("enumeration too large");
        total *= per_stratum[z].size();
    }

    std::vector<CellCounts> out;
    out.reserve(total);
    std::vector<std::size_t> pick(s.nz, 0);
    for (;;) {
        std::vector<long long> cells(static_cast<std::size_t>(s.cells()));
        for (int z = 0; z < s.nz; ++z)
            for (int y = 0; y < s.ny; ++y)
                for (int x = 0; x < s.nx; ++x)
                    cells[flat_index_unchecked(s, x, y, z)] = per_stratum[z][pick[z]][x + s.nx * y];
        out.emplace_back(s, std::move(cells));
        int z = 0;
        while (z < s.nz && ++pick[z] == per_stratum[z].size()) pick[z++] = 0;
        if (z == s.nz) break;
    }
    return out;
}

Matrix resample_covariance(const Dataset& data, const ResamplePlan& plan,
                           const std::vector<double>& center, int draws, uint64_t seed,
                           bool parallel) {
    validate_dataset(data);
    validate_plan(plan, data.space);
    const int dim = data.space.cells();
    if (static_cast<int>(center.size()) != dim)
        throw std::invalid_argument("center does not match the label space");
    if (draws < 1)
        throw std::invalid_argument("resample_covariance needs draws >= 1");

    const Resampler resampler(data, plan);
    const double n = static_cast<double>(data.n());
    const double sqrt_n = std::sqrt(n);

    // Fixed chunking: each chunk covers 32 consecutive draws and owns a
    // partial sum; partials are folded in chunk order, so serial and parallel
    // runs agree bit for bit. Chunks are processed in blocks to bound memory.
    constexpr int kChunk = 32;
    constexpr std::size_t kBlock = 16;
    const std::size_t chunks = (static_cast<std::size_t>(draws) + kChunk - 1) / kChunk;

    Matrix acc(dim);
    std::vector<Matrix> partial(std::min(kBlock, chunks));
    for (std::size_t block_start = 0; block_start < chunks; block_start += kBlock) {
        const std::size_t block_len = std::min(kBlock, chunks - block_start);
        for_each_index(block_len, parallel ? ExecMode::parallel : ExecMode::serial,
                       [&](std::size_t slot) {
                           Matrix& part = partial[slot];
                           part = Matrix(dim);
                           std::vector<int32_t> scratch;
                           std::vector<long long> cells;
                           std::vector<double> v(dim);
                           const std::size_t chunk = block_start + slot;
                           const int lo = static_cast<int>(chunk) * kChunk;
                           const int hi = std::min(draws, lo + kChunk);
                           for (int b = lo; b < hi; ++b) {
                               resampler.resampled_cells(
                                   derive_seed(seed, {static_cast<uint64_t>(b)}), scratch, cells);
                               for (int i = 0; i < dim; ++i)
                                   v[i] = sqrt_n * (static_cast<double>(cells[i]) / n - center[i]);
                               for (int i = 0; i < dim; ++i) {
                                   const double vi = v[i];
                                   if (vi == 0.0) continue;
                                   for (int j = 0; j < dim; ++j) part(i, j) += vi * v[j];
                               }
                           }
                       });
        for (std::size_t slot = 0; slot < block_len; ++slot)
            for (std::size_t i = 0; i < acc.data().size(); ++i)
                acc.data()[i] += partial[slot].data()[i];
    }
    for (double& v : acc.data()) v /= static_cast<double>(draws);
    return acc;
}

} // namespace cmi
