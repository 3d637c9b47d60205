#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cmi {

// Categorical ranges of (X, Y, Z). Z is a single flattened categorical
// variable; a multi-coordinate conditioning vector (z_1, ..., z_s) is encoded
// little-endian (z_1 + 2*z_2 + ... + 2^{s-1}*z_s) before reaching this layer.
struct LabelSpace {
    int nx = 0;
    int ny = 0;
    int nz = 0;

    LabelSpace() = default;
    LabelSpace(int nx_, int ny_, int nz_); // throws unless nx,ny >= 2 and nz >= 1

    int cells() const { return nx * ny * nz; }
    bool operator==(const LabelSpace&) const = default;
};

// Cell layout: x varies fastest, then y, then z.
inline int flat_index_unchecked(const LabelSpace& s, int x, int y, int z) {
    return x + s.nx * (y + s.ny * z);
}

int flat_index(const LabelSpace& s, int x, int y, int z); // bounds-checked
void unflat_index(const LabelSpace& s, int flat, int& x, int& y, int& z);

// Which resampling scheme generated (or should generate) surrogate data:
// cp permutes X within each Z-stratum, cr redraws X from a known q(x|z).
enum class Scheme { cp, cr };

const char* scheme_name(Scheme s);

// Immutable joint pmf with cached margins. Construction validates that all
// cells are non-negative and that the total mass is 1 within 1e-12.
class JointPmf {
public:
    JointPmf(LabelSpace space, std::vector<double> cells);

    const LabelSpace& space() const { return space_; }
    const std::vector<double>& cells() const { return cells_; }

    double cell(int x, int y, int z) const {
        return cells_[flat_index_unchecked(space_, x, y, z)];
    }
    double xz(int x, int z) const { return xz_[x + space_.nx * z]; }
    double yz(int y, int z) const { return yz_[y + space_.ny * z]; }
    double z(int z) const { return z_[z]; }

private:
    LabelSpace space_;
    std::vector<double> cells_;
    std::vector<double> xz_, yz_, z_;
};

// Column-format sample; row i is (x[i], y[i], z[i]).
struct Dataset {
    LabelSpace space;
    std::vector<int32_t> x, y, z;

    std::size_t n() const { return x.size(); }
};

// Throws if the columns have unequal lengths, the sample is empty, or any
// label falls outside the declared space.
void validate_dataset(const Dataset& data);

// Cell counts plus margins; the plug-in statistics are computed from these.
class CellCounts {
public:
    CellCounts(LabelSpace space, std::vector<long long> cells);

    const LabelSpace& space() const { return space_; }
    const std::vector<long long>& cells() const { return cells_; }
    long long n() const { return n_; }

    long long cell(int x, int y, int z) const {
        return cells_[flat_index_unchecked(space_, x, y, z)];
    }
    long long xz(int x, int z) const { return xz_[x + space_.nx * z]; }
    long long yz(int y, int z) const { return yz_[y + space_.ny * z]; }
    long long z(int z) const { return z_[z]; }

private:
    LabelSpace space_;
    std::vector<long long> cells_;
    std::vector<long long> xz_, yz_, z_;
    long long n_ = 0;
};

CellCounts count(const Dataset& data);

// Vector of fractions n(x,y,z)/n. Throws on an empty sample.
JointPmf empirical_pmf(const CellCounts& counts);

// CSV with header "x,y,z", one row per observation.
std::string dataset_to_csv(const Dataset& data);

// Reads the format written by dataset_to_csv. When `declared` is null the
// label space is inferred as max+1 per coordinate (at least 2 for x and y).
Dataset dataset_from_csv(std::istream& in, const LabelSpace* declared = nullptr);

} // namespace cmi
