#include "cmi/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace cmi {

LabelSpace::LabelSpace(int nx_, int ny_, int nz_) : nx(nx_), ny(ny_), nz(nz_) {
    if (nx < 2 || ny < 2)
        throw std::invalid_argument("label space needs at least two x and two y labels");
    if (nz < 1)
        throw std::invalid_argument("label space needs at least one stratum");
}

int flat_index(const LabelSpace& s, int x, int y, int z) {
    if (x < 0 || x >= s.nx || y < 0 || y >= s.ny || z < 0 || z >= s.nz)
        throw std::out_of_range("cell index outside label space");
    return flat_index_unchecked(s, x, y, z);
}

void unflat_index(const LabelSpace& s, int flat, int& x, int& y, int& z) {
    if (flat < 0 || flat >= s.cells())
        throw std::out_of_range("flat index outside label space");
    x = flat % s.nx;
    y = (flat / s.nx) % s.ny;
    z = flat / (s.nx * s.ny);
}

const char* scheme_name(Scheme s) {
    return s == Scheme::cp ? "cp" : "cr";
}

JointPmf::JointPmf(LabelSpace space, std::vector<double> cells)
    : space_(space), cells_(std::move(cells)) {
    if (static_cast<int>(cells_.size()) != space_.cells())
        throw std::invalid_argument("pmf cell vector does not match label space");
    double total = 0.0;
    for (double v : cells_) {
        if (!(v >= 0.0))
            throw std::invalid_argument("pmf cells must be non-negative");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("pmf cells must sum to 1");

    xz_.assign(static_cast<std::size_t>(space_.nx) * space_.nz, 0.0);
    yz_.assign(static_cast<std::size_t>(space_.ny) * space_.nz, 0.0);
    z_.assign(space_.nz, 0.0);
    for (int z = 0; z < space_.nz; ++z)
        for (int y = 0; y < space_.ny; ++y)
            for (int x = 0; x < space_.nx; ++x) {
                const double v = cells_[flat_index_unchecked(space_, x, y, z)];
                xz_[x + space_.nx * z] += v;
                yz_[y + space_.ny * z] += v;
                z_[z] += v;
            }
}

void validate_dataset(const Dataset& data) {
    if (data.x.size() != data.y.size() || data.x.size() != data.z.size())
        throw std::invalid_argument("dataset columns have unequal lengths");
    if (data.x.empty())
        throw std::invalid_argument("empty sample");
    for (std::size_t i = 0; i < data.x.size(); ++i) {
        if (data.x[i] < 0 || data.x[i] >= data.space.nx || data.y[i] < 0 ||
            data.y[i] >= data.space.ny || data.z[i] < 0 || data.z[i] >= data.space.nz)
            throw std::invalid_argument("dataset row outside declared label space");
    }
}

CellCounts::CellCounts(LabelSpace space, std::vector<long long> cells)
    : space_(space), cells_(std::move(cells)) {
    if (static_cast<int>(cells_.size()) != space_.cells())
        throw std::invalid_argument("count vector does not match label space");
    xz_.assign(static_cast<std::size_t>(space_.nx) * space_.nz, 0);
    yz_.assign(static_cast<std::size_t>(space_.ny) * space_.nz, 0);
    z_.assign(space_.nz, 0);
    for (int z = 0; z < space_.nz; ++z)
        for (int y = 0; y < space_.ny; ++y)
            for (int x = 0; x < space_.nx; ++x) {
                const long long v = cells_[flat_index_unchecked(space_, x, y, z)];
                if (v < 0)
                    throw std::invalid_argument("cell counts must be non-negative");
                xz_[x + space_.nx * z] += v;
                yz_[y + space_.ny * z] += v;
                z_[z] += v;
                n_ += v;
            }
}

CellCounts count(const Dataset& data) {
    validate_dataset(data);
    std::vector<long long> cells(data.space.cells(), 0);
    for (std::size_t i = 0; i < data.x.size(); ++i)
        ++cells[flat_index_unchecked(data.space, data.x[i], data.y[i], data.z[i])];
    return CellCounts(data.space, std::move(cells));
}

JointPmf empirical_pmf(const CellCounts& counts) {
    if (counts.n() == 0)
        throw std::invalid_argument("empty sample");
    std::vector<double> cells(counts.cells().size());
    const double n = static_cast<double>(counts.n());
    for (std::size_t i = 0; i < cells.size(); ++i)
        cells[i] = static_cast<double>(counts.cells()[i]) / n;
    return JointPmf(counts.space(), std::move(cells));
}

std::string dataset_to_csv(const Dataset& data) {
    validate_dataset(data);
    std::string out = "x,y,z\n";
    for (std::size_t i = 0; i < data.x.size(); ++i) {
        out += std::to_string(data.x[i]);
        out += ',';
        out += std::to_string(data.y[i]);
        out += ',';
        out += std::to_string(data.z[i]);
        out += '\n';
    }
    return out;
}

namespace {

int parse_label(const std::string& field, std::size_t line_no) {
    std::size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(field, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("dataset csv line " + std::to_string(line_no) +
                                    ": expected an integer, got '" + field + "'");
    }
    while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos])))
        ++pos;
    if (pos != field.size() || value < 0)
        throw std::invalid_argument("dataset csv line " + std::to_string(line_no) +
                                    ": expected a non-negative integer, got '" + field + "'");
    return value;
}

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

} // namespace

Dataset dataset_from_csv(std::istream& in, const LabelSpace* declared) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("dataset csv: missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        std::string header = strip(line);
        header.erase(std::remove_if(header.begin(), header.end(),
                                    [](unsigned char c) { return std::isspace(c); }),
                     header.end());
        if (header != "x,y,z")
            throw std::invalid_argument("dataset csv: header must be 'x,y,z'");
    }

    std::vector<int32_t> xs, ys, zs;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (strip(line).empty()) continue;
        std::stringstream row(line);
        std::string field;
        int vals[3];
        for (int c = 0; c < 3; ++c) {
            if (!std::getline(row, field, ','))
                throw std::invalid_argument("dataset csv line " + std::to_string(line_no) +
                                            ": expected three fields");
            vals[c] = parse_label(strip(field), line_no);
        }
        if (std::getline(row, field, ','))
            throw std::invalid_argument("dataset csv line " + std::to_string(line_no) +
                                        ": expected three fields");
        xs.push_back(vals[0]);
        ys.push_back(vals[1]);
        zs.push_back(vals[2]);
    }
    if (xs.empty())
        throw std::invalid_argument("empty sample");

    LabelSpace space;
    if (declared) {
        space = *declared;
    } else {
        int mx = 0, my = 0, mz = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx = std::max(mx, static_cast<int>(xs[i]));
            my = std::max(my, static_cast<int>(ys[i]));
            mz = std::max(mz, static_cast<int>(zs[i]));
        }
        space = LabelSpace(std::max(2, mx + 1), std::max(2, my + 1), mz + 1);
    }
    Dataset data{space, std::move(xs), std::move(ys), std::move(zs)};
    validate_dataset(data);
    return data;
}

} // namespace cmi
