#pragma once

// Field serialization.  CSV schemas: `x,gamma,re,im` for physical fields and
// `xi,j,re,im` for frequency data, rows in canonical grid order, values with
// 17 significant digits.  The binary format is little-endian float64 pairs
// behind an 8-byte shape header (uint32 rows = Ngamma, uint32 cols = Nx).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wormhardy/common.hpp"
#include "wormhardy/grid.hpp"
#include "wormhardy/szego.hpp"

namespace wormhardy {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline std::vector<double> parse_csv_row(const std::string& line, std::size_t expect) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) comma = line.size();
        out.push_back(std::strtod(line.c_str() + pos, nullptr));
        pos = comma + 1;
    }
    if (out.size() != expect) throw io_error("csv: expected " + std::to_string(expect) + " columns");
    return out;
}

inline bool close_coord(double a, double b) { return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a) + std::abs(b)); }

} // namespace detail

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline void write_field_csv(const std::string& path, const SampledField& f) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << "x,gamma,re,im\n";
    for (int m = 0; m < f.grid.nx; ++m)
        for (int n = 0; n < f.grid.ngamma(); ++n)
            out << fmt17(f.grid.x(m)) << ',' << fmt17(f.grid.gamma(n)) << ','
                << fmt17(f.at(m, n).real()) << ',' << fmt17(f.at(m, n).imag()) << '\n';
    if (!out) throw io_error("write failed: " + path);
}

inline SampledField read_field_csv(const std::string& path, const GridSpec& g) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,gamma", 0) != 0)
        throw io_error("bad csv header in " + path);
    SampledField f = make_field(g);
    for (int m = 0; m < g.nx; ++m)
        for (int n = 0; n < g.ngamma(); ++n) {
            if (!std::getline(in, line)) throw io_error("csv truncated: " + path);
            const auto row = detail::parse_csv_row(line, 4);
            if (!detail::close_coord(row[0], g.x(m)) || !detail::close_coord(row[1], g.gamma(n)))
                throw io_error("csv coordinates do not match the grid: " + path);
            f.at(m, n) = cplx(row[2], row[3]);
        }
    return f;
}

inline void write_frequency_csv(const std::string& path, const FrequencyField& F) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << "xi,j,re,im\n";
    for (int k = 0; k < F.grid.nx; ++k)
        for (int r = 0; r < F.grid.ngamma(); ++r) {
            const int j = F.grid.j_of_row(r);
            out << fmt17(F.grid.xi(k)) << ',' << j << ',' << fmt17(F.at(k, j).real()) << ','
                << fmt17(F.at(k, j).imag()) << '\n';
        }
    if (!out) throw io_error("write failed: " + path);
}

// Mode profiles {g_j} from `xi,j,re,im` rows; each stored j must cover the
// whole xi grid in ascending order.
inline ModeCoefficients read_modes_csv(const std::string& path, const Grid1D& g) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("xi,j", 0) != 0)
        throw io_error("bad csv header in " + path);
    ModeCoefficients mc;
    mc.grid = g;
    std::map<int, int> fill_count;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto row = detail::parse_csv_row(line, 4);
        const int j = int(std::lround(row[1]));
        auto& prof = mc.g[j];
        if (prof.empty()) prof.assign(std::size_t(g.nx), cplx(0, 0));
        int& k = fill_count[j];
        if (k >= g.nx) throw io_error("modes csv: too many rows for j = " + std::to_string(j));
        if (!detail::close_coord(row[0], g.xi(k)))
            throw io_error("modes csv: xi does not match the grid");
        prof[std::size_t(k)] = cplx(row[2], row[3]);
        ++k;
    }
    for (const auto& [j, n] : fill_count)
        if (n != g.nx) throw io_error("modes csv: incomplete profile for j = " + std::to_string(j));
    return mc;
}

inline void write_modes_csv(const std::string& path, const ModeCoefficients& mc) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << "xi,j,re,im\n";
    for (const auto& [j, prof] : mc.g)
        for (int k = 0; k < mc.grid.nx; ++k)
            out << fmt17(mc.grid.xi(k)) << ',' << j << ',' << fmt17(prof[std::size_t(k)].real())
                << ',' << fmt17(prof[std::size_t(k)].imag()) << '\n';
    if (!out) throw io_error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// Binary round-trip format
// ---------------------------------------------------------------------------

inline void write_field_bin(const std::string& path, const SampledField& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    const std::uint32_t rows = std::uint32_t(f.grid.ngamma());
    const std::uint32_t cols = std::uint32_t(f.grid.nx);
    out.write(reinterpret_cast<const char*>(&rows), 4);
    out.write(reinterpret_cast<const char*>(&cols), 4);
    out.write(reinterpret_cast<const char*>(f.values.data()),
              std::streamsize(f.values.size() * sizeof(cplx)));
    if (!out) throw io_error("write failed: " + path);
}

inline SampledField read_field_bin(const std::string& path, const GridSpec& g) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open: " + path);
    std::uint32_t rows = 0, cols = 0;
    in.read(reinterpret_cast<char*>(&rows), 4);
    in.read(reinterpret_cast<char*>(&cols), 4);
    if (!in || int(rows) != g.ngamma() || int(cols) != g.nx)
        throw io_error("binary field shape does not match the grid: " + path);
    SampledField f = make_field(g);
    in.read(reinterpret_cast<char*>(f.values.data()),
            std::streamsize(f.values.size() * sizeof(cplx)));
    if (!in) throw io_error("binary field truncated: " + path);
    return f;
}

} // namespace wormhardy
