#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "morphology.hpp"
#include "point.hpp"

namespace sponge {

// Locale-independent float formatting via std::to_chars. The shortest
// round-trip form is used for files that must survive a bit-exact
// write/read cycle; a fixed 12-significant-digit form is the CLI contract.

inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string format_double_sig12(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

inline std::string format_point_sig12(const Point& p) {
    std::string out;
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i) out += ' ';
        out += format_double_sig12(p[i]);
    }
    return out;
}

inline double parse_double(const std::string& tok, const std::string& what) {
    double v = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw std::invalid_argument("cannot parse " + what + ": '" + tok + "'");
    return v;
}

/// CSV point sets: one point per row, comma or whitespace separated floats,
/// no header; the dimension is inferred from the first row.
inline PointSet read_points_csv(std::istream& in) {
    PointSet ps;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        for (char& c : line)
            if (c == ',' || c == ';' || c == '\t' || c == '\r') c = ' ';
        std::istringstream row(line);
        std::string tok;
        Point p;
        while (row >> tok)
            p.coords.push_back(parse_double(tok, "point coordinate (line " +
                                                     std::to_string(lineno) + ")"));
        if (p.dim() == 0) continue;  // blank line
        if (!ps.empty() && p.dim() != ps.front().dim())
            throw std::invalid_argument("row " + std::to_string(lineno) +
                                        " has a different number of columns");
        ps.push_back(std::move(p));
    }
    if (ps.empty()) throw std::invalid_argument("no points in input");
    return ps;
}

inline PointSet read_points_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return read_points_csv(in);
}

inline void write_points_csv(std::ostream& out, const PointSet& ps) {
    for (const Point& p : ps) {
        for (std::size_t i = 0; i < p.dim(); ++i) {
            if (i) out << ',';
            out << format_double(p[i]);
        }
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// Field files:
//   FIELD v1
//   <width> <height> <channels>
//   one line of <channels> floats per sample, row-major.
// Shortest round-trip float formatting keeps write/read bit-exact.
// ---------------------------------------------------------------------------

inline void write_field(std::ostream& out, const Field& f) {
    f.validate();
    out << "FIELD v1\n" << f.width << ' ' << f.height << ' ' << f.channels << '\n';
    for (const Point& p : f.data) {
        for (int c = 0; c < f.channels; ++c) {
            if (c) out << ' ';
            out << format_double(p[static_cast<std::size_t>(c)]);
        }
        out << '\n';
    }
}

inline void write_field_file(const std::string& path, const Field& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
    write_field(out, f);
}

inline Field read_field(std::istream& in) {
    std::string magic, version;
    if (!(in >> magic >> version) || magic != "FIELD" || version != "v1")
        throw std::invalid_argument("not a FIELD v1 file");
    Field f;
    if (!(in >> f.width >> f.height >> f.channels))
        throw std::invalid_argument("bad field header");
    if (f.width <= 0 || f.height <= 0 || f.channels <= 0)
        throw std::invalid_argument("bad field dimensions");
    const std::size_t n = static_cast<std::size_t>(f.width) * f.height;
    f.data.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Point p(static_cast<std::size_t>(f.channels));
        for (int c = 0; c < f.channels; ++c) {
            std::string tok;
            if (!(in >> tok)) throw std::invalid_argument("truncated field data");
            p[static_cast<std::size_t>(c)] = parse_double(tok, "field sample");
        }
        f.data.push_back(std::move(p));
    }
    f.validate();
    return f;
}

inline Field read_field_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return read_field(in);
}

}  // namespace sponge
