// io.hpp: Deterministic number formatting, CSV emitters, LMT2 schedule reader, key=value config files.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "rabi/errors.hpp"
#include "rabi/sectors.hpp"
#include "rabi/sweep.hpp"

namespace rabi::io {

inline constexpr std::string_view kLevelsHeader = "sweep_param,level_index,energy,parity_sector,converged_dim,residual";
inline constexpr std::string_view kActionsHeader = "sweep_param,e0,e1,gap,s_euc,g_of_g,self_energy,q0";

// 12 significant digits, '.' separator, no locale dependence; inf/nan as literal tokens.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";  // folds -0
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 12);
    if (res.ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
    return {buf.data(), res.ptr};
}

inline double parse_number(std::string_view text, std::string_view what) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw DomainError("cannot parse " + std::string(what) + " value '" + s + "' as a number");
    }
    return v;
}

inline void append_level_rows(std::string& out, double sweep_param, const SpectrumResult& spec) {
    for (std::size_t i = 0; i < spec.levels.size(); ++i) {
        out += format_number(sweep_param);
        out += ',';
        out += std::to_string(i);
        out += ',';
        out += format_number(spec.levels[i]);
        out += ',';
        out += to_string(spec.parity_sector[i]);
        out += ',';
        out += std::to_string(spec.converged_dim);
        out += ',';
        out += format_number(i < spec.residual.size() ? spec.residual[i] : 0.0);
        out += '\n';
    }
}

inline void append_action_row(std::string& out, double sweep_param, const ActionReport& r) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out += format_number(sweep_param) + ',' + format_number(r.e0) + ',' + format_number(r.e1) + ',' +
           format_number(r.gap) + ',' + format_number(r.s_euc()) + ',' + format_number(r.g_defined ? r.g_of_g : nan) +
           ',' + format_number(r.self_energy) + ',' + format_number(r.q0 ? *r.q0 : nan) + '\n';
}

inline std::string levels_csv(const std::vector<SweepRecord>& records) {
    std::string out(kLevelsHeader);
    out += '\n';
    for (const auto& rec : records) {
        if (rec.ok) append_level_rows(out, rec.point.param, rec.spectrum);
    }
    return out;
}

inline std::string actions_csv(const std::vector<SweepRecord>& records) {
    std::string out(kActionsHeader);
    out += '\n';
    for (const auto& rec : records) {
        if (rec.ok && rec.spectrum.levels.size() >= 2) append_action_row(out, rec.point.param, rec.action);
    }
    return out;
}

// Binary write so line endings stay '\n' on every platform.
inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

inline std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

// LMT2 schedule file: header "r,omega_a,g", one point per line, '#' comments allowed.
inline std::vector<SchedulePoint> read_lmt2_schedule(std::istream& in) {
    std::vector<SchedulePoint> pts;
    std::string line;
    bool header_seen = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto cells = split_csv_line(t);
        for (auto& c : cells) c = trim(c);
        if (!header_seen) {
            if (cells != std::vector<std::string>{"r", "omega_a", "g"}) {
                throw DomainError("schedule: header must be 'r,omega_a,g'");
            }
            header_seen = true;
            continue;
        }
        if (cells.size() != 3) throw DomainError("schedule line " + std::to_string(lineno) + ": expected 3 columns");
        pts.push_back({parse_number(cells[0], "r"), parse_number(cells[1], "omega_a"), parse_number(cells[2], "g")});
    }
    if (!header_seen) throw DomainError("schedule: missing header 'r,omega_a,g'");
    return pts;
}

inline std::string lmt2_schedule_csv(const std::vector<SchedulePoint>& pts) {
    std::string out = "r,omega_a,g\n";
    for (const auto& p : pts) out += format_number(p.param) + ',' + format_number(p.omega_a) + ',' + format_number(p.g) + '\n';
    return out;
}

// key = value lines; '#' starts a comment; later duplicates override earlier ones.
inline std::map<std::string, std::string> read_config(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw DomainError("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw DomainError("config line " + std::to_string(lineno) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

// 64-bit FNV-1a, used for deterministic run identifiers.
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace rabi::io
