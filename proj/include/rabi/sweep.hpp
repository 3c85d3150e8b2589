// sweep.hpp: LMT1 / LMT2 parameter schedules and the sweep driver.
//
// LMT1 varies g at fixed omega_a, omega_c. LMT2 varies r in [0, 1] with omega_a(r) -> 0 and g(0) = 0.
// Points are independent; they may run on several workers and are always returned in schedule order.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rabi/analysis.hpp"
#include "rabi/errors.hpp"
#include "rabi/hamiltonians.hpp"
#include "rabi/spectra.hpp"

namespace rabi {

enum class SweepMode { lmt1, lmt2 };

struct SchedulePoint {
    double param{0.0};  // g for LMT1, r for LMT2
    double omega_a{0.0};
    double g{0.0};
};

struct SweepSchedule {
    SweepMode mode{SweepMode::lmt1};
    std::vector<SchedulePoint> points;
    double omega_c{1.0};
    double hbar{1.0};
    double a2_coeff{0.0};

    ModelParams params_at(std::size_t i) const {
        const auto& pt = points.at(i);
        return {pt.omega_a, omega_c, pt.g, hbar, a2_coeff};
    }
};

// Uniform grid g_start .. g_end with `steps` points (steps >= 2, or 1 for a single g_start).
inline SweepSchedule lmt1_schedule(double omega_a, double omega_c, double g_start, double g_end, int steps,
                                   double hbar = 1.0, double a2_coeff = 0.0) {
    if (steps < 1) throw DomainError("lmt1_schedule: steps must be >= 1");
    SweepSchedule s;
    s.mode = SweepMode::lmt1;
    s.omega_c = omega_c;
    s.hbar = hbar;
    s.a2_coeff = a2_coeff;
    for (int i = 0; i < steps; ++i) {
        const double g = steps == 1 ? g_start : g_start + (g_end - g_start) * i / (steps - 1);
        s.points.push_back({g, omega_a, g});
    }
    return s;
}

// omega_a(r) = omega_a0 (1 - r), g(r) = g_max r on `steps` uniform points of [0, 1].
inline SweepSchedule lmt2_default_schedule(double omega_a0, double omega_c, double g_max, int steps = 61,
                                           double hbar = 1.0, double a2_coeff = 0.0) {
    if (steps < 2) throw DomainError("lmt2_default_schedule: steps must be >= 2");
    SweepSchedule s;
    s.mode = SweepMode::lmt2;
    s.omega_c = omega_c;
    s.hbar = hbar;
    s.a2_coeff = a2_coeff;
    for (int i = 0; i < steps; ++i) {
        const double r = static_cast<double>(i) / (steps - 1);
        s.points.push_back({r, i == steps - 1 ? 0.0 : omega_a0 * (1.0 - r), g_max * r});
    }
    return s;
}

// Empty string when valid, otherwise the first violated constraint.
inline std::string lmt2_violation(const std::vector<SchedulePoint>& points) {
    std::ostringstream msg;
    if (points.empty()) return "schedule has no points";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        msg.str("");
        msg << "point " << i << " (r=" << pt.param << "): ";
        if (!(pt.param >= 0.0 && pt.param <= 1.0)) return msg.str() + "r must lie in [0, 1]";
        if (i > 0 && !(pt.param > points[i - 1].param)) return msg.str() + "r must be strictly increasing";
        if (pt.param < 1.0 && !(pt.omega_a > 0.0)) return msg.str() + "omega_a(r) must be > 0 for r < 1";
        if (pt.param == 1.0 && pt.omega_a != 0.0) return msg.str() + "omega_a(1) must be 0";
        if (pt.param == 0.0 && pt.g != 0.0) return msg.str() + "g(0) must be 0";
        if (pt.param > 0.0 && !(pt.g > 0.0)) return msg.str() + "g(r) must be > 0 for r > 0";
    }
    return {};
}

inline void validate(const SweepSchedule& s) {
    if (!(s.omega_c > 0.0) || !(s.hbar > 0.0)) throw DomainError("sweep: omega_c and hbar must be > 0");
    if (s.mode == SweepMode::lmt2) {
        if (auto v = lmt2_violation(s.points); !v.empty()) throw DomainError("LMT2 schedule: " + v);
    } else if (s.points.empty()) {
        throw DomainError("LMT1 schedule: no points");
    }
}

struct SweepOptions {
    int jobs{1};
    std::optional<double> c_dw;
};

struct SweepRecord {
    std::size_t index{0};
    SchedulePoint point;
    bool ok{false};
    std::string error;
    SpectrumResult spectrum;
    ActionReport action;
};

inline SweepRecord evaluate_point(const SweepSchedule& s, std::size_t i, ModelKind kind, int k,
                                  const TruncationSpec& trunc, const SweepOptions& opts) {
    SweepRecord rec;
    rec.index = i;
    rec.point = s.points[i];
    try {
        const ModelParams p = s.params_at(i);
        rec.spectrum = converged_spectrum(p, kind, k, trunc);
        if (rec.spectrum.levels.size() >= 2) {
            rec.action = action_report(p, rec.spectrum.levels[0], rec.spectrum.levels[1], is_renormalized(kind), opts.c_dw);
        }
        rec.ok = true;
    } catch (const std::exception& e) {
        rec.ok = false;
        rec.error = e.what();
    }
    return rec;
}

// Failed points are flagged, not fatal. Output order is schedule order for any job count.
inline std::vector<SweepRecord> run_sweep(const SweepSchedule& s, ModelKind kind, int k, const TruncationSpec& trunc,
                                          const SweepOptions& opts = {}) {
    validate(s);
    trunc.validate();
    if (k < 2) throw DomainError("run_sweep: k must be >= 2 for the action pipeline");
    std::vector<SweepRecord> out(s.points.size());
    const auto workers = static_cast<std::size_t>(std::clamp<long>(opts.jobs, 1, static_cast<long>(s.points.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < s.points.size(); ++i) out[i] = evaluate_point(s, i, kind, k, trunc, opts);
        return out;
    }
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < out.size(); i = next++) {
                    out[i] = evaluate_point(s, i, kind, k, trunc, opts);
                }
            });
        }
    }
    return out;
}

} // namespace rabi
