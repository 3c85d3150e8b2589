// analysis.hpp: Tunneling gap, Euclidean action extraction, G(g), predicted bifurcated levels,
// well separation q0, E± from the heat kernel, and the resolvent distance to the free boson.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "rabi/errors.hpp"
#include "rabi/hamiltonians.hpp"
#include "rabi/operator_matrix.hpp"
#include "rabi/sectors.hpp"
#include "rabi/spectra.hpp"

namespace rabi {

// -hbar g^2 / omega_c
inline double self_energy(const ModelParams& p) { return -self_energy_shift(p); }

struct TunnelingGap {
    double e0{0.0};
    double e1{0.0};
    double gap{0.0};
    int n_boson{0};
};

inline TunnelingGap tunneling_gap(const ModelParams& p, const TruncationSpec& trunc = {}) {
    const auto spec = converged_spectrum(p, ModelKind::qr, 2, trunc);
    return {spec.levels[0], spec.levels[1], spec.levels[1] - spec.levels[0], spec.converged_dim};
}

// ----------------------------------------------------------- action ------

struct EuclideanAction {
    double value{0.0};     // +infinity when infinite
    bool infinite{false};  // gap <= 0: tunneling fully suppressed
    bool negative{false};  // gap > hbar omega_a: reported, not clamped

    static EuclideanAction infinite_action() {
        return {std::numeric_limits<double>::infinity(), true, false};
    }
};

// S = -hbar ln(gap / (hbar omega_a))
inline EuclideanAction euclidean_action_from_gap(double gap, const ModelParams& p) {
    if (!(p.omega_a > 0.0)) throw DomainError("euclidean_action_from_gap: omega_a must be > 0");
    if (!(gap > 0.0)) return EuclideanAction::infinite_action();
    const double s = -p.hbar * std::log(gap / (p.hbar * p.omega_a));
    return {s, false, s < 0.0};
}

// G = S omega_c^2 / (2 hbar g^2) - 1
inline double g_function(double s_euc, const ModelParams& p) {
    if (!(p.g > 0.0)) throw DomainError("g_function: G is undefined at g = 0");
    if (std::isinf(s_euc)) return std::numeric_limits<double>::infinity();
    return s_euc * p.omega_c * p.omega_c / (2.0 * p.hbar * p.g * p.g) - 1.0;
}

// (E0_ren, E1_ren) = hbar omega_c / 2 -/+ (hbar omega_a / 2) exp(-S / hbar)
inline std::pair<double, double> predicted_levels(double s_euc, const ModelParams& p) {
    const double mid = 0.5 * p.hbar * p.omega_c;
    const double split = 0.5 * p.hbar * p.omega_a * std::exp(-s_euc / p.hbar);
    return {mid - split, mid + split};
}

// Half-separation of the quartic wells V = c_dw (x^2 - q0^2)^2 whose instanton action is S:
// q0 = (3 S / (4 sqrt(2 c_dw)))^{1/3}
inline double minima_separation(double s_euc, double c_dw, const ModelParams& /*p*/) {
    if (!(c_dw > 0.0)) throw DomainError("minima_separation: c_dw must be > 0");
    if (!(s_euc >= 0.0)) throw DomainError("minima_separation: s_euc must be >= 0");
    return std::cbrt(3.0 * s_euc / (4.0 * std::sqrt(2.0 * c_dw)));
}

struct ActionReport {
    double e0{0.0};
    double e1{0.0};
    double gap{0.0};
    EuclideanAction action{};
    bool action_defined{true};  // false when omega_a = 0
    double g_of_g{std::numeric_limits<double>::quiet_NaN()};
    bool g_defined{false};
    bool g_bound_violated{false};  // G outside [-1, 0]
    double self_energy{0.0};
    std::optional<double> q0;
    std::optional<double> c_dw;
    // (E0_ren + E1_ren)/2 - hbar omega_c/2: diagnostic, not an invariant.
    double mean_deviation{std::numeric_limits<double>::quiet_NaN()};

    double s_euc() const {
        return action_defined ? action.value : std::numeric_limits<double>::quiet_NaN();
    }
};

// Action pipeline for one measured pair (e0, e1); renormalized says whether e0/e1 already include
// the +hbar g^2/omega_c shift.
inline ActionReport action_report(const ModelParams& p, double e0, double e1, bool renormalized,
                                  std::optional<double> c_dw = std::nullopt) {
    ActionReport r;
    r.e0 = e0;
    r.e1 = e1;
    r.gap = e1 - e0;
    r.self_energy = self_energy(p);
    r.c_dw = c_dw;
    if (p.omega_a > 0.0) {
        r.action = euclidean_action_from_gap(r.gap, p);
    } else {
        r.action_defined = false;
    }
    if (r.action_defined && p.g > 0.0) {
        r.g_of_g = g_function(r.action.value, p);
        r.g_defined = true;
        r.g_bound_violated = r.g_of_g < -1.0 || r.g_of_g > 0.0;
    }
    if (r.action_defined && c_dw && !r.action.infinite && r.action.value >= 0.0) {
        r.q0 = minima_separation(r.action.value, *c_dw, p);
    }
    const double shift = renormalized ? 0.0 : self_energy_shift(p);
    r.mean_deviation = 0.5 * (e0 + e1) + shift - 0.5 * p.hbar * p.omega_c;
    return r;
}

// ------------------------------------------------------- heat kernel ------

struct HeatKernelSpec {
    double beta{1.0};
    double beta_growth{2.0};
    double rel_tol{1e-10};
    int max_steps{200};

    void validate() const {
        if (!(beta > 0.0)) throw DomainError("HeatKernelSpec: beta must be > 0");
        if (!(beta_growth > 1.0)) throw DomainError("HeatKernelSpec: beta_growth must be > 1");
        if (!(rel_tol > 0.0)) throw DomainError("HeatKernelSpec: rel_tol must be > 0");
    }
};

struct HeatKernelResult {
    double e_plus{0.0};
    double e_minus{0.0};
    double beta_plus{0.0};
    double beta_minus{0.0};
    int n_boson{0};
};

namespace detail {

// -(1/beta) ln sum_j w_j exp(-beta E_j), evaluated relative to the lowest weighted level.
inline double heat_kernel_energy(const RVector& energies, const std::vector<double>& weights, double beta) {
    const double e_ref = energies(0);
    double acc = 0.0;
    for (Eigen::Index j = 0; j < energies.size(); ++j) {
        acc += weights[static_cast<std::size_t>(j)] * std::exp(-beta * (energies(j) - e_ref));
    }
    return e_ref - std::log(acc) / beta;
}

// Limit of -(1/beta) ln <omega| exp(-beta H_sector) |omega> as beta doubles.
inline std::pair<double, double> sector_heat_kernel(const Matrix& h_sector, const Vector& omega,
                                                    const HeatKernelSpec& hk) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h_sector + h_sector.adjoint()));
    if (es.info() != Eigen::Success) throw std::runtime_error("e_pm_heat_kernel: decomposition failed");
    const Vector amp = es.eigenvectors().adjoint() * omega;
    std::vector<double> w(static_cast<std::size_t>(amp.size()));
    for (Eigen::Index j = 0; j < amp.size(); ++j) w[static_cast<std::size_t>(j)] = std::norm(amp(j));
    if (w.front() < 1e-12) throw IllConditioned("e_pm_heat_kernel: reference state barely overlaps the sector ground state");

    double beta = hk.beta;
    double e = heat_kernel_energy(es.eigenvalues(), w, beta);
    for (int step = 0; step < hk.max_steps; ++step) {
        const double beta_next = beta * hk.beta_growth;
        const double e_next = heat_kernel_energy(es.eigenvalues(), w, beta_next);
        const double change = std::abs(e_next - e);
        beta = beta_next;
        e = e_next;
        if (change < hk.rel_tol * std::max(1.0, std::abs(e))) return {e, beta};
    }
    throw ConvergenceFailure("e_pm_heat_kernel: beta growth did not settle", 0, {});
}

} // namespace detail

// E± = -lim (1/beta) ln <Omega±| exp(-beta H~) |Omega±>, Omega± = (|up,0> ± |down,0>)/sqrt 2.
// The truncation is the one at which the two lowest levels of H~ have converged.
inline HeatKernelResult e_pm_heat_kernel(const ModelParams& p, const TruncationSpec& trunc = {},
                                         const HeatKernelSpec& hk = {}) {
    hk.validate();
    const auto spec = converged_spectrum(p, ModelKind::transformed, 2, trunc);
    const int n = spec.converged_dim;
    const Matrix h = ham::h_transformed(p, n, false).entries();
    const auto bases = sector_bases(ham::parity_transformed(n));

    HeatKernelResult out;
    out.n_boson = n;
    for (const auto& basis : bases) {
        const double sign = basis.sector == Sector::plus ? 1.0 : -1.0;
        Vector omega = Vector::Zero(2 * n);
        omega(0) = 1.0 / std::numbers::sqrt2;
        omega(n) = sign / std::numbers::sqrt2;
        const auto [e, beta] = detail::sector_heat_kernel(basis.compress(h), basis.project(omega), hk);
        if (basis.sector == Sector::plus) {
            out.e_plus = e;
            out.beta_plus = beta;
        } else {
            out.e_minus = e;
            out.beta_minus = beta;
        }
    }
    return out;
}

// --------------------------------------------------------- resolvent ------

namespace detail {

inline Matrix hermitian_resolvent(const Matrix& h, cplx z) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
    if (es.info() != Eigen::Success) throw std::runtime_error("resolvent: decomposition failed");
    Vector d(es.eigenvalues().size());
    for (Eigen::Index j = 0; j < d.size(); ++j) d(j) = 1.0 / (es.eigenvalues()(j) - z);
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

inline double spectral_norm(const Matrix& m) {
    if (max_abs(m) == 0.0) return 0.0;
    const Matrix gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gram + gram.adjoint()), Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

// ||(H~_ren - z)^-1 - (H_b - z)^-1|| at one truncation; both commute with P~, so sectors decouple.
inline double resolvent_distance_at(const ModelParams& p, cplx z, int n) {
    const Matrix ht = ham::h_transformed(p, n, true).entries();
    const Matrix hb = ham::h_free_boson(p, n).entries();
    double dist = 0.0;
    for (const auto& basis : sector_bases(ham::parity_transformed(n))) {
        const Matrix diff = hermitian_resolvent(basis.compress(ht), z) - hermitian_resolvent(basis.compress(hb), z);
        dist = std::max(dist, spectral_norm(diff));
    }
    return dist;
}

} // namespace detail

struct ResolventDistance {
    double distance{0.0};
    int n_boson{0};
};

inline ResolventDistance resolvent_distance(const ModelParams& p, cplx z, const TruncationSpec& trunc = {}) {
    if (z.imag() == 0.0) throw DomainError("resolvent_distance: z must have a nonzero imaginary part");
    trunc.validate();
    p.validate();
    int n = trunc.initial_dim;
    double prev = detail::resolvent_distance_at(p, z, n);
    while (true) {
        const int next = std::min(trunc.next_dim(n), trunc.max_dim);
        if (next == n) {
            throw ConvergenceFailure("resolvent_distance: no convergence within max_dim", n, {});
        }
        const double cur = detail::resolvent_distance_at(p, z, next);
        if (std::abs(cur - prev) < trunc.level_tol) return {prev, n};
        prev = cur;
        n = next;
    }
}

} // namespace rabi
