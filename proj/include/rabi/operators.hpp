// operators.hpp: Ladder, quadrature, parity and displacement operators on a truncated Fock space,
// Pauli matrices, and the qubit ⊗ boson tensor product.
//
// Qubit basis ordering: index 0 = |up>, index 1 = |down>. Composite index = qubit * n_boson + m.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "rabi/errors.hpp"
#include "rabi/operator_matrix.hpp"

namespace rabi::ops {

inline void require_dim(int n_boson, int min_dim, const char* who) {
    if (n_boson < min_dim) {
        throw DimensionError(std::string(who) + ": n_boson must be >= " + std::to_string(min_dim));
    }
}

// ----------------------------------------------------------------- qubit ------

inline OperatorMatrix identity2() { return OperatorMatrix::identity(2); }

inline OperatorMatrix sigma_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return {m, Structure::hermitian | Structure::unitary};
}

inline OperatorMatrix sigma_y() {
    Matrix m(2, 2);
    m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
    return {m, Structure::hermitian | Structure::unitary};
}

inline OperatorMatrix sigma_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return {m, Structure::hermitian | Structure::unitary | Structure::diagonal};
}

// sigma_+ = |up><down|, sigma_- = |down><up|
inline OperatorMatrix sigma_plus() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return {m, Structure::general};
}

inline OperatorMatrix sigma_minus() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return {m, Structure::general};
}

// Fermion-number grading N_F = -sigma_z.
inline OperatorMatrix fermion_number() {
    return {-sigma_z().entries(), Structure::hermitian | Structure::unitary | Structure::diagonal};
}

// ----------------------------------------------------------------- boson ------

struct Ladder {
    OperatorMatrix annihilation;
    OperatorMatrix creation;
};

inline Ladder make_ladder(int n_boson) {
    require_dim(n_boson, 2, "make_ladder");
    Matrix a = Matrix::Zero(n_boson, n_boson);
    for (int m = 0; m + 1 < n_boson; ++m) a(m, m + 1) = std::sqrt(static_cast<double>(m + 1));
    Matrix ad = a.adjoint();
    return {{std::move(a), Structure::general}, {std::move(ad), Structure::general}};
}

inline OperatorMatrix number_operator(int n_boson) {
    require_dim(n_boson, 1, "number_operator");
    Matrix n = Matrix::Zero(n_boson, n_boson);
    for (int m = 0; m < n_boson; ++m) n(m, m) = static_cast<double>(m);
    return {n, Structure::hermitian | Structure::diagonal};
}

struct Quadratures {
    OperatorMatrix position;
    OperatorMatrix momentum;
};

// x = sqrt(hbar / 2 omega_c) (a + a^dag),  p = -i sqrt(hbar omega_c / 2) (a - a^dag)
inline Quadratures make_quadratures(int n_boson, const ModelParams& params) {
    const auto [a, ad] = make_ladder(n_boson);
    const double xs = std::sqrt(params.hbar / (2.0 * params.omega_c));
    const double ps = std::sqrt(params.hbar * params.omega_c / 2.0);
    Matrix x = xs * (a.entries() + ad.entries());
    Matrix p = cplx(0.0, -ps) * (a.entries() - ad.entries());
    return {{std::move(x), Structure::hermitian}, {std::move(p), Structure::hermitian}};
}

// (-1)^{a^dag a}
inline OperatorMatrix number_parity(int n_boson) {
    require_dim(n_boson, 1, "number_parity");
    Matrix p = Matrix::Zero(n_boson, n_boson);
    for (int m = 0; m < n_boson; ++m) p(m, m) = (m % 2 == 0) ? 1.0 : -1.0;
    return {p, Structure::hermitian | Structure::unitary | Structure::diagonal};
}

// exp(-i theta a^dag a), exactly diagonal.
inline OperatorMatrix number_phase(int n_boson, double theta) {
    require_dim(n_boson, 1, "number_phase");
    Matrix u = Matrix::Zero(n_boson, n_boson);
    for (int m = 0; m < n_boson; ++m) u(m, m) = std::polar(1.0, -theta * m);
    return {u, Structure::unitary | Structure::diagonal};
}

// ---------------------------------------------------------- displacement ------

enum class DisplacementMethod { exponentiate, laguerre };

namespace detail {

// Truncated exp(alpha a^dag - alpha^* a) via the eigendecomposition of the hermitian matrix i*G.
inline Matrix displacement_exponentiate(cplx alpha, int n) {
    const auto [a, ad] = make_ladder(n);
    const Matrix generator = alpha * ad.entries() - std::conj(alpha) * a.entries();
    const Matrix herm = cplx(0.0, 1.0) * generator;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (herm + herm.adjoint()));
    if (es.info() != Eigen::Success) throw std::runtime_error("displacement: eigendecomposition failed");
    // exp(G) = exp(-i * (iG)) = V exp(-i lambda) V^dag
    Vector phases(n);
    for (int j = 0; j < n; ++j) phases(j) = std::polar(1.0, -es.eigenvalues()(j));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Closed-form entries
//   <m|D|n> = sqrt(n!/m!) alpha^{m-n} e^{-|alpha|^2/2} L_n^{(m-n)}(|alpha|^2),    m >= n
//   <m|D|n> = sqrt(m!/n!) (-alpha^*)^{n-m} e^{-|alpha|^2/2} L_m^{(n-m)}(|alpha|^2), m <  n
// The Laguerre values come from the upward three-term recurrence, carried in scaled form so the
// prefactor and polynomial are combined in log space.
inline Matrix displacement_laguerre(cplx alpha, int n) {
    const double mag = std::abs(alpha);
    if (mag == 0.0) return Matrix::Identity(n, n);
    const double x = mag * mag;
    const double log_mag = std::log(mag);

    // Unit phases of alpha^k and (-alpha^*)^k by repeated multiplication, so that purely real or
    // imaginary alpha yields exact quarter-turn phases.
    std::vector<cplx> phase(static_cast<std::size_t>(n), 1.0);
    std::vector<cplx> phase_conj(static_cast<std::size_t>(n), 1.0);
    const cplx unit = alpha / mag;
    const cplx unit_conj = -std::conj(alpha) / mag;
    for (std::size_t k = 1; k < phase.size(); ++k) {
        phase[k] = phase[k - 1] * unit;
        phase_conj[k] = phase_conj[k - 1] * unit_conj;
    }

    std::vector<double> lgam(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) lgam[static_cast<std::size_t>(j)] = std::lgamma(static_cast<double>(j) + 1.0);

    constexpr double big = 1e150;
    Matrix d(n, n);
    for (int k = 0; k < n; ++k) {
        // L_p^{(k)}(x) for p = 0 .. n-1-k, tracked as value * exp(log_scale)
        double prev = 0.0;
        double cur = 1.0;
        double log_scale = 0.0;
        for (int p = 0; p + k < n; ++p) {
            if (p > 0) {
                const double next = ((2.0 * (p - 1) + 1.0 + k - x) * cur - (p - 1 + k) * prev) / p;
                prev = cur;
                cur = next;
                const double amp = std::max(std::abs(cur), std::abs(prev));
                if (amp > big) {
                    cur /= big;
                    prev /= big;
                    log_scale += std::log(big);
                }
            }
            double value = 0.0;
            if (cur != 0.0) {
                const double log_abs = 0.5 * (lgam[static_cast<std::size_t>(p)] - lgam[static_cast<std::size_t>(p + k)])
                                     + k * log_mag - 0.5 * x + std::log(std::abs(cur)) + log_scale;
                value = std::copysign(std::exp(log_abs), cur);
            }
            // lower triangle (row p+k, col p) and upper triangle (row p, col p+k)
            d(p + k, p) = value * phase[static_cast<std::size_t>(k)];
            if (k > 0) d(p, p + k) = value * phase_conj[static_cast<std::size_t>(k)];
        }
    }
    return d;
}

} // namespace detail

// exp(alpha a^dag - alpha^* a) on the first n_boson Fock states.
//   exponentiate: exact unitary on the truncated space, flagged unitary.
//   laguerre:     exact infinite-space matrix elements, unitary only up to truncation.
inline OperatorMatrix displacement(cplx alpha, int n_boson, DisplacementMethod method) {
    require_dim(n_boson, 2, "displacement");
    if (method == DisplacementMethod::exponentiate) {
        return {detail::displacement_exponentiate(alpha, n_boson), Structure::unitary};
    }
    return {detail::displacement_laguerre(alpha, n_boson), Structure::general};
}

// ---------------------------------------------------------------- tensor ------

// Block layout [[q00*b, q01*b], [q10*b, q11*b]].
inline OperatorMatrix tensor(const OperatorMatrix& q, const OperatorMatrix& b) {
    if (q.dim() != 2) throw DimensionError("tensor: qubit factor must be 2x2");
    const Eigen::Index n = b.dim();
    Matrix out(2 * n, 2 * n);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out.block(r * n, c * n, n, n) = q(r, c) * b.entries();

    // Hermitian/unitary/diagonal survive the product when both factors carry them.
    unsigned flags = static_cast<unsigned>(q.structure()) & static_cast<unsigned>(b.structure());
    return {std::move(out), static_cast<Structure>(flags)};
}

} // namespace rabi::ops
