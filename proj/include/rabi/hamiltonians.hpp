// hamiltonians.hpp: Quantum Rabi Hamiltonians, the unitaries U0, U1, U_phi, and parity operators
// on the composite qubit ⊗ boson space (dimension 2 * n_boson).

#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "rabi/errors.hpp"
#include "rabi/operator_matrix.hpp"
#include "rabi/operators.hpp"

namespace rabi {

enum class ModelKind { qr, qr_ren, transformed, transformed_ren, free_boson };

inline std::string_view to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::qr: return "qr";
    case ModelKind::qr_ren: return "qr-ren";
    case ModelKind::transformed: return "transformed";
    case ModelKind::transformed_ren: return "transformed-ren";
    case ModelKind::free_boson: return "free";
    }
    return "unknown";
}

inline ModelKind parse_model_kind(std::string_view s) {
    if (s == "qr") return ModelKind::qr;
    if (s == "qr-ren" || s == "qr_ren") return ModelKind::qr_ren;
    if (s == "transformed") return ModelKind::transformed;
    if (s == "transformed-ren" || s == "transformed_ren") return ModelKind::transformed_ren;
    if (s == "free" || s == "free_boson" || s == "free-boson") return ModelKind::free_boson;
    throw DomainError("unknown model kind '" + std::string(s) + "'");
}

inline bool is_renormalized(ModelKind kind) {
    return kind == ModelKind::qr_ren || kind == ModelKind::transformed_ren;
}

inline bool is_transformed_frame(ModelKind kind) {
    return kind == ModelKind::transformed || kind == ModelKind::transformed_ren ||
           kind == ModelKind::free_boson;
}

// hbar * g^2 / omega_c
inline double self_energy_shift(const ModelParams& p) { return p.hbar * p.g * p.g / p.omega_c; }

namespace ham {

// hbar omega (a^dag a + 1/2) on the boson factor.
inline Matrix oscillator(int n_boson, double hbar_omega) {
    Matrix h = Matrix::Zero(n_boson, n_boson);
    for (int m = 0; m < n_boson; ++m) h(m, m) = hbar_omega * (m + 0.5);
    return h;
}

inline OperatorMatrix h_qr(const ModelParams& p, int n_boson) {
    p.validate();
    ops::require_dim(n_boson, 2, "h_qr");
    const auto [a, ad] = ops::make_ladder(n_boson);
    const Matrix field = a.entries() + ad.entries();
    const OperatorMatrix ib = OperatorMatrix::identity(n_boson);

    Matrix h = (0.5 * p.hbar * p.omega_a) * ops::tensor(ops::sigma_z(), ib).entries();
    h += ops::tensor(ops::identity2(), {oscillator(n_boson, p.hbar * p.omega_c), Structure::hermitian}).entries();
    h += (p.hbar * p.g) * ops::tensor(ops::sigma_x(), {field, Structure::hermitian}).entries();
    if (p.a2_coeff != 0.0) {
        const Matrix field2 = field * field;
        h += (p.hbar * p.a2_coeff * p.g * p.g) *
             ops::tensor(ops::identity2(), {field2, Structure::hermitian}).entries();
    }
    return {std::move(h), Structure::hermitian};
}

inline OperatorMatrix h_qr_ren(const ModelParams& p, int n_boson) {
    Matrix h = h_qr(p, n_boson).entries();
    h.diagonal().array() += self_energy_shift(p);
    return {std::move(h), Structure::hermitian};
}

inline OperatorMatrix h_free_boson(const ModelParams& p, int n_boson) {
    p.validate();
    ops::require_dim(n_boson, 1, "h_free_boson");
    return {ops::tensor(ops::identity2(), {oscillator(n_boson, p.hbar * p.omega_c), Structure::hermitian})
                .entries(),
            Structure::hermitian | Structure::diagonal};
}

// U0 = (1/sqrt 2) [[1, -1], [1, 1]] on the qubit.
inline OperatorMatrix u0() {
    Matrix m(2, 2);
    m << 1.0, -1.0, 1.0, 1.0;
    return {m / std::numbers::sqrt2, Structure::unitary};
}

// U1 = 1 ⊗ exp(-i pi/2 a^dag a)
inline OperatorMatrix u1(int n_boson) {
    return ops::tensor(ops::identity2(), ops::number_phase(n_boson, std::numbers::pi / 2.0));
}

// U_phi = diag(exp(-i g/omega_c (a^dag + a)), exp(+i g/omega_c (a^dag + a))) over the sigma_z blocks.
// exp(-i lambda (a^dag + a)) is the displacement with alpha = -i lambda.
inline OperatorMatrix u_phi(const ModelParams& p, int n_boson) {
    p.validate();
    const double lambda = p.g / p.omega_c;
    const auto up = ops::displacement({0.0, -lambda}, n_boson, ops::DisplacementMethod::exponentiate);
    const auto down = ops::displacement({0.0, lambda}, n_boson, ops::DisplacementMethod::exponentiate);
    Matrix u = Matrix::Zero(2 * n_boson, 2 * n_boson);
    u.topLeftCorner(n_boson, n_boson) = up.entries();
    u.bottomRightCorner(n_boson, n_boson) = down.entries();
    return {std::move(u), Structure::unitary};
}

// U0 U1 U_phi on the composite space.
inline OperatorMatrix total_unitary(const ModelParams& p, int n_boson) {
    const OperatorMatrix u0_full = ops::tensor(u0(), OperatorMatrix::identity(n_boson));
    Matrix u = u0_full.entries() * u1(n_boson).entries() * u_phi(p, n_boson).entries();
    return {std::move(u), Structure::unitary};
}

// B = [[0, exp(+i kappa x)], [exp(-i kappa x), 0]] with kappa = g sqrt(8 / hbar omega_c);
// exp(+i kappa x) is the displacement with alpha = 2 i g / omega_c, filled from the closed form.
inline Matrix tunneling_operator(const ModelParams& p, int n_boson) {
    const double shift = 2.0 * p.g / p.omega_c;
    const Matrix d = ops::displacement({0.0, shift}, n_boson, ops::DisplacementMethod::laguerre).entries();
    Matrix b = Matrix::Zero(2 * n_boson, 2 * n_boson);
    b.topRightCorner(n_boson, n_boson) = d;
    b.bottomLeftCorner(n_boson, n_boson) = d.adjoint();
    return b;
}

// H~ = A - (hbar omega_a / 2) B with A = 1 ⊗ H_ho - hbar g^2/omega_c (shift removed when renormalized).
// Built from A and B directly; conjugating h_qr by U0 U1 U_phi is kept as an independent check.
inline OperatorMatrix h_transformed(const ModelParams& p, int n_boson, bool renormalized) {
    p.validate();
    ops::require_dim(n_boson, 2, "h_transformed");
    if (p.a2_coeff != 0.0) {
        throw DomainError("h_transformed: the mass term is only supported in the untransformed frame");
    }
    Matrix h = Matrix::Zero(2 * n_boson, 2 * n_boson);
    const Matrix osc = oscillator(n_boson, p.hbar * p.omega_c);
    h.topLeftCorner(n_boson, n_boson) = osc;
    h.bottomRightCorner(n_boson, n_boson) = osc;
    if (!renormalized) h.diagonal().array() -= self_energy_shift(p);
    h -= (0.5 * p.hbar * p.omega_a) * tunneling_operator(p, n_boson);
    return {std::move(h), Structure::hermitian};
}

// P = sigma_z (-1)^{a^dag a}
inline OperatorMatrix parity(int n_boson) {
    return ops::tensor(ops::sigma_z(), ops::number_parity(n_boson));
}

// P~ = -sigma_x (-1)^{a^dag a}
inline OperatorMatrix parity_transformed(int n_boson) {
    const OperatorMatrix minus_sx{-ops::sigma_x().entries(), Structure::hermitian | Structure::unitary};
    return ops::tensor(minus_sx, ops::number_parity(n_boson));
}

// -sigma_x ⊗ 1
inline OperatorMatrix qubit_flip(int n_boson) {
    const OperatorMatrix minus_sx{-ops::sigma_x().entries(), Structure::hermitian | Structure::unitary};
    return ops::tensor(minus_sx, OperatorMatrix::identity(n_boson));
}

inline OperatorMatrix build(ModelKind kind, const ModelParams& p, int n_boson) {
    switch (kind) {
    case ModelKind::qr: return h_qr(p, n_boson);
    case ModelKind::qr_ren: return h_qr_ren(p, n_boson);
    case ModelKind::transformed: return h_transformed(p, n_boson, false);
    case ModelKind::transformed_ren: return h_transformed(p, n_boson, true);
    case ModelKind::free_boson: return h_free_boson(p, n_boson);
    }
    throw DomainError("build: unknown model kind");
}

// Symmetry used to split each model into sectors: P for the lab frame, P~ otherwise.
inline OperatorMatrix parity_for(ModelKind kind, int n_boson) {
    return is_transformed_frame(kind) ? parity_transformed(n_boson) : parity(n_boson);
}

} // namespace ham

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// Spectral norm of AB - BA.
inline double commutator_norm(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionError("commutator_norm: dimension mismatch");
    const Matrix c = commutator(a.entries(), b.entries());
    if (max_abs(c) == 0.0) return 0.0;
    Eigen::BDCSVD<Matrix> svd(c);
    return svd.singularValues()(0);
}

} // namespace rabi
