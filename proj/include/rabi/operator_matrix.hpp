// operator_matrix.hpp: Model parameters and dense operator matrices with structure flags

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>

#include "rabi/errors.hpp"

namespace rabi {

using cplx    = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using Vector  = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Physical parameters of one model instance. Frequencies share one unit; energies are hbar*frequency.
struct ModelParams {
    double omega_a{1.0};   // qubit transition frequency
    double omega_c{1.0};   // boson frequency
    double g{0.0};         // qubit-boson coupling
    double hbar{1.0};
    double a2_coeff{0.0};  // coefficient C of the hbar*C*g^2*(a+a^dag)^2 mass term

    void validate() const {
        if (!(omega_c > 0.0)) throw DomainError("ModelParams: omega_c must be > 0");
        if (!(omega_a >= 0.0)) throw DomainError("ModelParams: omega_a must be >= 0");
        if (!(g >= 0.0)) throw DomainError("ModelParams: g must be >= 0");
        if (!(hbar > 0.0)) throw DomainError("ModelParams: hbar must be > 0");
        if (!std::isfinite(a2_coeff)) throw DomainError("ModelParams: a2_coeff must be finite");
    }
};

// Declared structure of an operator. Flags combine: a parity operator is hermitian | unitary | diagonal.
enum class Structure : unsigned {
    general   = 0,
    hermitian = 1u << 0,
    unitary   = 1u << 1,
    diagonal  = 1u << 2,
};

constexpr Structure operator|(Structure a, Structure b) noexcept {
    return static_cast<Structure>(static_cast<unsigned>(a) | static_cast<unsigned>(b));
}

constexpr bool has_flag(Structure set, Structure flag) noexcept {
    return (static_cast<unsigned>(set) & static_cast<unsigned>(flag)) == static_cast<unsigned>(flag);
}

struct StructureTolerances {
    double hermitian{1e-12};
    double unitary{1e-10};
    double diagonal{0.0};
};

class OperatorMatrix {
public:
    OperatorMatrix() = default;

    OperatorMatrix(Matrix entries, Structure structure)
        : entries_(std::move(entries)), structure_(structure) {
        if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
            throw DimensionError("OperatorMatrix: entries must be a non-empty square matrix");
        }
    }

    static OperatorMatrix identity(Eigen::Index dim) {
        return {Matrix::Identity(dim, dim),
                Structure::hermitian | Structure::unitary | Structure::diagonal};
    }

    Eigen::Index dim() const noexcept { return entries_.rows(); }
    const Matrix& entries() const noexcept { return entries_; }
    Structure structure() const noexcept { return structure_; }
    bool is(Structure flag) const noexcept { return has_flag(structure_, flag); }

    cplx operator()(Eigen::Index r, Eigen::Index c) const { return entries_(r, c); }

private:
    Matrix entries_;
    Structure structure_{Structure::general};
};

inline double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Largest entrywise deviation from each declared property; 0 for undeclared ones.
struct StructureDeviation {
    double hermitian{0.0};
    double unitary{0.0};
    double diagonal{0.0};
};

inline StructureDeviation structure_deviation(const OperatorMatrix& op) {
    StructureDeviation dev;
    const Matrix& m = op.entries();
    if (op.is(Structure::hermitian)) dev.hermitian = max_abs(m - m.adjoint());
    if (op.is(Structure::unitary)) {
        dev.unitary = max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols()));
    }
    if (op.is(Structure::diagonal)) {
        Matrix off = m;
        off.diagonal().setZero();
        dev.diagonal = max_abs(off);
    }
    return dev;
}

inline bool satisfies_structure(const OperatorMatrix& op, const StructureTolerances& tol = {}) {
    const auto dev = structure_deviation(op);
    return dev.hermitian <= tol.hermitian && dev.unitary <= tol.unitary && dev.diagonal <= tol.diagonal;
}

// True when every imaginary part is exactly zero.
inline bool is_real(const Matrix& m) {
    return m.size() == 0 || m.imag().cwiseAbs().maxCoeff() == 0.0;
}

} // namespace rabi
