// sectors.hpp: Split a Hilbert space into the ±1 eigenspaces of an involutive symmetry.
//
// Sector naming follows the tunneling convention: the "plus" sector is the eigenspace with parity
// eigenvalue -1 (it holds the ground state of every model here), "minus" the one with +1.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <array>
#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

#include "rabi/errors.hpp"
#include "rabi/operator_matrix.hpp"

namespace rabi {

enum class Sector { plus, minus, mixed };

inline std::string_view to_string(Sector s) {
    switch (s) {
    case Sector::plus: return "plus";
    case Sector::minus: return "minus";
    case Sector::mixed: return "mixed";
    }
    return "mixed";
}

inline double parity_eigenvalue(Sector s) { return s == Sector::plus ? -1.0 : 1.0; }

using SparseMatrix = Eigen::SparseMatrix<cplx>;

// Columns form an orthonormal basis of one parity eigenspace inside the full space.
struct SectorBasis {
    Sector sector{Sector::plus};
    SparseMatrix isometry;

    Eigen::Index full_dim() const { return isometry.rows(); }
    Eigen::Index dim() const { return isometry.cols(); }

    // V^dag H V
    Matrix compress(const Matrix& h) const {
        const Matrix hv = h * isometry;
        return isometry.adjoint() * hv;
    }

    Vector project(const Vector& v) const { return isometry.adjoint() * v; }
    Vector embed(const Vector& v) const { return isometry * v; }
    Matrix embed(const Matrix& m) const { return isometry * m; }
};

namespace detail {

// When every column holds exactly one entry equal to ±1 the operator is a signed permutation and
// the sector bases are sparse: fixed points e_j, and pairs (e_j + lambda s e_pi(j)) / sqrt 2.
inline bool signed_permutation(const Matrix& p, std::vector<Eigen::Index>& image, std::vector<double>& sign) {
    const Eigen::Index n = p.rows();
    image.assign(static_cast<std::size_t>(n), -1);
    sign.assign(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) {
            const cplx v = p(r, c);
            if (v == cplx(0.0)) continue;
            if (image[static_cast<std::size_t>(c)] >= 0 || v.imag() != 0.0 || std::abs(v.real()) != 1.0) return false;
            image[static_cast<std::size_t>(c)] = r;
            sign[static_cast<std::size_t>(c)] = v.real();
        }
        if (image[static_cast<std::size_t>(c)] < 0) return false;
    }
    for (Eigen::Index c = 0; c < n; ++c) {
        const auto r = image[static_cast<std::size_t>(c)];
        if (image[static_cast<std::size_t>(r)] != c || sign[static_cast<std::size_t>(r)] != sign[static_cast<std::size_t>(c)]) {
            return false;  // not an involution
        }
    }
    return true;
}

} // namespace detail

// Returns {plus, minus} sector bases of a hermitian involution.
inline std::array<SectorBasis, 2> sector_bases(const OperatorMatrix& parity_op) {
    const Matrix& p = parity_op.entries();
    const Eigen::Index n = p.rows();
    using Triplet = Eigen::Triplet<cplx>;
    std::array<std::vector<Triplet>, 2> trip;  // [0] eigenvalue -1, [1] eigenvalue +1
    std::array<Eigen::Index, 2> count{0, 0};

    std::vector<Eigen::Index> image;
    std::vector<double> sign;
    if (detail::signed_permutation(p, image, sign)) {
        const double h = 1.0 / std::numbers::sqrt2;
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto pj = image[static_cast<std::size_t>(j)];
            const double s = sign[static_cast<std::size_t>(j)];
            if (pj == j) {
                const int which = s < 0.0 ? 0 : 1;
                trip[which].emplace_back(j, count[which]++, 1.0);
            } else if (j < pj) {
                for (int which = 0; which < 2; ++which) {
                    const double lambda = which == 0 ? -1.0 : 1.0;
                    trip[which].emplace_back(j, count[which], h);
                    trip[which].emplace_back(pj, count[which], lambda * s * h);
                    ++count[which];
                }
            }
        }
    } else {
        Eigen::SelfAdjointEigenSolver<Matrix> es(p);
        if (es.info() != Eigen::Success) throw std::runtime_error("sector_bases: eigendecomposition failed");
        for (Eigen::Index c = 0; c < n; ++c) {
            const double ev = es.eigenvalues()(c);
            if (std::abs(std::abs(ev) - 1.0) > 1e-8) throw ContractViolation("sector_bases: operator is not an involution");
            const int which = ev < 0.0 ? 0 : 1;
            for (Eigen::Index r = 0; r < n; ++r) {
                const cplx v = es.eigenvectors()(r, c);
                if (v != cplx(0.0)) trip[which].emplace_back(r, count[which], v);
            }
            ++count[which];
        }
    }

    std::array<SectorBasis, 2> out;
    for (int which = 0; which < 2; ++which) {
        out[static_cast<std::size_t>(which)].sector = which == 0 ? Sector::plus : Sector::minus;
        SparseMatrix v(n, count[static_cast<std::size_t>(which)]);
        v.setFromTriplets(trip[static_cast<std::size_t>(which)].begin(), trip[static_cast<std::size_t>(which)].end());
        out[static_cast<std::size_t>(which)].isometry = std::move(v);
    }
    return out;
}

} // namespace rabi
