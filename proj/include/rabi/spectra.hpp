// spectra.hpp: Hermitian eigensolution, truncation-convergence control, parity labels,
// pair-degeneracy gaps, and N=2 SUSY pattern detection.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include "rabi/errors.hpp"
#include "rabi/hamiltonians.hpp"
#include "rabi/operator_matrix.hpp"
#include "rabi/sectors.hpp"

namespace rabi {

struct EigenPairs {
    RVector values;  // ascending
    Matrix vectors;  // columns
};

namespace detail {

template <typename Solver, typename Mat>
Solver solve_checked(const Mat& h, int options) {
    Solver es(h, options);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolve: decomposition failed");
    return es;
}

// Real matrices take the real solver; the choice depends only on the input, so results stay deterministic.
inline EigenPairs dense_eigensolve(const Matrix& h, Eigen::Index k, bool want_vectors) {
    const int opts = want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
    EigenPairs out;
    if (is_real(h)) {
        const RMatrix hr = h.real();
        auto es = solve_checked<Eigen::SelfAdjointEigenSolver<RMatrix>>(hr, opts);
        out.values = es.eigenvalues().head(k);
        if (want_vectors) out.vectors = es.eigenvectors().leftCols(k).template cast<cplx>();
    } else {
        auto es = solve_checked<Eigen::SelfAdjointEigenSolver<Matrix>>(h, opts);
        out.values = es.eigenvalues().head(k);
        if (want_vectors) out.vectors = es.eigenvectors().leftCols(k);
    }
    return out;
}

} // namespace detail

// k smallest eigenpairs of a hermitian operator, full dense decomposition.
inline EigenPairs eigensolve(const OperatorMatrix& h, Eigen::Index k) {
    if (!h.is(Structure::hermitian)) throw ContractViolation("eigensolve: operator is not flagged hermitian");
    if (k < 1 || k > h.dim()) throw DimensionError("eigensolve: k must lie in [1, dim]");
    return detail::dense_eigensolve(h.entries(), k, true);
}

// ------------------------------------------------------------ labels ------

// plus if <v|P|v> <= -1 + eps, minus if >= 1 - eps, mixed otherwise.
inline std::vector<Sector> parity_labels(const Matrix& vectors, const OperatorMatrix& parity_op, double eps = 1e-6) {
    if (vectors.rows() != parity_op.dim()) throw DimensionError("parity_labels: dimension mismatch");
    std::vector<Sector> tags;
    tags.reserve(static_cast<std::size_t>(vectors.cols()));
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        const Vector v = vectors.col(c);
        const double expect = (v.adjoint() * parity_op.entries() * v)(0, 0).real() / v.squaredNorm();
        if (expect <= -1.0 + eps) tags.push_back(Sector::plus);
        else if (expect >= 1.0 - eps) tags.push_back(Sector::minus);
        else tags.push_back(Sector::mixed);
    }
    return tags;
}

// ---------------------------------------------------------- spectrum ------

struct TruncationSpec {
    int initial_dim{16};
    double growth_factor{1.5};
    int max_dim{1024};
    double level_tol{1e-10};

    void validate() const {
        if (initial_dim < 8) throw DomainError("TruncationSpec: initial_dim must be >= 8");
        if (max_dim < initial_dim) throw DomainError("TruncationSpec: max_dim must be >= initial_dim");
        if (!(growth_factor > 1.0)) throw DomainError("TruncationSpec: growth_factor must be > 1");
        if (!(level_tol > 0.0)) throw DomainError("TruncationSpec: level_tol must be > 0");
    }

    int next_dim(int n) const {
        return std::max(n + 1, static_cast<int>(std::ceil(n * growth_factor)));
    }
};

struct SpectrumResult {
    std::vector<double> levels;        // ascending
    std::vector<Sector> parity_sector; // per level
    int converged_dim{0};              // boson truncation at acceptance
    std::vector<double> residual;      // change to the next truncation, per level
};

struct SectorLevel {
    double energy;
    Sector sector;
};

// Ascending by energy; equal energies put the plus sector first.
inline void sort_levels(std::vector<SectorLevel>& levels) {
    std::stable_sort(levels.begin(), levels.end(), [](const SectorLevel& a, const SectorLevel& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        return a.sector == Sector::plus && b.sector != Sector::plus;
    });
}

// Lowest k levels of h, each sector diagonalized separately.
inline std::vector<SectorLevel> sector_resolved_levels(const Matrix& h, const std::array<SectorBasis, 2>& bases,
                                                       Eigen::Index k) {
    std::vector<SectorLevel> all;
    for (const auto& basis : bases) {
        if (basis.dim() == 0) continue;
        const Matrix hs = basis.compress(h);
        const auto pairs = detail::dense_eigensolve(0.5 * (hs + hs.adjoint()), std::min(k, basis.dim()), false);
        for (Eigen::Index i = 0; i < pairs.values.size(); ++i) all.push_back({pairs.values(i), basis.sector});
    }
    sort_levels(all);
    if (static_cast<Eigen::Index>(all.size()) > k) all.resize(static_cast<std::size_t>(k));
    return all;
}

inline std::vector<SectorLevel> spectrum_at(const ModelParams& params, ModelKind kind, int k, int n_boson) {
    const OperatorMatrix h = ham::build(kind, params, n_boson);
    const auto bases = sector_bases(ham::parity_for(kind, n_boson));
    return sector_resolved_levels(h.entries(), bases, k);
}

// Enlarges the boson truncation by growth_factor until the k lowest levels move by less than
// level_tol, then reports the accepted truncation with the residual to the next one.
inline SpectrumResult converged_spectrum(const ModelParams& params, ModelKind kind, int k,
                                         const TruncationSpec& trunc = {}) {
    if (k < 1) throw DomainError("converged_spectrum: k must be >= 1");
    trunc.validate();
    params.validate();

    int n = std::max(trunc.initial_dim, k + 2);
    if (n > trunc.max_dim) throw ConvergenceFailure("converged_spectrum: k exceeds max_dim", n, {});
    auto prev = spectrum_at(params, kind, k, n);
    std::vector<double> residual;
    while (true) {
        int next = trunc.next_dim(n);
        if (next > trunc.max_dim) {
            if (n == trunc.max_dim) {
                std::ostringstream msg;
                msg << "converged_spectrum: no convergence within max_dim=" << trunc.max_dim
                    << " (max residual " << (residual.empty() ? 0.0 : *std::max_element(residual.begin(), residual.end()))
                    << ")";
                throw ConvergenceFailure(msg.str(), n, residual);
            }
            next = trunc.max_dim;
        }
        auto cur = spectrum_at(params, kind, k, next);
        residual.assign(static_cast<std::size_t>(k), 0.0);
        double worst = 0.0;
        for (std::size_t i = 0; i < residual.size(); ++i) {
            residual[i] = std::abs(cur[i].energy - prev[i].energy);
            worst = std::max(worst, residual[i]);
        }
        if (worst < trunc.level_tol) {
            SpectrumResult out;
            out.converged_dim = n;
            out.residual = residual;
            for (const auto& lv : prev) {
                out.levels.push_back(lv.energy);
                out.parity_sector.push_back(lv.sector);
            }
            return out;
        }
        prev = std::move(cur);
        n = next;
    }
}

// ------------------------------------------------------------- gaps ------

struct PairGap {
    std::size_t pair_index;
    double gap;
};

// offset = 0: E_{2m+1} - E_{2m}.
// offset = 1: E_1 - E_0 first, then E_{2m+2} - E_{2m+1} (pairing above a simple ground state).
inline std::vector<PairGap> degeneracy_gaps(const std::vector<double>& levels, int offset = 0) {
    std::vector<PairGap> gaps;
    if (offset == 1 && levels.size() >= 2) gaps.push_back({0, levels[1] - levels[0]});
    for (std::size_t lo = static_cast<std::size_t>(offset); lo + 1 < levels.size(); lo += 2) {
        gaps.push_back({gaps.size(), levels[lo + 1] - levels[lo]});
    }
    return gaps;
}

inline std::vector<PairGap> degeneracy_gaps(const SpectrumResult& result, int offset = 0) {
    return degeneracy_gaps(result.levels, offset);
}

// -------------------------------------------------------------- SUSY ------

struct SusyReport {
    bool is_susy_n2{false};
    double spacing{std::numeric_limits<double>::quiet_NaN()};
};

// Simple ground level, (2m+1, 2m+2) pairs degenerate within tol, distinct levels equally spaced.
inline SusyReport detect_susy(const std::vector<double>& levels, double tol) {
    SusyReport rep;
    if (levels.size() < 3) return rep;
    if (levels[1] - levels[0] <= tol) return rep;
    std::vector<double> distinct{levels[0]};
    for (std::size_t lo = 1; lo < levels.size(); lo += 2) {
        if (lo + 1 < levels.size() && std::abs(levels[lo + 1] - levels[lo]) > tol) return rep;
        distinct.push_back(levels[lo]);
    }
    const double spacing = distinct[1] - distinct[0];
    for (std::size_t i = 2; i < distinct.size(); ++i) {
        if (std::abs((distinct[i] - distinct[i - 1]) - spacing) > tol) return rep;
    }
    rep.is_susy_n2 = true;
    rep.spacing = spacing;
    return rep;
}

inline SusyReport detect_susy(const SpectrumResult& result, double tol) { return detect_susy(result.levels, tol); }

} // namespace rabi
