// grid_oracle.hpp: Position-grid discretization of U0^dag H_QR U0 used to cross-check the Fock pipeline,
// plus the U1 Fourier-rotation check.
//
// Grid: x_i = -L + (i + 1) h, h = 2L / (M + 1), Dirichlet walls at ±L.
// Component order matches the Fock side: block 0 is sigma_z = +1 (up), block 1 is sigma_z = -1 (down).

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "rabi/errors.hpp"
#include "rabi/hamiltonians.hpp"
#include "rabi/operators.hpp"
#include "rabi/sectors.hpp"
#include "rabi/spectra.hpp"

namespace rabi::oracle {

struct GridSpec {
    double half_width{12.0};
    int points{1024};
    int stencil_order{4};

    double spacing() const { return 2.0 * half_width / (points + 1); }
    double x(int i) const { return -half_width + (i + 1) * spacing(); }

    // Must cover both displaced wells plus the ground-state width.
    static double min_half_width(const ModelParams& p) {
        return 4.0 * (p.g / p.omega_c) * std::sqrt(2.0 * p.hbar / p.omega_c) + 6.0 * std::sqrt(p.hbar / p.omega_c);
    }

    void validate(const ModelParams& p) const {
        if (points < 64) throw DomainError("GridSpec: at least 64 points required");
        if (stencil_order != 2 && stencil_order != 4) throw DomainError("GridSpec: stencil_order must be 2 or 4");
        if (!(half_width > min_half_width(p))) {
            throw DomainError("GridSpec: half_width " + std::to_string(half_width) +
                              " does not cover the displaced wells (need > " + std::to_string(min_half_width(p)) + ")");
        }
    }
};

// Minimum of (omega_c^2/2) x^2 ± g sqrt(2 hbar omega_c) x: value and location.
struct WellMinimum {
    double x;
    double value;
};

inline WellMinimum well_minimum(const ModelParams& p, int sigma_z) {
    const double slope = sigma_z * p.g * std::sqrt(2.0 * p.hbar * p.omega_c);
    const double x0 = -slope / (p.omega_c * p.omega_c);
    return {x0, 0.5 * p.omega_c * p.omega_c * x0 * x0 + slope * x0};
}

// Two-component finite-difference Hamiltonian, 2M x 2M, real symmetric.
inline OperatorMatrix grid_hamiltonian(const ModelParams& p, const GridSpec& grid) {
    p.validate();
    grid.validate(p);
    const int m = grid.points;
    const double h = grid.spacing();
    const double kin = p.hbar * p.hbar / (2.0 * h * h);
    const double coupling = p.g * std::sqrt(2.0 * p.hbar * p.omega_c);

    // -hbar^2/2 d^2/dx^2 stencils
    std::vector<double> stencil;
    if (grid.stencil_order == 2) stencil = {2.0, -1.0};
    else stencil = {30.0 / 12.0, -16.0 / 12.0, 1.0 / 12.0};

    RMatrix hr = RMatrix::Zero(2 * m, 2 * m);
    for (int block = 0; block < 2; ++block) {
        const double sz = block == 0 ? 1.0 : -1.0;
        const int off = block * m;
        for (int i = 0; i < m; ++i) {
            const double xi = grid.x(i);
            hr(off + i, off + i) = kin * stencil[0] + 0.5 * p.omega_c * p.omega_c * xi * xi + sz * coupling * xi;
            for (std::size_t d = 1; d < stencil.size(); ++d) {
                const int j = i + static_cast<int>(d);
                if (j < m) {
                    hr(off + i, off + j) = kin * stencil[d];
                    hr(off + j, off + i) = kin * stencil[d];
                }
            }
        }
    }
    for (int i = 0; i < m; ++i) {
        hr(i, m + i) = -0.5 * p.hbar * p.omega_a;
        hr(m + i, i) = -0.5 * p.hbar * p.omega_a;
    }
    return {hr.cast<cplx>(), Structure::hermitian};
}

// -sigma_x composed with the reflection x -> -x of each component.
inline OperatorMatrix grid_parity(const GridSpec& grid) {
    const int m = grid.points;
    Matrix par = Matrix::Zero(2 * m, 2 * m);
    for (int i = 0; i < m; ++i) {
        par(i, m + (m - 1 - i)) = -1.0;
        par(m + i, m - 1 - i) = -1.0;
    }
    return {std::move(par), Structure::hermitian | Structure::unitary};
}

struct OracleSpectrum {
    SpectrumResult result;
    Matrix ground_state;  // 2M vector of the lowest level, unit norm
};

inline OracleSpectrum oracle_spectrum_with_ground(const ModelParams& p, const GridSpec& grid, int k) {
    if (k < 1) throw DomainError("oracle_spectrum: k must be >= 1");
    const OperatorMatrix h = grid_hamiltonian(p, grid);
    const auto bases = sector_bases(grid_parity(grid));

    std::vector<SectorLevel> all;
    Matrix ground;
    double ground_e = std::numeric_limits<double>::infinity();
    for (const auto& basis : bases) {
        const Matrix hs = basis.compress(h.entries());
        const auto pairs = detail::dense_eigensolve(0.5 * (hs + hs.adjoint()), std::min<Eigen::Index>(k, basis.dim()), true);
        for (Eigen::Index i = 0; i < pairs.values.size(); ++i) all.push_back({pairs.values(i), basis.sector});
        if (pairs.values(0) < ground_e) {
            ground_e = pairs.values(0);
            ground = basis.embed(Matrix(pairs.vectors.col(0)));
        }
    }
    sort_levels(all);
    all.resize(std::min<std::size_t>(all.size(), static_cast<std::size_t>(k)));

    OracleSpectrum out;
    out.result.converged_dim = grid.points;
    for (const auto& lv : all) {
        out.result.levels.push_back(lv.energy);
        out.result.parity_sector.push_back(lv.sector);
    }
    out.result.residual.assign(out.result.levels.size(), 0.0);
    out.ground_state = ground;
    return out;
}

inline SpectrumResult oracle_spectrum(const ModelParams& p, const GridSpec& grid, int k) {
    return oracle_spectrum_with_ground(p, grid, k).result;
}

// max of ||U1^dag x U1 - p/omega_c|| and ||U1^dag p U1 + omega_c x|| on Fock states 0..n-2.
struct FourierDeviation {
    double projected{0.0};
    double full{0.0};
};

inline FourierDeviation fourier_deviation(int n_boson, const ModelParams& p = {}) {
    const auto q = ops::make_quadratures(n_boson, p);
    const Matrix u = ops::number_phase(n_boson, std::numbers::pi / 2.0).entries();
    const Matrix dx = u.adjoint() * q.position.entries() * u - q.momentum.entries() / p.omega_c;
    const Matrix dp = u.adjoint() * q.momentum.entries() * u + p.omega_c * q.position.entries();
    const auto norm = [](const Matrix& m) {
        return m.size() == 0 ? 0.0 : Eigen::BDCSVD<Matrix>(m).singularValues()(0);
    };
    const Eigen::Index inner = n_boson - 1;
    FourierDeviation dev;
    dev.projected = std::max(norm(dx.topLeftCorner(inner, inner)), norm(dp.topLeftCorner(inner, inner)));
    dev.full = std::max(norm(dx), norm(dp));
    return dev;
}

inline double fourier_check(int n_boson, const ModelParams& p = {}) { return fourier_deviation(n_boson, p).projected; }

} // namespace rabi::oracle
