#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rabi/hamiltonians.hpp"
#include "rabi/sectors.hpp"
#include "rabi/spectra.hpp"

using namespace rabi;

namespace {

ModelParams params(double omega_a, double omega_c, double g) {
    ModelParams p;
    p.omega_a = omega_a;
    p.omega_c = omega_c;
    p.g = g;
    return p;
}

} // namespace

TEST(Eigensolve, EnforcesContract) {
    const OperatorMatrix general{ops::sigma_plus().entries(), Structure::general};
    EXPECT_THROW(eigensolve(general, 1), ContractViolation);
    EXPECT_THROW(eigensolve(ops::sigma_z(), 3), DimensionError);
    EXPECT_THROW(eigensolve(ops::sigma_z(), 0), DimensionError);
    const auto pairs = eigensolve(ops::sigma_y(), 2);
    EXPECT_NEAR(pairs.values(0), -1.0, 1e-15);
    EXPECT_NEAR(pairs.values(1), 1.0, 1e-15);
}

TEST(Eigensolve, VectorsAreOrthonormalEigenvectors) {
    const auto h = ham::h_qr(params(0.5, 1.0, 0.7), 30);
    const auto pairs = eigensolve(h, 6);
    const Matrix& v = pairs.vectors;
    EXPECT_LT(max_abs(v.adjoint() * v - Matrix::Identity(6, 6)), 1e-12);
    for (int c = 0; c < 6; ++c) {
        EXPECT_LT((h.entries() * v.col(c) - pairs.values(c) * v.col(c)).norm(), 1e-10);
    }
}

TEST(ParityLabels, NondegenerateEigenvectorsAreSharp) {
    const int n = 40;
    const auto pairs = eigensolve(ham::h_qr(params(0.5, 1.0, 0.5), n), 8);
    const auto tags = parity_labels(pairs.vectors, ham::parity(n));
    for (auto t : tags) EXPECT_NE(t, Sector::mixed);
    // the ground state sits in the parity -1 sector
    EXPECT_EQ(tags[0], Sector::plus);
    EXPECT_EQ(tags[1], Sector::minus);

    Matrix mix(2 * n, 1);
    mix.col(0) = (pairs.vectors.col(0) + pairs.vectors.col(1)) / std::sqrt(2.0);
    EXPECT_EQ(parity_labels(mix, ham::parity(n))[0], Sector::mixed);
}

TEST(SectorBases, IsometriesSpanTheEigenspaces) {
    for (const auto& par : {ham::parity(12), ham::parity_transformed(12)}) {
        const auto bases = sector_bases(par);
        EXPECT_EQ(bases[0].dim() + bases[1].dim(), 24);
        for (const auto& b : bases) {
            const Matrix v = Matrix(b.isometry);
            EXPECT_LT(max_abs(v.adjoint() * v - Matrix::Identity(b.dim(), b.dim())), 1e-15);
            EXPECT_LT(max_abs(par.entries() * v - parity_eigenvalue(b.sector) * v), 1e-15);
        }
    }
}

TEST(SectorBases, DenseFallbackHandlesRotatedInvolutions) {
    // sigma_y is an involution that is not a signed permutation
    const auto bases = sector_bases(ops::sigma_y());
    for (const auto& b : bases) {
        ASSERT_EQ(b.dim(), 1);
        const Matrix v = Matrix(b.isometry);
        EXPECT_LT(max_abs(ops::sigma_y().entries() * v - parity_eigenvalue(b.sector) * v), 1e-14);
    }
    const OperatorMatrix not_involution{2.0 * ops::sigma_z().entries(), Structure::hermitian};
    EXPECT_THROW(sector_bases(not_involution), ContractViolation);
}

TEST(ConvergedSpectrum, ResonanceAtZeroCouplingIsSupersymmetric) {
    const auto res = converged_spectrum(params(1.0, 1.0, 0.0), ModelKind::qr, 10);
    const std::vector<double> want{0, 1, 1, 2, 2, 3, 3, 4, 4, 5};
    ASSERT_EQ(res.levels.size(), 10u);
    for (int i = 0; i < 10; ++i) EXPECT_NEAR(res.levels[i], want[i], 1e-8) << i;
    const auto susy = detect_susy(res, 1e-8);
    EXPECT_TRUE(susy.is_susy_n2);
    EXPECT_NEAR(susy.spacing, 1.0, 1e-12);
}

TEST(ConvergedSpectrum, OffResonanceHasNoSupersymmetricPattern) {
    const auto res = converged_spectrum(params(0.5, 1.0, 0.0), ModelKind::qr, 10);
    for (int i = 0; i < 10; ++i) EXPECT_NEAR(res.levels[i], 0.25 + 0.5 * i, 1e-10) << i;
    EXPECT_FALSE(detect_susy(res, 1e-8).is_susy_n2);
}

TEST(ConvergedSpectrum, ModelsAgreeUpToTheSelfEnergyShift) {
    const auto p = params(0.5, 1.0, 1.1);
    const auto qr = converged_spectrum(p, ModelKind::qr, 6);
    const auto qr_ren = converged_spectrum(p, ModelKind::qr_ren, 6);
    const auto tr = converged_spectrum(p, ModelKind::transformed, 6);
    const auto tr_ren = converged_spectrum(p, ModelKind::transformed_ren, 6);
    for (int i = 0; i < 6; ++i) {
        EXPECT_NEAR(qr.levels[i], tr.levels[i], 1e-8) << i;
        EXPECT_NEAR(qr_ren.levels[i], qr.levels[i] + self_energy_shift(p), 1e-8) << i;
        EXPECT_NEAR(tr_ren.levels[i], qr_ren.levels[i], 1e-8) << i;
        // both frames assign the same symmetry sector
        EXPECT_EQ(qr.parity_sector[i], tr.parity_sector[i]) << i;
    }
}

TEST(ConvergedSpectrum, FreeBosonIsTheExactLadder) {
    const auto res = converged_spectrum(params(0.0, 2.0, 0.0), ModelKind::free_boson, 6);
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(res.levels[i], 2.0 * ((i / 2) + 0.5), 1e-13) << i;
}

TEST(ConvergedSpectrum, TruncationGrowsWithCoupling) {
    int prev = 0;
    for (double g : {0.0, 1.0, 2.0, 3.0}) {
        const auto res = converged_spectrum(params(0.5, 1.0, g), ModelKind::qr, 10);
        EXPECT_GE(res.converged_dim, prev) << g;
        prev = res.converged_dim;
        for (double r : res.residual) EXPECT_LT(r, 1e-10);
    }
    EXPECT_GT(prev, 16);
}

TEST(ConvergedSpectrum, FailureCarriesLastTruncationAndResiduals) {
    TruncationSpec t;
    t.initial_dim = 8;
    t.max_dim = 12;
    try {
        converged_spectrum(params(0.5, 1.0, 3.0), ModelKind::qr, 4, t);
        FAIL() << "expected ConvergenceFailure";
    } catch (const ConvergenceFailure& e) {
        EXPECT_EQ(e.last_dim, 12);
        EXPECT_EQ(e.last_residuals.size(), 4u);
    }
}

TEST(ConvergedSpectrum, InvalidTruncationIsRejected) {
    TruncationSpec t;
    t.growth_factor = 1.0;
    EXPECT_THROW(converged_spectrum(params(0.5, 1.0, 0.5), ModelKind::qr, 4, t), DomainError);
    EXPECT_THROW(converged_spectrum(params(0.5, 1.0, 0.5), ModelKind::qr, 0), DomainError);
}

class SpectrumProperties : public ::testing::TestWithParam<double> {};

TEST_P(SpectrumProperties, SortedSharpAndGroundInPlusSector) {
    const double g = GetParam();
    const auto res = converged_spectrum(params(0.5, 1.0, g), ModelKind::qr_ren, 10);
    EXPECT_TRUE(std::is_sorted(res.levels.begin(), res.levels.end()));
    EXPECT_EQ(res.parity_sector[0], Sector::plus);
    for (auto s : res.parity_sector) EXPECT_NE(s, Sector::mixed);
    // strict bifurcation ordering at finite coupling
    EXPECT_LT(res.levels[0], res.levels[1]);
    // renormalized levels are bounded below by the polaron ground energy hbar omega_c / 2 - hbar omega_a / 2
    EXPECT_GE(res.levels[0], 0.5 - 0.25 - 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Couplings, SpectrumProperties, ::testing::Values(0.0, 0.3, 0.8, 1.5, 2.2, 3.0));

TEST(DegeneracyGaps, OffsetSelectsThePairing) {
    const std::vector<double> susy{0, 1, 1, 2, 2};
    const auto g0 = degeneracy_gaps(susy, 0);
    ASSERT_EQ(g0.size(), 2u);
    EXPECT_DOUBLE_EQ(g0[0].gap, 1.0);
    EXPECT_DOUBLE_EQ(g0[1].gap, 1.0);
    const auto g1 = degeneracy_gaps(susy, 1);
    ASSERT_EQ(g1.size(), 3u);
    EXPECT_DOUBLE_EQ(g1[0].gap, 1.0);
    EXPECT_DOUBLE_EQ(g1[1].gap, 0.0);
    EXPECT_DOUBLE_EQ(g1[2].gap, 0.0);
    EXPECT_EQ(g1[2].pair_index, 2u);
}

TEST(DetectSusy, RejectsBrokenPatterns) {
    EXPECT_FALSE(detect_susy(std::vector<double>{0, 0, 1, 1}, 1e-8).is_susy_n2);   // degenerate ground
    EXPECT_FALSE(detect_susy(std::vector<double>{0, 1, 1, 3, 3}, 1e-8).is_susy_n2); // uneven spacing
    EXPECT_FALSE(detect_susy(std::vector<double>{0, 1, 1.1}, 1e-8).is_susy_n2);     // split pair
    EXPECT_TRUE(detect_susy(std::vector<double>{0.5, 2.5, 2.5, 4.5}, 1e-8).is_susy_n2);
}

TEST(Eigensolve, SmallExamples) {
    Matrix d = Matrix::Zero(3, 3);
    d.diagonal() << 3.0, 1.0, 2.0;
    const auto pairs = eigensolve({d, Structure::hermitian | Structure::diagonal}, 3);
    EXPECT_DOUBLE_EQ(pairs.values(0), 1.0);
    EXPECT_DOUBLE_EQ(pairs.values(1), 2.0);
    EXPECT_DOUBLE_EQ(pairs.values(2), 3.0);
    const auto sx = eigensolve(ops::sigma_x(), 2);
    EXPECT_NEAR(sx.values(0), -1.0, 1e-15);
    EXPECT_NEAR(sx.values(1), 1.0, 1e-15);
}

TEST(Eigensolve, RandomHermitianResidualsAndDeterminism) {
    std::srand(7);
    const Matrix r = Matrix::Random(50, 50);
    const OperatorMatrix h{0.5 * (r + r.adjoint()), Structure::hermitian};
    const auto a = eigensolve(h, 50);
    const auto b = eigensolve(h, 50);
    const double hnorm = detail::dense_eigensolve(h.entries(), 50, false).values.cwiseAbs().maxCoeff();
    for (int c = 0; c < 50; ++c) {
        EXPECT_LE((h.entries() * a.vectors.col(c) - a.values(c) * a.vectors.col(c)).norm(), 1e-10 * hnorm);
    }
    EXPECT_EQ(a.values, b.values);
    EXPECT_EQ(a.vectors, b.vectors);
}

TEST(ParityLabels, TransformedFrameSectors) {
    const int n = 40;
    const auto pairs = eigensolve(ham::h_transformed(params(1.0, 1.0, 0.5), n, false), 2);
    const auto tags = parity_labels(pairs.vectors, ham::parity_transformed(n));
    EXPECT_EQ(tags[0], Sector::plus);
    EXPECT_EQ(tags[1], Sector::minus);
}

TEST(ParityLabels, DegenerateFreeBosonPairIsMixedUntilRotated) {
    const int n = 10;
    const auto pairs = eigensolve(ham::h_free_boson(params(0.0, 1.0, 0.0), n), 2);
    const auto tags = parity_labels(pairs.vectors, ham::parity_transformed(n));
    EXPECT_EQ(tags[0], Sector::mixed);
    EXPECT_EQ(tags[1], Sector::mixed);
    Matrix rotated(2 * n, 2);
    rotated.col(0) = (pairs.vectors.col(0) + pairs.vectors.col(1)) / std::sqrt(2.0);
    rotated.col(1) = (pairs.vectors.col(0) - pairs.vectors.col(1)) / std::sqrt(2.0);
    const auto rtags = parity_labels(rotated, ham::parity_transformed(n));
    EXPECT_NE(rtags[0], Sector::mixed);
    EXPECT_NE(rtags[1], Sector::mixed);
    EXPECT_NE(rtags[0], rtags[1]);
}

TEST(DegeneracyGaps, ModelExamples) {
    const auto free = converged_spectrum(params(0.0, 1.0, 0.0), ModelKind::free_boson, 8);
    for (const auto& pg : degeneracy_gaps(free)) EXPECT_EQ(pg.gap, 0.0);
    EXPECT_EQ(free.converged_dim, 16);

    const auto res = converged_spectrum(params(1.0, 1.0, 0.0), ModelKind::qr, 7);
    const auto gaps = degeneracy_gaps(res, 1);
    EXPECT_NEAR(gaps[0].gap, 1.0, 1e-12);
    for (std::size_t i = 1; i < gaps.size(); ++i) EXPECT_NEAR(gaps[i].gap, 0.0, 1e-12);

    const auto ren = converged_spectrum(params(0.5, 1.0, 3.0), ModelKind::qr_ren, 6);
    for (const auto& pg : degeneracy_gaps(ren)) EXPECT_LT(pg.gap, 1e-3);
}

TEST(ConvergedSpectrum, StableUnderDoublingTheTruncation) {
    for (double g : {0.5, 1.5, 3.0}) {
        const auto p = params(0.5, 1.0, g);
        const TruncationSpec t;
        const auto res = converged_spectrum(p, ModelKind::qr, 10, t);
        const auto doubled = spectrum_at(p, ModelKind::qr, 10, 2 * res.converged_dim);
        for (int i = 0; i < 10; ++i) EXPECT_NEAR(doubled[i].energy, res.levels[i], 2.0 * t.level_tol) << g << " " << i;
    }
}

TEST(ConvergedSpectrum, NoGroundStateCrossingAlongLmt1) {
    for (double wa : {0.5, 1.0}) {
        for (int i = 0; i <= 30; ++i) {
            const double g = 0.1 * i;
            const auto res = converged_spectrum(params(wa, 1.0, g), ModelKind::qr, 2);
            EXPECT_GT(res.levels[1] - res.levels[0], 0.0) << wa << " " << g;
            EXPECT_EQ(res.parity_sector[0], Sector::plus) << wa << " " << g;
        }
    }
}
