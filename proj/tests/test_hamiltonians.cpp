#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "rabi/grid_oracle.hpp"
#include "rabi/hamiltonians.hpp"
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

std::vector<double> lowest(const OperatorMatrix& h, int k) {
    const auto pairs = eigensolve(h, k);
    return {pairs.values.data(), pairs.values.data() + pairs.values.size()};
}

} // namespace

TEST(HQr, UncoupledSpectrumIsQubitPlusOscillator) {
    const auto p = params(0.5, 1.0, 0.0);
    const auto got = lowest(ham::h_qr(p, 20), 8);
    std::vector<double> want;
    for (int m = 0; m < 10; ++m) {
        want.push_back(m + 0.5 - 0.25);
        want.push_back(m + 0.5 + 0.25);
    }
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 8; ++i) EXPECT_NEAR(got[i], want[i], 1e-12) << i;
}

TEST(HQr, HbarScalesAllEnergies) {
    auto p = params(0.7, 1.3, 0.4);
    const auto base = lowest(ham::h_qr(p, 40), 6);
    p.hbar = 2.5;
    // every term carries exactly one factor of hbar
    const auto scaled = lowest(ham::h_qr(p, 40), 6);
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(scaled[i], 2.5 * base[i], 1e-10);
}

TEST(HQr, RenormalizedShiftIsExact) {
    const auto p = params(0.5, 1.0, 1.3);
    const Matrix diff = ham::h_qr_ren(p, 30).entries() - ham::h_qr(p, 30).entries();
    EXPECT_LT(max_abs(diff - self_energy_shift(p) * Matrix::Identity(60, 60)), 1e-14);
    EXPECT_NEAR(self_energy_shift(p), 1.69, 1e-14);
}

TEST(HQr, CommutesExactlyWithParity) {
    for (double g : {0.0, 0.4, 2.0}) {
        const auto p = params(0.5, 1.0, g);
        EXPECT_EQ(commutator_norm(ham::h_qr(p, 24), ham::parity(24)), 0.0) << g;
        auto pa = p;
        pa.a2_coeff = 0.5;
        EXPECT_EQ(commutator_norm(ham::h_qr(pa, 24), ham::parity(24)), 0.0) << g;
    }
}

TEST(HTransformed, CommutesExactlyWithTransformedParity) {
    for (double g : {0.0, 0.5, 1.0, 3.0}) {
        const auto p = params(0.5, 1.0, g);
        EXPECT_EQ(commutator_norm(ham::h_transformed(p, 40, false), ham::parity_transformed(40)), 0.0) << g;
        EXPECT_EQ(commutator_norm(ham::h_transformed(p, 40, true), ham::parity_transformed(40)), 0.0) << g;
    }
}

TEST(HTransformed, FreeBosonCommutesWithBothSymmetries) {
    const auto p = params(0.5, 1.0, 1.0);
    const auto hb = ham::h_free_boson(p, 16);
    EXPECT_EQ(commutator_norm(hb, ham::parity_transformed(16)), 0.0);
    EXPECT_EQ(commutator_norm(hb, ham::qubit_flip(16)), 0.0);
}

TEST(HTransformed, QubitFlipIsBrokenByTunneling) {
    const auto p = params(0.5, 1.0, 1.0);
    EXPECT_GT(commutator_norm(ham::h_transformed(p, 16, true), ham::qubit_flip(16)), 1e-3);
}

TEST(HTransformed, PolaronLimitIsShiftedOscillatorPair) {
    // omega_a = 0: H~ = 1 ⊗ hbar omega_c (N + 1/2) - hbar g^2 / omega_c, every level doubly degenerate.
    const auto p = params(0.0, 1.0, 1.2);
    const auto got = lowest(ham::h_transformed(p, 30, false), 6);
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(got[i], (i / 2) + 0.5 - 1.44, 1e-12) << i;
    // the lab-frame operator has the same displaced-oscillator spectrum
    const auto lab = lowest(ham::h_qr(p, 120), 6);
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(lab[i], got[i], 1e-9) << i;
}

TEST(HTransformed, RejectsMassTerm) {
    auto p = params(0.5, 1.0, 1.0);
    p.a2_coeff = 0.5;
    EXPECT_THROW(ham::h_transformed(p, 20, true), DomainError);
    EXPECT_NO_THROW(ham::h_qr(p, 20));
}

TEST(Unitaries, QubitRotationMapsSigmaZToMinusSigmaX) {
    const Matrix u = ham::u0().entries();
    EXPECT_LT(max_abs(u.adjoint() * ops::sigma_z().entries() * u + ops::sigma_x().entries()), 1e-15);
    EXPECT_LT(max_abs(u.adjoint() * u - Matrix::Identity(2, 2)), 1e-15);
}

TEST(Unitaries, TotalUnitaryIsUnitaryOnTheTruncatedSpace) {
    const auto p = params(0.5, 1.0, 1.5);
    const Matrix u = ham::total_unitary(p, 40).entries();
    EXPECT_LT(max_abs(u.adjoint() * u - Matrix::Identity(80, 80)), 1e-11);
}

TEST(Unitaries, TransformedParityConjugatesExactly) {
    // U_phi^dag P~ U_phi = P~ in the truncated space: the displacement blocks are exchanged by -sigma_x
    // and reflected by (-1)^N.
    const auto p = params(0.5, 1.0, 2.0);
    const int n = 36;
    const Matrix u = ham::u_phi(p, n).entries();
    const Matrix pt = ham::parity_transformed(n).entries();
    EXPECT_LT(max_abs(u.adjoint() * pt * u - pt), 1e-12);
}

TEST(Unitaries, FourierRotationMapsPositionToMomentum) {
    const auto dev = oracle::fourier_deviation(30, params(1.0, 1.7, 0.0));
    EXPECT_LT(dev.projected, 1e-12);
    // The diagonal phase conjugation is exact on the whole truncated space as well.
    EXPECT_LT(dev.full, 1e-12);
    EXPECT_LT(oracle::fourier_check(30), 1e-12);
}

class ConjugationOracle : public ::testing::TestWithParam<double> {};

TEST_P(ConjugationOracle, ExplicitConjugationReproducesTransformedLevels) {
    const auto p = params(0.5, 1.0, GetParam());
    const int n = 140;
    const int inner = 90;
    const Matrix u = ham::total_unitary(p, n).entries();
    const Matrix conj = u.adjoint() * ham::h_qr(p, n).entries() * u;
    // Compare on the boson states well below the cutoff where the truncated products are accurate.
    Matrix block(2 * inner, 2 * inner);
    block << conj.block(0, 0, inner, inner), conj.block(0, n, inner, inner), conj.block(n, 0, inner, inner),
        conj.block(n, n, inner, inner);
    const OperatorMatrix hc{0.5 * (block + block.adjoint()), Structure::hermitian};
    const auto want = lowest(hc, 8);
    const auto got = lowest(ham::h_transformed(p, inner, false), 8);
    for (int i = 0; i < 8; ++i) EXPECT_NEAR(got[i], want[i], 1e-6) << i;
}

INSTANTIATE_TEST_SUITE_P(Couplings, ConjugationOracle, ::testing::Values(0.5, 1.0, 2.0));

TEST(ModelKindNames, RoundTrip) {
    for (auto k : {ModelKind::qr, ModelKind::qr_ren, ModelKind::transformed, ModelKind::transformed_ren,
                   ModelKind::free_boson}) {
        EXPECT_EQ(parse_model_kind(to_string(k)), k);
    }
    EXPECT_THROW(parse_model_kind("dicke"), DomainError);
}

TEST(ModelParamsValidation, RejectsUnphysicalValues) {
    EXPECT_THROW(ham::h_qr(params(0.5, 0.0, 1.0), 8), DomainError);
    EXPECT_THROW(ham::h_qr(params(-0.5, 1.0, 1.0), 8), DomainError);
    EXPECT_THROW(ham::h_qr(params(0.5, 1.0, -1.0), 8), DomainError);
}
