#include <doctest.h>

#include <cmath>
#include <random>

#include "pntomo/reconstruction.hpp"
#include "pntomo/tomogram.hpp"

using namespace pntomo;
using std::complex;

namespace {

double offdiag_max(const ComplexMatrix& m) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (i != j) worst = std::max(worst, std::abs(m(i, j)));
    return worst;
}

}  // namespace

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
    const auto [nodes, weights] = gauss_legendre_01(8);
    for (int power = 0; power <= 15; ++power) {
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            sum += weights[i] * std::pow(nodes[i], power);
        CHECK(sum == doctest::Approx(1.0 / (power + 1)).epsilon(1e-13));
    }
}

TEST_CASE("ordering kernel: diagonal at alpha = 0, Hermitian in general") {
    const double t = -3.0;
    const auto k0 = displaced_ordering_kernel(0.0, t, 6);
    for (int j = 0; j <= 6; ++j) CHECK(k0(j, j).real() == doctest::Approx(std::pow(t, j)));
    CHECK(offdiag_max(k0) <= 1e-14);

    const auto k = displaced_ordering_kernel({0.7, -0.4}, t, 10);
    CHECK((k - k.adjoint().eval()).cwiseAbs().maxCoeff() <= 1e-10 * k.cwiseAbs().maxCoeff());
}

TEST_CASE("ordering kernel matches the explicit operator product where that is stable") {
    // small |alpha| and cutoff head-room keep the displacement-matrix route accurate
    const double s = -0.5;
    const double t = (s - 1.0) / (s + 1.0);
    const complex<double> alpha{0.4, 0.3};
    const int cutoff = 6, pad = 40;
    const ComplexMatrix d = displacement_matrix(alpha, pad);
    Eigen::VectorXcd powers(pad + 1);
    double tp = 1.0;
    for (int m = 0; m <= pad; ++m) {
        powers(m) = tp;
        tp *= t;
    }
    const ComplexMatrix direct =
        (d.leftCols(cutoff + 1).adjoint() * powers.asDiagonal() * d.leftCols(cutoff + 1));
    const ComplexMatrix closed = displaced_ordering_kernel(alpha, t, cutoff);
    CHECK((direct - closed).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("vacuum round trip") {
    const auto cfg = ReconstructionConfig::defaults(1);
    const auto rec = reconstruct_from_state(GaussianState::vacuum(1), cfg);
    CHECK(rec.rho.mat(0, 0).real() >= 0.99);
    CHECK(offdiag_max(rec.rho.mat) <= 1e-2);
    CHECK(rec.trace >= 0.98);
    CHECK(rec.trace <= 1.02);
    CHECK(rec.hermiticity_residual <= 1e-3);
}

TEST_CASE("coherent and thermal round trips") {
    const auto cfg = ReconstructionConfig::defaults(1);
    {
        Eigen::VectorXcd gamma = Eigen::VectorXcd::Constant(1, complex<double>(0.5, 0.0));
        const auto rec = reconstruct_from_state(GaussianState::coherent(gamma), cfg);
        const auto ref = coherent_density(0.5, cfg.cutoff);
        CHECK((rec.rho.mat - ref.mat).norm() <= 1e-2);
    }
    {
        const auto rec = reconstruct_from_state(GaussianState::thermal(0.5), cfg);
        const auto ref = thermal_density(0.5, cfg.cutoff);
        for (int n = 0; n <= cfg.cutoff; ++n)
            CHECK(std::abs(rec.rho.mat(n, n).real() - ref.mat(n, n).real()) <= 1e-2);
        CHECK(offdiag_max(rec.rho.mat) <= 1e-2);
        CHECK((rec.rho.mat - ref.mat).norm() <= 1e-2);
    }
}

TEST_CASE("squeezed round trip, looser for slower Fock decay") {
    const auto cfg = ReconstructionConfig::defaults(1);
    const auto st = GaussianState::squeezed(0.3, 0.0);
    const auto rec = reconstruct_from_state(st, cfg);
    const auto ref = displaced_squeezed_density(0.3, 0.0, 0.0, cfg.cutoff);
    CHECK((rec.rho.mat - ref.mat).norm() <= 2e-2);
    CHECK(roundtrip_residual(st, cfg) <= 2e-2);
}

TEST_CASE("round-trip residuals") {
    const auto cfg = ReconstructionConfig::defaults(1);
    CHECK(roundtrip_residual(GaussianState::vacuum(1), cfg) <= 1e-2);
    Eigen::VectorXcd gamma = Eigen::VectorXcd::Constant(1, complex<double>(0.5, 0.0));
    CHECK(roundtrip_residual(GaussianState::coherent(gamma), cfg) <= 1e-2);
}

TEST_CASE("reconstruction is insensitive to the ordering parameter") {
    auto c1 = ReconstructionConfig::defaults(1);
    c1.s_params(0) = -0.3;
    auto c2 = ReconstructionConfig::defaults(1);
    c2.s_params(0) = -0.6;
    const auto r1 = reconstruct_from_state(GaussianState::vacuum(1), c1);
    const auto r2 = reconstruct_from_state(GaussianState::vacuum(1), c2);
    CHECK((r1.rho.mat - r2.rho.mat).norm() <= 5e-3);
}

TEST_CASE("displaced states reconstruct through the centered grid") {
    Eigen::VectorXcd gamma = Eigen::VectorXcd::Constant(1, complex<double>(-0.8, 0.6));
    const auto st = GaussianState::coherent(gamma);
    auto cfg = ReconstructionConfig::defaults(1);
    cfg.max_radius = 4.0;  // grid center moves to -gamma, radius covers the mass
    const auto rec = reconstruct_from_state(st, cfg);
    const auto ref = coherent_density(gamma(0), cfg.cutoff);
    CHECK((rec.rho.mat - ref.mat).norm() <= 1e-2);
}

TEST_CASE("two-mode product vacuum at a small cutoff") {
    ReconstructionConfig cfg = ReconstructionConfig::defaults(2);
    cfg.cutoff = 2;
    cfg.radial_nodes = 14;
    cfg.angular_nodes = 12;
    cfg.max_radius = 3.0;
    cfg.n_max = 8;
    const auto rec = reconstruct_from_state(GaussianState::vacuum(2), cfg);
    CHECK(rec.rho.mat(0, 0).real() >= 0.95);
    CHECK(rec.trace == doctest::Approx(1.0).epsilon(0.05));
    CHECK(offdiag_max(rec.rho.mat) <= 0.05);
}

TEST_CASE("configuration validation") {
    auto cfg = ReconstructionConfig::defaults(1);
    cfg.s_params(0) = 0.5;
    CHECK_THROWS_AS(reconstruct_from_state(GaussianState::vacuum(1), cfg), ConfigInvalid);
    cfg = ReconstructionConfig::defaults(1);
    cfg.s_params(0) = -1.0;
    CHECK_THROWS_AS(reconstruct_from_state(GaussianState::vacuum(1), cfg), ConfigInvalid);
    cfg = ReconstructionConfig::defaults(1);
    cfg.radial_nodes = 0;
    CHECK_THROWS_AS(reconstruct_from_state(GaussianState::vacuum(1), cfg), ConfigInvalid);
    cfg = ReconstructionConfig::defaults(1);
    cfg.max_radius = 1.0;  // below center + 2
    CHECK_THROWS_AS(reconstruct_from_state(GaussianState::vacuum(1), cfg), ConfigInvalid);
    cfg = ReconstructionConfig::defaults(2);
    CHECK_THROWS_AS(reconstruct_from_state(GaussianState::vacuum(1), cfg), ConfigInvalid);
}
