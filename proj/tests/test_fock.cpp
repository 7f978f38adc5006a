#include <doctest.h>

#include <cmath>
#include <random>

#include "pntomo/fock.hpp"
#include "pntomo/tomogram.hpp"

using namespace pntomo;
using std::complex;

namespace {

DisplacementVector one_alpha(complex<double> a) {
    DisplacementVector v(1);
    v(0) = a;
    return v;
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

}  // namespace

TEST_CASE("Laguerre recurrence") {
    CHECK(laguerre_eval(0, 3.7) == doctest::Approx(1.0));
    CHECK(laguerre_eval(1, 3.0) == doctest::Approx(-2.0));
    CHECK(laguerre_eval(2, 2.0) == doctest::Approx(0.5 * 4.0 - 2.0 * 2.0 + 1.0));
    CHECK_THROWS_AS(laguerre_eval(-1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(laguerre_eval(513, 0.0), std::invalid_argument);
}

TEST_CASE("associated Laguerre against the binomial sum") {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(0.0, 4.0);
    for (int n = 0; n <= 5; ++n)
        for (int k = 0; k <= 4; ++k) {
            const double x = u(rng);
            double expect = 0.0;
            for (int r = 0; r <= n; ++r) {
                double term = std::exp(log_factorial(n + k) - log_factorial(n - r) -
                                       log_factorial(k + r) - log_factorial(r));
                expect += ((r % 2) ? -1.0 : 1.0) * term * std::pow(x, r);
            }
            CHECK(laguerre_assoc_eval(n, k, x) == doctest::Approx(expect).epsilon(1e-12));
        }
}

TEST_CASE("displacement matrix fixed values") {
    const ComplexMatrix id = displacement_matrix(0.0, 6);
    CHECK((id - ComplexMatrix::Identity(7, 7)).cwiseAbs().maxCoeff() <= 1e-14);

    const ComplexMatrix d1 = displacement_matrix(1.0, 12);
    CHECK(d1(0, 0).real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));

    const complex<double> alpha{0.7, 0.2};
    const ComplexMatrix d = displacement_matrix(alpha, 12);
    const double a2 = std::norm(alpha);
    for (int n = 0; n <= 12; ++n) {
        const complex<double> expect =
            std::exp(-0.5 * a2) * std::pow(alpha, n) / std::sqrt(std::exp(log_factorial(n)));
        CHECK(std::abs(d(n, 0) - expect) <= 1e-12);
    }
}

TEST_CASE("displacement matrix unitarity and truncation warning") {
    // Rows near the cutoff keep real weight above it (displaced number states
    // spread by ~|alpha| sqrt(n)), so the residual of the truncated product
    // decays block by block: 1e-8 holds up to index M/2 at |alpha| = 0.5.
    const ComplexMatrix d = displacement_matrix({0.5, 0.0}, 16);
    const ComplexMatrix dm = displacement_matrix({-0.5, 0.0}, 16);
    const ComplexMatrix prod = d * dm;
    const ComplexMatrix tight = prod.topLeftCorner(8, 8) - ComplexMatrix::Identity(8, 8);
    CHECK(tight.cwiseAbs().maxCoeff() <= 1e-8);
    const ComplexMatrix loose = prod.topLeftCorner(13, 13) - ComplexMatrix::Identity(13, 13);
    CHECK(loose.cwiseAbs().maxCoeff() <= 2e-2);

    // matrix elements themselves are cutoff independent; with head-room the
    // product is unitary to machine precision
    const ComplexMatrix big = displacement_matrix({0.5, 0.0}, 40);
    CHECK(std::abs(big(12, 12) - d(12, 12)) == 0.0);
    const ComplexMatrix clean =
        (big * displacement_matrix({-0.5, 0.0}, 40)).topLeftCorner(13, 13);
    CHECK((clean - ComplexMatrix::Identity(13, 13)).cwiseAbs().maxCoeff() <= 1e-12);

    WarningLog log;
    displacement_matrix({3.0, 0.0}, 16, &log);  // |alpha|^2 = 9 > 4
    REQUIRE(!log.empty());
    CHECK(log.entries.front().code == "TruncationRisk");
}

TEST_CASE("reference densities") {
    const auto zero = coherent_density(0.0, 8);
    CHECK(std::abs(zero.mat(0, 0) - 1.0) <= 1e-14);
    CHECK(zero.mat.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-12));

    const complex<double> gamma{0.6, -0.3};
    const auto coh = coherent_density(gamma, 14);
    const double g2 = std::norm(gamma);
    for (int m = 0; m <= 14; ++m)
        for (int n = 0; n <= 14; ++n) {
            const complex<double> expect = std::exp(-g2) * std::pow(gamma, m) *
                                           std::pow(std::conj(gamma), n) /
                                           std::sqrt(std::exp(log_factorial(m) + log_factorial(n)));
            CHECK(std::abs(coh.mat(m, n) - expect) <= 1e-10);
        }
    CHECK(min_eigenvalue(coh) >= -1e-10);

    const auto th = thermal_density(1.0, 10);
    CHECK(th.mat(0, 0).real() == doctest::Approx(0.5));
    CHECK(th.mat(1, 1).real() == doctest::Approx(0.25));
    CHECK(th.mat(2, 2).real() == doctest::Approx(0.125));
    CHECK(trace_deficit(th) == doctest::Approx(std::pow(0.5, 11)).epsilon(1e-9));

    const auto sq = displaced_squeezed_density(0.5, 0.0, 0.0, 12);
    for (int n = 1; n <= 12; n += 2) CHECK(std::abs(sq.mat(n, n)) <= 1e-14);
    CHECK(min_eigenvalue(sq) >= -1e-10);
}

TEST_CASE("squeezed reference matches the quadrature oracle") {
    const double r = 0.4, theta = 0.9;
    const auto rho = displaced_squeezed_density(r, theta, 0.0, 24);
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(1);
    const GaussianState st(zero, zero, sigma_from_squeeze(r, theta));
    for (int n = 0; n <= 6; ++n) {
        const double via_fock = tomogram_from_fock(rho, {n}, one_alpha(0.0));
        const double via_quad = tomogram_by_quadrature(st, {n}, one_alpha(0.0));
        CHECK(std::abs(via_fock - via_quad) <= 1e-8);
    }
}

TEST_CASE("tomogram from Fock representation") {
    const auto vac = coherent_density(0.0, 16);
    CHECK(tomogram_from_fock(vac, {0}, one_alpha(0.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tomogram_from_fock(vac, {1}, one_alpha(1.0)) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-8));

    const auto th = thermal_density(1.0, 24);
    CHECK(tomogram_from_fock(th, {1}, one_alpha(0.0)) == doctest::Approx(0.25).epsilon(1e-8));

    // orientation pin: a displaced coherent state is asymmetric in alpha
    const auto coh = coherent_density({0.5, 0.0}, 24);
    Eigen::VectorXcd gamma = Eigen::VectorXcd::Constant(1, complex<double>(0.5, 0.0));
    for (int n = 0; n <= 4; ++n) {
        const double expect = coherent_tomogram(gamma, {n}, one_alpha({0.3, 0.0}));
        CHECK(std::abs(tomogram_from_fock(coh, {n}, one_alpha({0.3, 0.0})) - expect) <= 1e-9);
    }
}

TEST_CASE("quadrature fixed values") {
    const auto vac = GaussianState::vacuum(1);
    CHECK(std::abs(tomogram_by_quadrature(vac, {0}, one_alpha(0.0)) - 1.0) <= 1e-7);

    const auto th = GaussianState::thermal(1.0);
    CHECK(std::abs(tomogram_by_quadrature(th, {2}, one_alpha(0.0)) - 0.125) <= 1e-6);

    const auto vac2 = GaussianState::vacuum(2);
    DisplacementVector zero2 = DisplacementVector::Zero(2);
    const QuadratureGrid coarse2{0.1, 6.5};
    CHECK(std::abs(tomogram_by_quadrature(vac2, {0, 1}, zero2, coarse2)) <= 1e-7);
    CHECK(std::abs(tomogram_by_quadrature(vac2, {0, 0}, zero2, coarse2) - 1.0) <= 1e-7);
}

TEST_CASE("quadrature refinement") {
    const auto th = GaussianState::thermal(0.7);
    // halving the spacing at acceptance settings moves the value below 1e-7
    const double coarse = tomogram_by_quadrature(th, {3}, one_alpha({0.4, 0.2}), {0.05, 8.0});
    const double fine = tomogram_by_quadrature(th, {3}, one_alpha({0.4, 0.2}), {0.025, 8.0});
    CHECK(std::abs(coarse - fine) <= 1e-7);

    CHECK_NOTHROW(tomogram_by_quadrature_checked(th, {1}, one_alpha(0.0), {0.05, 8.0}));
    CHECK_THROWS_AS(tomogram_by_quadrature_checked(th, {1}, one_alpha(0.0), {1.0, 8.0}),
                    GridTooCoarse);
}

TEST_CASE("dual oracles agree") {
    struct Case {
        FockMatrix rho;
        GaussianState state;
    };
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(1);
    const Case cases[] = {
        {thermal_density(1.0, 28), GaussianState::thermal(1.0)},
        {displaced_squeezed_density(0.5, 0.7, 0.0, 28),
         GaussianState(zero, zero, sigma_from_squeeze(0.5, 0.7))},
        {coherent_density({0.5, -0.4}, 28),
         GaussianState::coherent(Eigen::VectorXcd::Constant(1, complex<double>(0.5, -0.4)))},
    };
    const complex<double> alphas[] = {{0.0, 0.0}, {0.5, 0.3}, {-1.0, 0.0}};
    for (const auto& c : cases) {
        for (const auto& a : alphas) {
            for (int n = 0; n <= 10; n += 2) {
                const double via_quad = tomogram_by_quadrature(c.state, {n}, one_alpha(a));
                const double via_fock = tomogram_from_fock(c.rho, {n}, one_alpha(a));
                CHECK(std::abs(via_quad - via_fock) <= 1e-6);
            }
        }
    }
}

TEST_CASE("tomogram trace matches the density trace") {
    const auto th = thermal_density(1.0, 24);
    const auto alpha = one_alpha({0.3, 0.0});
    double sum = 0.0;
    for (int n = 0; n <= 24; ++n) sum += tomogram_from_fock(th, {n}, alpha);
    CHECK(std::abs(sum - th.mat.trace().real()) <= 1e-6);
}

TEST_CASE("smallest eigenvalue") {
    CHECK(std::abs(min_eigenvalue(coherent_density(0.0, 8))) <= 1e-12);

    const auto th = thermal_density(1.0, 16);
    CHECK(min_eigenvalue(th) == doctest::Approx(std::pow(0.5, 17)).epsilon(1e-9));
    CHECK(min_eigenvalue(th) > 0.0);

    const auto pseudo = thermal_density(-0.1, 16);
    CHECK(min_eigenvalue(pseudo) < 0.0);
}

TEST_CASE("tensor product bookkeeping") {
    const auto vac = coherent_density(0.0, 3);
    const auto th = thermal_density(0.5, 3);
    const auto prod = tensor_product(vac, th);
    CHECK(prod.modes == 2);
    CHECK(prod.dim() == 16);
    CHECK(prod.mat(prod.index_of({0, 1}), prod.index_of({0, 1})).real() ==
          doctest::Approx(th.mat(1, 1).real()));
    CHECK_THROWS_AS(prod.index_of({0}), DimensionMismatch);
    CHECK_THROWS_AS(prod.index_of({0, 5}), std::out_of_range);
}
