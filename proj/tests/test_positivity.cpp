#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pntomo/positivity.hpp"

using namespace pntomo;
using std::complex;

TEST_CASE("valid states pass the default scan") {
    const auto vac = GaussianState::vacuum(1);
    const auto rep = scan_tomogram_negativity(vac, 10, {-1.0, 1.0, 5});
    CHECK(rep.verdict == ScanVerdict::PassedAllScans);
    CHECK(rep.negative_witnesses.empty());
    CHECK(rep.overall_positive);

    const auto boundary = GaussianState::vacuum(1);  // sigma = E/2 is the boundary case
    CHECK(scan_tomogram_negativity(boundary, 15, {-3.0, 3.0, 9}).verdict ==
          ScanVerdict::PassedAllScans);
}

TEST_CASE("sigma = 0.4 E yields the geometric-law witness") {
    const auto bad = GaussianState::thermal(-0.1);
    const auto rep = scan_tomogram_negativity(bad, 15, {-3.0, 3.0, 9});
    CHECK(rep.verdict == ScanVerdict::NegativeWitnessFound);
    REQUIRE(!rep.negative_witnesses.empty());

    bool found = false;
    for (const auto& w : rep.negative_witnesses) {
        if (w.n == MultiIndex{1} && std::abs(w.alpha(0)) < 1e-12) {
            found = true;
            CHECK(w.omega == doctest::Approx(-0.1 / 0.81).epsilon(1e-9));
        }
        CHECK(w.omega < -1e-10);
    }
    CHECK(found);
}

TEST_CASE("combined report names the first failed inequality") {
    ScanSpec small;
    small.n_max = 6;
    small.alpha = {-1.0, 1.0, 3};

    const auto good = gaussian_positivity_report(GaussianState::vacuum(1), small);
    CHECK(good.overall_positive);
    REQUIRE(good.uncertainty_checks.has_value());
    CHECK(good.uncertainty_checks->verdict == Verdict::Valid);
    CHECK(good.first_failure.empty());

    const auto bad = gaussian_positivity_report(GaussianState::thermal(-0.1), small);
    CHECK(!bad.overall_positive);
    CHECK(bad.verdict == ScanVerdict::NegativeWitnessFound);
    CHECK(bad.first_failure == "mode 1 determinant below 1/4");

    // two-mode: second mode below the bound, first exactly at it
    Eigen::MatrixXd sig = Eigen::MatrixXd::Zero(4, 4);
    sig(0, 0) = 0.5;
    sig(1, 1) = 0.3;
    sig(2, 2) = 0.5;
    sig(3, 3) = 0.3;
    const GaussianState two(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2),
                            RealSymMatrix(sig));
    ScanSpec tiny;
    tiny.n_max = 4;
    tiny.alpha = {-1.0, 1.0, 3};
    const auto rep = gaussian_positivity_report(two, tiny);
    CHECK(!rep.overall_positive);
    REQUIRE(rep.uncertainty_checks.has_value());
    CHECK(rep.uncertainty_checks->passes_per_mode[0]);
    CHECK(!rep.uncertainty_checks->passes_per_mode[1]);
    CHECK(rep.uncertainty_checks->per_mode_det(1) == doctest::Approx(0.09));
    CHECK(rep.first_failure == "mode 2 determinant below 1/4");
    // the scan sees the negativity of the second mode as well
    CHECK(rep.verdict == ScanVerdict::NegativeWitnessFound);
}

TEST_CASE("quadrature-path scan agrees with the Hermite-path scan") {
    const auto bad = GaussianState::thermal(-0.1);
    const AlphaGridSpec grid{-1.0, 1.0, 3};
    const auto hermite_rep = scan_tomogram_negativity(bad, 4, grid);
    const auto wigner_rep = wigner_admissibility_check(bad, 4, grid);
    CHECK(wigner_rep.verdict == ScanVerdict::NegativeWitnessFound);
    REQUIRE(hermite_rep.negative_witnesses.size() == wigner_rep.negative_witnesses.size());
    for (std::size_t i = 0; i < hermite_rep.negative_witnesses.size(); ++i) {
        const auto& a = hermite_rep.negative_witnesses[i];
        const auto& b = wigner_rep.negative_witnesses[i];
        CHECK(a.n == b.n);
        CHECK(std::abs(a.alpha(0) - b.alpha(0)) == 0.0);
        CHECK(std::abs(a.omega - b.omega) <= 1e-6);
    }

    bool found = false;
    for (const auto& w : wigner_rep.negative_witnesses)
        if (w.n == MultiIndex{1} && std::abs(w.alpha(0)) < 1e-12) {
            found = true;
            CHECK(w.omega == doctest::Approx(-0.1235).epsilon(1e-3));
        }
    CHECK(found);

    const auto vac_rep = wigner_admissibility_check(GaussianState::vacuum(1), 3, grid);
    CHECK(vac_rep.verdict == ScanVerdict::PassedAllScans);
}

TEST_CASE("random strictly valid states have no witnesses") {
    std::mt19937 rng(131);
    std::uniform_real_distribution<double> ur(0.0, 0.8);
    std::uniform_real_distribution<double> uth(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> unu(1.02, 2.0);
    for (int trial = 0; trial < 6; ++trial) {
        Eigen::MatrixXd sig = unu(rng) * sigma_from_squeeze(ur(rng), uth(rng)).mat();
        const GaussianState st(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1),
                               RealSymMatrix(sig));
        const auto rep = scan_tomogram_negativity(st, 10, {-2.0, 2.0, 5});
        CHECK(rep.verdict == ScanVerdict::PassedAllScans);
    }
}

TEST_CASE("clearly invalid isotropic states expose a witness at the origin") {
    std::mt19937 rng(137);
    std::uniform_real_distribution<double> u(0.26, 0.49 - 0.01);
    for (int trial = 0; trial < 6; ++trial) {
        const double s = u(rng);  // det = s^2 < 1/4 - 0.01
        Eigen::MatrixXd sig = s * Eigen::MatrixXd::Identity(2, 2);
        const GaussianState st(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1),
                               RealSymMatrix(sig));
        const auto rep = scan_tomogram_negativity(st, 5, {0.0, 0.0, 1});
        CHECK(rep.verdict == ScanVerdict::NegativeWitnessFound);
    }
}

TEST_CASE("scans are displacement covariant") {
    // displacing the state and shifting the grid by -alpha leaves witness values unchanged
    const auto bad = GaussianState::thermal(-0.12);
    const double c = 0.5;
    DisplacementVector shift(1);
    shift(0) = {c, c};
    const auto displaced = displace_state(bad, shift);

    const auto base = scan_tomogram_negativity(bad, 5, {-1.0, 1.0, 3});
    const auto moved = scan_tomogram_negativity(displaced, 5, {-1.0 - c, 1.0 - c, 3});
    REQUIRE(base.negative_witnesses.size() == moved.negative_witnesses.size());
    for (std::size_t i = 0; i < base.negative_witnesses.size(); ++i) {
        CHECK(base.negative_witnesses[i].n == moved.negative_witnesses[i].n);
        CHECK(std::abs(base.negative_witnesses[i].omega - moved.negative_witnesses[i].omega) <=
              1e-12);
    }
}

TEST_CASE("scan report carries its spec") {
    const auto rep = scan_tomogram_negativity(GaussianState::vacuum(1), 3, {-1.0, 1.0, 3});
    CHECK(rep.scan_spec.find("|n| <= 3") != std::string::npos);
    CHECK(rep.scan_spec.find("3x3") != std::string::npos);
}
