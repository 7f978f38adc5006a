#include <doctest.h>

#include <random>

#include "pntomo/hermite.hpp"

using namespace pntomo;
using std::complex;

namespace {

ComplexMatrix random_symmetric(int m, std::mt19937& rng, double scale = 0.8) {
    std::uniform_real_distribution<double> u(-scale, scale);
    ComplexMatrix r(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= i; ++j) {
            r(i, j) = complex<double>(u(rng), u(rng));
            r(j, i) = r(i, j);
        }
    return r;
}

ComplexVector random_vector(int m, std::mt19937& rng, double scale = 0.8) {
    std::uniform_real_distribution<double> u(-scale, scale);
    ComplexVector y(m);
    for (int i = 0; i < m; ++i) y(i) = complex<double>(u(rng), u(rng));
    return y;
}

/// One-variable recurrence for the scalar parameter family: H_{n+1} = z H_n - a n H_{n-1}.
complex<double> one_var(complex<double> a, complex<double> z, int n) {
    complex<double> hm1 = 1.0;
    if (n == 0) return hm1;
    complex<double> h = z;
    for (int k = 1; k < n; ++k) {
        complex<double> next = z * h - a * static_cast<double>(k) * hm1;
        hm1 = h;
        h = next;
    }
    return h;
}

}  // namespace

TEST_CASE("order zero and first order") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        const ComplexMatrix r = random_symmetric(3, rng);
        const ComplexVector y = random_vector(3, rng);
        const auto params = HermiteParams::from_y(r, y);
        CHECK(hermite_eval(params, {0, 0, 0}) == complex<double>(1.0, 0.0));
        for (int j = 0; j < 3; ++j) {
            MultiIndex n(3, 0);
            n[static_cast<std::size_t>(j)] = 1;
            CHECK(std::abs(hermite_eval(params, n) - params.z(j)) <= 1e-14);
        }
    }
}

TEST_CASE("two-variable cross term") {
    // R = [[0, r], [r, 0]] gives H_{11} = z1 z2 - r
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const double r = u(rng);
        ComplexMatrix rm = ComplexMatrix::Zero(2, 2);
        rm(0, 1) = rm(1, 0) = r;
        const ComplexVector y = random_vector(2, rng);
        const auto params = HermiteParams::from_y(rm, y);
        const complex<double> expect = params.z(0) * params.z(1) - r;
        CHECK(std::abs(hermite_eval(params, {1, 1}) - expect) <= 1e-13);
    }
}

TEST_CASE("series oracle fixed examples") {
    ComplexMatrix r1(1, 1);
    r1(0, 0) = 1.0;
    ComplexVector y1(1);
    y1(0) = 2.0;
    // z = 2, H_2 = z^2 - R = 3; two ring radii must agree with the recurrence
    const auto a = hermite_series_oracle(r1, y1, {2}, 0.5);
    const auto b = hermite_series_oracle(r1, y1, {2}, 0.4);
    const auto rec = hermite_eval(HermiteParams::from_y(r1, y1), {2});
    CHECK(std::abs(a - rec) / std::abs(rec) <= 1e-6);
    CHECK(std::abs(b - rec) / std::abs(rec) <= 1e-6);
    CHECK(std::abs(a - b) / std::abs(a) <= 1e-6);
    CHECK(rec.real() == doctest::Approx(3.0));

    std::mt19937 rng(11);
    const ComplexMatrix r2 = random_symmetric(2, rng);
    const ComplexVector y2 = random_vector(2, rng);
    CHECK(std::abs(hermite_series_oracle(r2, y2, {0, 0})) == doctest::Approx(1.0));
    const auto cross = hermite_series_oracle(r2, y2, {2, 1});
    const auto cross_rec = hermite_eval(HermiteParams::from_y(r2, y2), {2, 1});
    CHECK(std::abs(cross - cross_rec) / std::max(1e-12, std::abs(cross_rec)) <= 1e-6);
}

TEST_CASE("series oracle agrees with the recurrence on random draws") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 8; ++trial) {
        const ComplexMatrix r = random_symmetric(2, rng);
        const ComplexVector y = random_vector(2, rng);
        const HermiteSeriesOracle oracle(r, y, {5, 5}, 0.5);
        const HermiteTable table(HermiteParams::from_y(r, y), {5, 5});
        for (int a = 0; a <= 5; ++a)
            for (int b = 0; b <= 5 - a; ++b) {
                const auto expect = oracle.coeff({a, b});
                const auto got = table.value({a, b});
                CHECK(std::abs(expect - got) / std::max(1e-12, std::abs(expect)) <= 1e-6);
            }
    }
}

TEST_CASE("series oracle degree cap") {
    ComplexMatrix r(1, 1);
    r(0, 0) = 0.5;
    ComplexVector y(1);
    y(0) = 1.0;
    CHECK_THROWS_AS(hermite_series_oracle(r, y, {7}), DegreeCapExceeded);
}

TEST_CASE("permutation symmetry") {
    std::mt19937 rng(23);
    const ComplexMatrix r = random_symmetric(3, rng);
    const ComplexVector y = random_vector(3, rng);
    const auto params = HermiteParams::from_y(r, y);

    // permute (0 1 2) -> (2 0 1) everywhere
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(3);
    perm.indices() << 2, 0, 1;
    const ComplexMatrix rp = perm.transpose() * r * perm;
    ComplexVector zp(3);
    for (int i = 0; i < 3; ++i) zp(i) = params.z(perm.indices()(i));
    HermiteParams permuted(rp, zp);

    const MultiIndex n{2, 1, 3};
    MultiIndex np(3);
    for (int i = 0; i < 3; ++i) np[static_cast<std::size_t>(i)] = n[static_cast<std::size_t>(perm.indices()(i))];
    const auto a = hermite_eval(params, n);
    const auto b = hermite_eval(permuted, np);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
}

TEST_CASE("diagonal R factorizes into one-variable polynomials") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    ComplexMatrix r = ComplexMatrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) r(i, i) = complex<double>(u(rng), u(rng));
    const ComplexVector y = random_vector(3, rng);
    const auto params = HermiteParams::from_y(r, y);
    const MultiIndex n{3, 2, 4};
    complex<double> product = 1.0;
    for (int k = 0; k < 3; ++k)
        product *= one_var(r(k, k), params.z(k), n[static_cast<std::size_t>(k)]);
    const auto joint = hermite_eval(params, n);
    CHECK(std::abs(joint - product) <= 1e-10 * std::max(1.0, std::abs(product)));
}

TEST_CASE("paired structure keeps diagonal-doubled values real") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (int trial = 0; trial < 10; ++trial) {
        const complex<double> a{u(rng), u(rng)};
        const double b = u(rng);
        ComplexMatrix r(2, 2);
        r(0, 0) = a;
        r(1, 1) = std::conj(a);
        r(0, 1) = r(1, 0) = b;
        const complex<double> w{u(rng), u(rng)};
        ComplexVector z(2);
        z << w, std::conj(w);
        HermiteParams params(r, z);
        for (int n = 0; n <= 6; ++n) {
            const auto h = hermite_eval(params, {n, n});
            CHECK(std::abs(h.imag()) <= 1e-10 * std::max(1e-30, std::abs(h)));
        }
    }
}

TEST_CASE("argument validation") {
    ComplexMatrix r = ComplexMatrix::Zero(2, 2);
    ComplexVector z = ComplexVector::Zero(2);
    HermiteParams params(r, z);
    CHECK_THROWS_AS(hermite_eval(params, {1, 2, 3}), DimensionMismatch);
    CHECK_THROWS_AS(hermite_eval(params, {60, 60}), DegreeCapExceeded);
    CHECK_THROWS_AS(hermite_eval(params, {-1, 0}), std::invalid_argument);

    ComplexMatrix bad(2, 2);
    bad << 0.0, 1.0, 0.0, 0.0;  // not symmetric
    CHECK_THROWS_AS(HermiteParams(bad, z), std::invalid_argument);
}

TEST_CASE("physicists' Hermite polynomials") {
    CHECK(hermite_physicists(0, 0.3).real() == doctest::Approx(1.0));
    CHECK(hermite_physicists(1, 0.3).real() == doctest::Approx(0.6));
    CHECK(hermite_physicists(2, 0.5).real() == doctest::Approx(4.0 * 0.25 - 2.0));
    CHECK(hermite_physicists(3, 0.5).real() == doctest::Approx(8.0 * 0.125 - 12.0 * 0.5));
    CHECK(hermite_physicists(5, 0.0).real() == doctest::Approx(0.0));
}
