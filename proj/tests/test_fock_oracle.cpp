#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "compass/fock_oracle.hpp"
#include "compass/quadrature.hpp"
#include "compass/states.hpp"
#include "test_util.hpp"

using namespace compass;
using oracle::oracle_displacement_overlap;
using oracle::oracle_general_moment;
using oracle::oracle_number_moment;
using oracle::oracle_pnd;
using oracle::oracle_quadrature_density;
using oracle::oracle_wigner;
using oracle::oracle_x_moment;
using Catch::Approx;

namespace {
const fock_vector vacuum_vec = [] {
    std::vector<cplx> c(40, cplx{0.0, 0.0});
    c[0] = {1.0, 0.0};
    return fock_vector(std::move(c));
}();
}

TEST_CASE("truncation budget validation") {
    CHECK_THROWS_AS(oracle::truncation_budget(4, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(oracle::truncation_budget(40, 1e-3), std::invalid_argument);
    CHECK(oracle::truncation_budget(40, 1e-10).cutoff == 40);
}

TEST_CASE("general moment: coherent state mean photon number") {
    const auto v = testutil::coherent_fock(1.5, 60);
    CHECK(oracle_general_moment(v, 1, 1).real() == Approx(2.25).epsilon(1e-12));
    CHECK(oracle_general_moment(v, 0, 0).real() == Approx(1.0).epsilon(1e-14));
    // <a^k> = alpha^k on a coherent state
    CHECK(oracle_general_moment(v, 0, 2).real() == Approx(2.25).epsilon(1e-12));
    CHECK(std::abs(oracle_general_moment(v, 0, 2).imag()) < 1e-12);
}

TEST_CASE("general moment flags missing margin") {
    const auto v = testutil::coherent_fock(3.0, 14);
    CHECK_THROWS_AS(oracle_general_moment(v, 4, 4), truncation_error);
}

TEST_CASE("coherent-state Q vanishes (oracle route)") {
    const auto v = testutil::coherent_fock(cplx{1.2, -0.4}, 70);
    const double n1 = oracle_general_moment(v, 1, 1).real();
    const double n2 = oracle_general_moment(v, 2, 2).real() + n1;
    const double q = (n2 - n1 * n1) / n1 - 1.0;
    CHECK(q == Approx(0.0).margin(1e-10));
}

TEST_CASE("oracle wigner: vacuum profile") {
    CHECK(oracle_wigner(vacuum_vec, {0.0, 0.0}) == Approx(2.0 / pi).epsilon(1e-13));
    for (const cplx z : {cplx{0.5, 0.0}, cplx{0.0, 1.0}, cplx{1.0, -1.3}}) {
        CHECK(oracle_wigner(vacuum_vec, z)
              == Approx((2.0 / pi) * std::exp(-2.0 * std::norm(z))).margin(1e-12));
    }
}

TEST_CASE("oracle wigner: central parity of canonical states") {
    const auto v0 = fock_coefficients(canonical_pscs(2.0, subtraction_index(0)), 80);
    const auto v1 = fock_coefficients(canonical_pscs(2.0, subtraction_index(1)), 80);
    CHECK(oracle_wigner(v0, {0.0, 0.0}) == Approx(2.0 / pi).epsilon(1e-10));
    CHECK(oracle_wigner(v1, {0.0, 0.0}) == Approx(-2.0 / pi).epsilon(1e-10));
}

TEST_CASE("oracle wigner: parity identity at the origin") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 8; ++i) {
        const auto p = testutil::random_params(rng, 2.5);
        const auto v = fock_coefficients(p, default_fock_cutoff(p));
        long double par = 0.0L;
        for (std::size_t n = 0; n < v.size(); ++n)
            par += (n % 2 == 0 ? 1.0L : -1.0L) * std::norm(v[n]);
        CHECK(oracle_wigner(v, {0.0, 0.0})
              == Approx((2.0 / pi) * static_cast<double>(par)).margin(1e-12));
    }
}

TEST_CASE("oracle wigner guards far-field evaluations") {
    const auto v = testutil::coherent_fock(1.0, 30);
    CHECK_THROWS_AS(oracle_wigner(v, {4.0, 0.0}), truncation_error);
}

TEST_CASE("oracle pnd basics") {
    CHECK(oracle_pnd(vacuum_vec, 0) == Approx(1.0));
    CHECK(oracle_pnd(vacuum_vec, 3) == Approx(0.0).margin(1e-30));
    const auto v = fock_coefficients(canonical_pscs(5.0, subtraction_index(0)), 160);
    CHECK(oracle_pnd(v, 17) < 1e-25);
    double mass = 0.0;
    for (int n : {16, 20, 24, 28}) mass += oracle_pnd(v, n);
    CHECK(mass >= 0.5);
}

TEST_CASE("displacement overlap: identity and coherent displacement") {
    const auto v = testutil::coherent_fock(cplx{0.8, 0.3}, 60);
    CHECK(std::abs(oracle_displacement_overlap(v, {0.0, 0.0}) - cplx{1.0, 0.0}) < 1e-12);

    // <alpha|D(delta)|alpha> = e^{2 i Im(delta conj(alpha))} e^{-|delta|^2/2}
    const cplx alpha{0.8, 0.3};
    for (const cplx d : {cplx{0.3, 0.0}, cplx{0.1, -0.2}, cplx{0.0, 0.45}}) {
        const cplx got = oracle_displacement_overlap(v, d);
        const cplx want = std::polar(std::exp(-0.5 * std::norm(d)),
                                     2.0 * (d * std::conj(alpha)).imag());
        CHECK(std::abs(got - want) < 1e-11);
    }
}

TEST_CASE("displacement overlap stays within the unit disc") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
        const auto p = testutil::random_params(rng, 2.5);
        const auto v = fock_coefficients(p, default_fock_cutoff(p));
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const cplx d{u(rng), u(rng)};
        CHECK(std::abs(oracle_displacement_overlap(v, d)) <= 1.0 + 1e-10);
    }
}

TEST_CASE("displacement matrix columns reproduce displaced coherent states") {
    // sum_n D_{mn} c_n(alpha) must equal e^{(d conj(a) - conj(d) a)/2} <m|a + d>
    const cplx alpha{0.9, -0.5}, d{0.4, 0.7};
    const int rows = 60, cols = 40;
    const auto dm = oracle::detail::displacement_columns(d, rows, cols);
    const auto va = testutil::coherent_fock(alpha, cols - 1);
    const auto vshift = testutil::coherent_fock(alpha + d, rows - 1);
    const cplx phase = std::exp(0.5 * (d * std::conj(alpha) - std::conj(d) * alpha));
    for (int m = 0; m < rows; ++m) {
        cplx acc{0.0, 0.0};
        for (int n = 0; n < cols; ++n)
            acc += dm[static_cast<std::size_t>(n) * rows + m] * va[static_cast<std::size_t>(n)];
        CHECK(std::abs(acc - phase * vshift[static_cast<std::size_t>(m)]) < 1e-12);
    }
}

TEST_CASE("quadrature density: vacuum value and normalization") {
    CHECK(oracle_quadrature_density(vacuum_vec, 0.0) == Approx(1.0 / std::sqrt(pi)).epsilon(1e-13));

    const auto v = fock_coefficients(canonical_pscs(2.0, subtraction_index(0)), 80);
    const int npts = 2001;
    const double lo = -9.0, hi = 9.0;
    std::vector<double> vals(npts);
    for (int i = 0; i < npts; ++i)
        vals[static_cast<std::size_t>(i)] = oracle_quadrature_density(v, lo + (hi - lo) * i / (npts - 1));
    CHECK(simpson_1d(vals, (hi - lo) / (npts - 1)) == Approx(1.0).margin(1e-6));
}

TEST_CASE("x moments: vacuum Gaussian values") {
    for (double tp : {0.0, 0.4, 1.2}) {
        CHECK(oracle_x_moment(vacuum_vec, 2, tp) == Approx(0.25).epsilon(1e-13));
        CHECK(oracle_x_moment(vacuum_vec, 4, tp) == Approx(3.0 / 16.0).epsilon(1e-13));
        CHECK(oracle_x_moment(vacuum_vec, 6, tp) == Approx(15.0 / 64.0).epsilon(1e-13));
    }
}

TEST_CASE("x moments: coherent state matches the vacuum (displacement invariance)") {
    const auto v = testutil::coherent_fock(cplx{1.1, 0.6}, 70);
    CHECK(oracle_x_moment(v, 2, 0.3) == Approx(0.25).epsilon(1e-10));
    CHECK(oracle_x_moment(v, 4, 0.3) == Approx(3.0 / 16.0).epsilon(1e-9));
}

TEST_CASE("x moments: even central moments are strictly positive") {
    const auto v = fock_coefficients(canonical_pscs(2.0, subtraction_index(0)), 80);
    CHECK(oracle_x_moment(v, 4, 0.0) > 0.0);
}

TEST_CASE("number moments") {
    const auto v = testutil::coherent_fock(1.5, 60);
    const double lam = 2.25;
    CHECK(oracle_number_moment(v, 1) == Approx(lam).epsilon(1e-12));
    CHECK(oracle_number_moment(v, 2) == Approx(lam * lam + lam).epsilon(1e-12));
}
