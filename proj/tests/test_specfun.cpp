#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "sphdpp/quadrature.hpp"
#include "sphdpp/specfun.hpp"

using namespace sphdpp;
using oracles::close;

namespace {
constexpr double kEulerGamma = 0.57721566490153286061;
}

TEST_CASE("ln_gamma pinned values") {
    CHECK(std::abs(ln_gamma(1.0)) < 1e-14);
    CHECK(std::abs(ln_gamma(2.0)) < 1e-14);
    CHECK(close(ln_gamma(0.5), 0.5 * std::log(M_PI), 1e-14));
    // Gamma(10) = 9!
    CHECK(close(ln_gamma(10.0), std::log(oracles::factorial(9)), 1e-14));
    CHECK_THROWS_AS(ln_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(ln_gamma(-3.5), std::domain_error);
}

TEST_CASE("ln_gamma tracks the independent C library over [1e-3, 1e3]") {
    // std::lgamma is a wholly independent implementation.
    for (double x = 1e-3; x <= 1e3; x *= 1.11) {
        const double mine = ln_gamma(x);
        const double ref = std::lgamma(x);
        CHECK(close(mine, ref, 1e-13, 1e-13));
    }
}

TEST_CASE("digamma values and recurrence") {
    CHECK(close(digamma(1.0), -kEulerGamma, 0.0, 1e-12));
    CHECK(close(digamma(0.5), -kEulerGamma - 2.0 * std::log(2.0), 0.0, 1e-12));
    CHECK(close(digamma(2.0), 1.0 - kEulerGamma, 0.0, 1e-12));
    for (int i = 1; i <= 200; ++i) {
        const double x = 0.1 * i;
        CHECK(std::abs(digamma(x + 1.0) - digamma(x) - 1.0 / x) < 1e-12);
    }
    CHECK_THROWS_AS(digamma(0.0), std::domain_error);
}

TEST_CASE("harmonic numbers") {
    CHECK(harmonic_number(0) == 0.0);
    CHECK(close(harmonic_number(3), 11.0 / 6.0, 1e-15));
    CHECK(close(harmonic_number(50), digamma(51.0) + kEulerGamma, 0.0, 1e-12));
    CHECK_THROWS_AS(harmonic_number(-1), std::domain_error);
}

TEST_CASE("jacobi_eval basics") {
    CHECK(jacobi_eval(0.7, -0.3, 0, 0.123) == 1.0);
    // P_1^{(a,b)}(t) = (a+1) + (a+b+2)(t-1)/2
    CHECK(close(jacobi_eval(1.5, 0.5, 1, 0.3), 2.5 + 4.0 * (0.3 - 1.0) / 2.0, 1e-15));
    // Legendre specialization
    for (int n : {2, 5, 9})
        for (double t : {-0.9, -0.2, 0.4, 0.99})
            CHECK(close(jacobi_eval(0.0, 0.0, n, t), oracles::legendre(n, t), 1e-13, 1e-14));
}

TEST_CASE("jacobi value at t=1 equals the binomial") {
    for (int d = 2; d <= 10; ++d) {
        const double lambda = 0.5 * (d - 2);
        for (int L : {1, 5, 20, 80, 200}) {
            const double expected =
                std::exp(ln_gamma(L + 0.5 * d + 1.0) - ln_gamma(L + 1.0) - ln_gamma(0.5 * d + 1.0));
            CHECK(close(jacobi_eval(1.0 + lambda, lambda, L, 1.0), expected, 1e-12));
        }
    }
}

TEST_CASE("jacobi orthogonality under its own weight") {
    // d = 2: alpha = 1, beta = 0; quadrature is exact for these products.
    const QuadratureRule rule = gauss_jacobi_rule(1.0, 0.0, 16);
    const double cross = rule.integrate(
        [](double t) { return jacobi_eval(1.0, 0.0, 5, t) * jacobi_eval(1.0, 0.0, 3, t); });
    const double diag = rule.integrate([](double t) {
        const double p = jacobi_eval(1.0, 0.0, 5, t);
        return p * p;
    });
    CHECK(std::abs(cross) <= 1e-12 * diag);
}

TEST_CASE("PolyParams validates the weight exponents") {
    CHECK_NOTHROW(PolyParams(0.5, -0.5, 3));
    CHECK_THROWS_AS(PolyParams(-1.0, 0.0, 1), std::domain_error);
    CHECK_THROWS_AS(PolyParams(0.0, -1.2, 1), std::domain_error);
    CHECK_THROWS_AS(PolyParams(0.0, 0.0, -1), std::domain_error);
    const PolyParams p(1.0, 0.0, 4);
    CHECK(jacobi_eval(p, 0.37) == jacobi_eval(1.0, 0.0, 4, 0.37));
}

TEST_CASE("gegenbauer specializations") {
    CHECK(gegenbauer_eval(1.7, 0, -0.4) == 1.0);
    // C^1 = Chebyshev U
    CHECK(std::abs(gegenbauer_eval(1.0, 2, 0.5)) < 1e-15); // U_2(1/2) = 0
    for (int k : {1, 3, 6})
        for (double t : {-0.8, 0.1, 0.77})
            CHECK(close(gegenbauer_eval(1.0, k, t), oracles::chebyshev_u(k, t), 1e-13, 1e-14));
    // C^{1/2} = Legendre
    for (int k : {2, 4, 7})
        CHECK(close(gegenbauer_eval(0.5, k, 0.31), oracles::legendre(k, 0.31), 1e-13, 1e-14));
    // normalization at t = 1: binom(k + 2 lambda - 1, k)
    for (int d : {3, 5})
        for (int k : {1, 2, 5}) {
            const double lambda = 0.5 * (d - 1);
            CHECK(close(gegenbauer_eval(lambda, k, 1.0), oracles::binomial(2 * lambda + k - 1, k),
                        1e-13));
        }
}

TEST_CASE("terminating 4F3: endpoints and early termination") {
    CHECK(hyp4f3_terminating(2, 7, 0.0) == 1.0);
    CHECK(hyp4f3_terminating(2, 7, 2.0) == 1.0); // s = d endpoint
    CHECK_THROWS_AS(hyp4f3_terminating(2, 7, -0.1), std::domain_error);
    CHECK_THROWS_AS(hyp4f3_terminating(2, 7, 2.1), std::domain_error);

    // even s = 2 on d = 3: only k = 0, 1 contribute; compare the hand sum
    for (int L : {1, 4, 9}) {
        const double d = 3.0, s = 2.0;
        const double k1 = (-L) * (d + L) * (0.5 * (d - s)) * (-0.5 * s) /
                          ((0.5 * d + 1.0) * (d - 0.5 * s + L) * (-0.5 * s - L));
        CHECK(close(hyp4f3_terminating(3, L, 2.0), 1.0 + k1, 1e-14));
    }
}

TEST_CASE("terminating 4F3 approaches the Gauss 2F1 value") {
    CHECK(close(hyp4f3_terminating(3, 40, 1.5), gauss_2f1_at_one(3, 1.5), 5e-2));
    // |F_L - limit| decreasing along L in {10, 20, 40, 80}
    for (auto [d, s] : {std::pair<int, double>{3, 1.5}, {2, 0.7}, {5, 3.1}}) {
        const double limit = gauss_2f1_at_one(d, s);
        double prev = 1e9;
        for (int L : {10, 20, 40, 80}) {
            const double gap = std::abs(hyp4f3_terminating(d, L, s) - limit);
            CHECK(gap < prev);
            prev = gap;
        }
    }
}

TEST_CASE("4F3 term-ratio bounds hold termwise") {
    // 0 < (-L)_k (d+L)_k / ((d-s/2+L)_k (-s/2-L)_k) <= 1, decreasing in k.
    for (int d : {2, 3, 4, 6}) {
        for (int L : {1, 7, 25, 50}) {
            for (double s : {0.4 * d, 0.9 * d, static_cast<double>(d)}) {
                double ratio = 1.0;
                double prev_ratio = 1.0 + 1e-15;
                for (int k = 1; k <= L; ++k) {
                    ratio *= (-L + k - 1.0) * (d + L + k - 1.0) /
                             ((d - 0.5 * s + L + k - 1.0) * (-0.5 * s - L + k - 1.0));
                    CHECK(ratio > 0.0);
                    CHECK(ratio <= 1.0 + 1e-14);
                    CHECK(ratio <= prev_ratio * (1.0 + 1e-14));
                    prev_ratio = ratio;
                }
            }
        }
    }
}

TEST_CASE("2F1 sandwich for 0 < s < 2") {
    for (int d : {2, 3, 5})
        for (double s : {0.3, 0.9, 1.7}) {
            const double lower = gauss_2f1_at_one(d, s);
            for (int L : {2, 11, 33}) {
                const double f = hyp4f3_terminating(d, L, s);
                CHECK(f <= 1.0 + 1e-14);
                CHECK(f >= lower - 1e-14);
            }
        }
}

TEST_CASE("gauss_2f1_at_one pinned values") {
    CHECK(close(gauss_2f1_at_one(3, 0.0), 1.0, 1e-14));
    CHECK(close(gauss_2f1_at_one(2, 2.0), 1.0, 1e-13));
    CHECK(close(gauss_2f1_at_one(4, 2.0), 2.0 / 3.0, 1e-13));
    CHECK_THROWS_AS(gauss_2f1_at_one(3, -1.0), std::domain_error);
}

TEST_CASE("regularized incomplete beta and gamma") {
    // I_x(1,1) = x
    for (double x : {0.1, 0.5, 0.9}) CHECK(close(reg_inc_beta(1.0, 1.0, x), x, 1e-13));
    // I_x(1/2,1/2) = (2/pi) asin(sqrt(x))
    for (double x : {0.2, 0.5, 0.77})
        CHECK(close(reg_inc_beta(0.5, 0.5, x), 2.0 / M_PI * std::asin(std::sqrt(x)), 1e-12));
    // symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
    CHECK(close(reg_inc_beta(2.5, 4.0, 0.3), 1.0 - reg_inc_beta(4.0, 2.5, 0.7), 1e-13));
    // Q(1/2, x) = erfc(sqrt(x))
    for (double x : {0.2, 1.0, 4.0})
        CHECK(close(reg_gamma_q(0.5, x), std::erfc(std::sqrt(x)), 1e-12));
    // Q(1, x) = exp(-x)
    CHECK(close(reg_gamma_q(1.0, 2.5), std::exp(-2.5), 1e-13));
    // chi-square with 2 dof: sf(x) = exp(-x/2)
    CHECK(close(chi_square_sf(3.0, 2), std::exp(-1.5), 1e-13));
}

TEST_CASE("gamma_signed reflection") {
    CHECK(close(gamma_signed(4.0), 6.0, 1e-13));
    CHECK(close(gamma_signed(0.5), std::sqrt(M_PI), 1e-13));
    // Gamma(-1/2) = -2 sqrt(pi)
    CHECK(close(gamma_signed(-0.5), -2.0 * std::sqrt(M_PI), 1e-12));
    CHECK_THROWS_AS(gamma_signed(-2.0), std::domain_error);
}
