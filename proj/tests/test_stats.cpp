#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "sphdpp/energy.hpp"
#include "sphdpp/errors.hpp"
#include "sphdpp/stats.hpp"

using namespace sphdpp;
using oracles::close;

TEST_CASE("cap measure") {
    for (int d : {2, 3, 5}) {
        CHECK(close(cap_measure(d, M_PI / 2.0), 0.5, 1e-13));
        CHECK(close(cap_measure(d, M_PI - 1e-9), 1.0, 1e-6));
        CHECK(cap_measure(d, 1e-6) > 0.0);
    }
    // small-radius series on S^2: mu = (1 - cos r)/2 = r^2/4 (1 + O(r^2))
    const double r = 0.05;
    CHECK(close(cap_measure(2, r), r * r / 4.0, 1e-2));
    CHECK_THROWS_AS(cap_measure(2, 0.0), std::domain_error);
    CHECK_THROWS_AS(cap_measure(2, M_PI), std::domain_error);
    // inverse
    for (double mu : {0.1, 0.3, 0.5, 0.9})
        for (int d : {2, 4})
            CHECK(close(cap_measure(d, cap_radius_for_measure(d, mu)), mu, 1e-10));
}

TEST_CASE("count_in_cap edges") {
    const PointConfiguration x = sample_uniform(2, 100, {6, 0});
    const CapSpec everything = CapSpec::polar_with_measure(2, 0.999999);
    CHECK(count_in_cap(x, everything) == 100);
    const PointConfiguration empty(2, 0);
    CHECK(count_in_cap(empty, everything) == 0);
    CHECK_THROWS_AS(CapSpec({0.0, 0.0, 0.5}, 1.0), std::domain_error);
    CHECK_THROWS_AS(CapSpec({0.0, 0.0, 1.0}, 0.0), std::domain_error);
}

TEST_CASE("semianalytic cap variance: symmetry and degenerate limits") {
    const HarmonicEnsemble e(2, 6);
    const double theta = cap_radius_for_measure(2, 0.3);
    const CapSpec cap = CapSpec::polar_with_measure(2, 0.3);
    const CapSpec mirror({0.0, 0.0, 1.0}, M_PI - theta);
    const double v = variance_cap_semianalytic(e, cap, 128);
    const double w = variance_cap_semianalytic(e, mirror, 128);
    CHECK(close(v, w, 1e-5));
    // a whole-sphere cap has deterministic count
    const CapSpec nearly_everything({0.0, 0.0, 1.0}, M_PI - 1e-6);
    CHECK(variance_cap_semianalytic(e, nearly_everything, 64) < 1e-4);
}

TEST_CASE("semianalytic cap variance against Monte Carlo") {
    const HarmonicEnsemble e(2, 4);
    const CapSpec cap = CapSpec::polar_with_measure(2, 0.3);
    const double reference = variance_cap_semianalytic(e, cap, 96);
    const StatReport mc = variance_cap_mc(e, cap, 1200, {2025, 0});
    REQUIRE(mc.standard_error.has_value());
    CHECK(std::abs(mc.estimate - reference) < 3.0 * *mc.standard_error);
    // minimal trial count still yields a finite report
    const StatReport tiny = variance_cap_mc(e, cap, 2, {2025, 9});
    CHECK(std::isfinite(tiny.estimate));
    CHECK(std::isfinite(*tiny.standard_error));
    CHECK_THROWS_AS(variance_cap_mc(e, cap, 1, {2025, 0}), std::domain_error);
    // a cap covering (almost) the whole sphere has deterministic counts
    const CapSpec everything = CapSpec::polar_with_measure(2, 1.0 - 1e-12);
    CHECK(variance_cap_mc(e, everything, 50, {2025, 50}).estimate == 0.0);
    // repulsion keeps counts sub-Poissonian at larger L too
    const HarmonicEnsemble bigger(2, 12);
    const StatReport big_mc = variance_cap_mc(bigger, cap, 400, {2025, 99});
    CHECK(big_mc.estimate < static_cast<double>(bigger.point_count()) * 0.3);
    // determinantal counts are sub-Poissonian
    CHECK(reference < static_cast<double>(e.point_count()) * 0.3);
}

TEST_CASE("coordinate-statistic variance") {
    // L = 0: single uniform point, Var(x_i) = 1/(d+1)
    for (int d : {2, 3, 5})
        CHECK(close(variance_coordinate_statistic(HarmonicEnsemble(d, 0)), 1.0 / (d + 1.0), 1e-12));

    // growth ~ L^{d-1}: the ratio to L stays within fixed positive bounds
    std::vector<double> ratio;
    for (int L : {8, 16, 32})
        ratio.push_back(variance_coordinate_statistic(HarmonicEnsemble(2, L)) / L);
    for (double r : ratio) {
        CHECK(r > 0.05);
        CHECK(r < 10.0);
    }
    CHECK(ratio[2] / ratio[0] < 2.0); // no log factor in the smooth case

    // Monte Carlo agreement at d = 2, L = 4 for the last coordinate
    const HarmonicEnsemble e(2, 4);
    const int trials = 1200;
    double sum = 0.0, sumsq = 0.0;
    for (int t = 0; t < trials; ++t) {
        const auto x = sample_dpp(e, {31, static_cast<std::uint64_t>(t)});
        double stat = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) stat += x.point(i)[2];
        sum += stat;
        sumsq += stat * stat;
    }
    const double mean = sum / trials;
    const double var = (sumsq - trials * mean * mean) / (trials - 1.0);
    const double se = var * std::sqrt(2.0 / (trials - 1.0)); // normal-ish approx
    CHECK(std::abs(var - variance_coordinate_statistic(e)) < 3.0 * se);
}

TEST_CASE("cap counts track the first intensity across sizes and ensembles") {
    // E n_A = n mu(A), three cap sizes x three (d, L) pairs
    const int trials = 400;
    for (auto [d, L] : {std::pair{2, 4}, {2, 6}, {3, 3}}) {
        const HarmonicEnsemble e(d, L);
        for (double mu : {0.1, 0.3, 0.5}) {
            const CapSpec cap = CapSpec::polar_with_measure(d, mu);
            double sum = 0.0, sumsq = 0.0;
            for (int t = 0; t < trials; ++t) {
                const auto x = sample_dpp(
                    e, {static_cast<std::uint64_t>(1000 * d + L), static_cast<std::uint64_t>(t)});
                const double c = static_cast<double>(count_in_cap(x, cap));
                sum += c;
                sumsq += c * c;
            }
            const double mean = sum / trials;
            const double var = (sumsq - trials * mean * mean) / (trials - 1.0);
            const double target = static_cast<double>(e.point_count()) * mu;
            CHECK(std::abs(mean - target) < 3.0 * std::sqrt(var / trials));
            CHECK(var < mean); // sub-Poissonian everywhere tested
        }
    }
}

TEST_CASE("discrepancy estimate: single point, monotonicity") {
    const PointConfiguration lonely = sample_uniform(2, 1, {3, 0});
    CHECK(discrepancy_estimate(lonely, 4096, {17, 0}) > 0.95);

    const PointConfiguration x = sample_uniform(2, 128, {8, 0});
    double prev = 0.0;
    for (std::uint64_t probes : {64u, 256u, 1024u, 4096u}) {
        const double est = discrepancy_estimate(x, probes, {17, 0});
        CHECK(est >= prev);
        prev = est;
    }
    CHECK(prev > 0.0);
    CHECK(prev < 1.0);
}

TEST_CASE("discrepancy of the harmonic ensemble beats uniform points") {
    // small version of the ordering experiment (n = 81)
    const HarmonicEnsemble e(2, 8);
    std::vector<double> dpp_est, uni_est;
    for (std::uint64_t t = 0; t < 6; ++t) {
        dpp_est.push_back(
            discrepancy_estimate(sample_dpp(e, {404, t}), 2048, {505, t}));
        uni_est.push_back(
            discrepancy_estimate(sample_uniform(2, 81, {606, t}), 2048, {505, 100 + t}));
    }
    std::sort(dpp_est.begin(), dpp_est.end());
    std::sort(uni_est.begin(), uni_est.end());
    CHECK(dpp_est[3] < uni_est[3]); // medians
}

TEST_CASE("separation and close pairs") {
    PointConfiguration antipodal(2, 2);
    antipodal.point(0)[2] = 1.0;
    antipodal.point(1)[2] = -1.0;
    CHECK(close(separation(antipodal), 2.0, 1e-15));
    CHECK_THROWS_AS(separation(PointConfiguration(2, 1)), std::domain_error);

    // n-th roots of unity: separation 2 sin(pi/n)
    const std::size_t n = 9;
    PointConfiguration roots(2, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double a = 2.0 * M_PI * k / n;
        roots.point(k)[0] = std::cos(a);
        roots.point(k)[1] = std::sin(a);
    }
    CHECK(close(separation(roots), 2.0 * std::sin(M_PI / n), 1e-13));

    CHECK(close_pair_count(roots, 0.0) == 0);
    CHECK(close_pair_count(roots, 2.0) == n * (n - 1) / 2);
    // sep <= t implies at least one close pair at t
    const double sep = separation(roots);
    CHECK(close_pair_count(roots, sep) >= 1);
    const PointConfiguration random = sample_uniform(3, 60, {21, 0});
    CHECK(close_pair_count(random, separation(random)) >= 1);
}

TEST_CASE("close-pair expectation bound") {
    const HarmonicEnsemble e(2, 8);
    CHECK(expected_close_pairs_bound(e, 0.0) == 0.0);
    const double threshold = (2.0 + 6.0) / ((2.0 * 8 + 2) * 8);
    CHECK(expected_close_pairs_bound(e, threshold) > 0.0);
    CHECK_THROWS_AS(expected_close_pairs_bound(e, threshold * 1.01), std::domain_error);

    // alpha-scaled form approaches alpha^4/64 on S^2: the ratio to it is
    // L(L+2)/(L+1)^2, so pick the largest L keeping alpha = 1 in-domain
    const int L = 16;
    const HarmonicEnsemble big(2, L);
    const double n = static_cast<double>(big.point_count());
    for (double alpha : {0.5, 1.0}) {
        const double t = alpha * std::pow(n, -0.75);
        REQUIRE(t <= (2.0 + 6.0) / ((2.0 * L + 2) * L));
        const double bound = expected_close_pairs_bound(big, t);
        CHECK(close(bound, std::pow(alpha, 4) / 64.0, 1e-2));
    }
}

TEST_CASE("close-pair bound dominates the exact expectation and the MC mean") {
    const HarmonicEnsemble e(2, 8); // n = 81
    const double threshold = (2.0 + 6.0) / ((2.0 * 8 + 2) * 8);
    const double t = 0.8 * threshold;
    const double bound = expected_close_pairs_bound(e, t);
    const double exact = oracles::close_pairs_expectation(e, t);
    CHECK(exact <= bound);
    CHECK(exact > 0.9 * bound); // the bound is nearly tight at this scale

    double sum = 0.0, sumsq = 0.0;
    const int trials = 300;
    for (int trial = 0; trial < trials; ++trial) {
        const double g = static_cast<double>(
            close_pair_count(sample_dpp(e, {777, static_cast<std::uint64_t>(trial)}), t));
        sum += g;
        sumsq += g * g;
    }
    const double mean = sum / trials;
    const double var = (sumsq - trials * mean * mean) / (trials - 1.0);
    const double se = std::sqrt(std::max(var, 1e-12) / trials);
    CHECK(mean <= bound + 3.0 * se);
    CHECK(std::abs(mean - exact) <= 3.0 * se + 1e-9);
}

TEST_CASE("jacobi bound check") {
    // u = 0 endpoint is an equality; violations must stay at rounding level
    for (auto [d, L] : {std::pair{2, 10}, {5, 25}, {6, 30}, {3, 1}}) {
        const JacobiBoundReport report = jacobi_bound_check(d, L, 10000);
        CHECK(report.ok(1e-12));
    }
    CHECK_THROWS_AS(jacobi_bound_check(2, 10, 1), std::domain_error);
}

TEST_CASE("stat report serialization") {
    StatReport r;
    r.statistic = "cap_count_variance";
    r.estimate = 1.5;
    r.trials = 10;
    const std::string j = r.to_json();
    CHECK(j.find("cap_count_variance") != std::string::npos);
    CHECK(j.find("\"standard_error\":null") != std::string::npos);
}
