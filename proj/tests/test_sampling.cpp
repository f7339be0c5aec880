#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "sphdpp/sampling.hpp"
#include "sphdpp/specfun.hpp"
#include "sphdpp/stats.hpp"

using namespace sphdpp;
using oracles::close;

TEST_CASE("uniform points live on the sphere") {
    const PointConfiguration x = sample_uniform(3, 200, {42, 0});
    CHECK(x.dim() == 3);
    CHECK(x.size() == 200);
    for (std::size_t i = 0; i < x.size(); ++i) {
        double norm2 = 0.0;
        for (double c : x.point(i)) norm2 += c * c;
        CHECK(std::abs(std::sqrt(norm2) - 1.0) < 1e-12);
    }
}

TEST_CASE("uniform coordinate means satisfy the CLT bound") {
    const std::size_t n = 10000;
    const PointConfiguration x = sample_uniform(2, n, {7, 1});
    for (int c = 0; c < 3; ++c) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += x.point(i)[c];
        mean /= static_cast<double>(n);
        // Var(x_i) = 1/3 on S^2
        CHECK(std::abs(mean) < 4.0 / std::sqrt(3.0 * n));
    }
}

TEST_CASE("uniform cap frequencies are binomial") {
    const std::size_t n = 10000;
    const PointConfiguration x = sample_uniform(2, n, {11, 3});
    const CapSpec cap = CapSpec::polar_with_measure(2, 0.25);
    const double frac = static_cast<double>(count_in_cap(x, cap)) / static_cast<double>(n);
    CHECK(std::abs(frac - 0.25) < 4.0 * std::sqrt(0.25 * 0.75 / n));
}

TEST_CASE("identical streams reproduce identical configurations") {
    const PointConfiguration a = sample_uniform(4, 50, {123, 9});
    const PointConfiguration b = sample_uniform(4, 50, {123, 9});
    CHECK(a.raw() == b.raw());
    const PointConfiguration c = sample_uniform(4, 50, {123, 10});
    CHECK(a.raw() != c.raw());

    const HarmonicEnsemble e(2, 4);
    const PointConfiguration d1 = sample_dpp(e, {5, 77});
    const PointConfiguration d2 = sample_dpp(e, {5, 77});
    CHECK(d1.raw() == d2.raw());
}

TEST_CASE("dpp draws have exactly trace many unit points") {
    for (const auto& degrees :
         {std::vector<int>{0}, std::vector<int>{0, 2}, std::vector<int>{1, 3}}) {
        const ProjectionKernel k(3, degrees);
        DppDiagnostics diag;
        const PointConfiguration x = sample_dpp(k, {2024, 0}, &diag);
        CHECK(x.size() == k.trace());
        CHECK(diag.proposals >= x.size());
        CHECK(diag.max_envelope_violation <= 1e-8);
        for (std::size_t i = 0; i < x.size(); ++i) {
            double norm2 = 0.0;
            for (double c : x.point(i)) norm2 += c * c;
            CHECK(std::abs(std::sqrt(norm2) - 1.0) < 1e-12);
        }
    }
    const HarmonicEnsemble e(2, 8);
    CHECK(sample_dpp(e, {1, 0}).size() == 81);
}

TEST_CASE("trace-1 kernel draws a single uniform point") {
    const ProjectionKernel k(2, {0});
    // chi-square over 8 equal-measure polar bands, 4000 draws
    const int cells = 8, trials = 4000;
    std::vector<double> boundaries(cells - 1);
    for (int c = 1; c < cells; ++c)
        boundaries[c - 1] = std::cos(cap_radius_for_measure(2, static_cast<double>(c) / cells));
    std::vector<int> counts(cells, 0);
    for (int t = 0; t < trials; ++t) {
        const PointConfiguration x = sample_dpp(k, {31337, static_cast<std::uint64_t>(t)});
        REQUIRE(x.size() == 1);
        const double z = x.point(0)[2];
        int cell = cells - 1;
        for (int c = 0; c < cells - 1; ++c)
            if (z >= boundaries[c]) {
                cell = c;
                break;
            }
        ++counts[cell];
    }
    double chi2 = 0.0;
    const double expected = static_cast<double>(trials) / cells;
    for (int c = 0; c < cells; ++c)
        chi2 += (counts[c] - expected) * (counts[c] - expected) / expected;
    CHECK(chi_square_sf(chi2, cells - 1) > 1e-3);
}

TEST_CASE("cap counts have the first-intensity mean and sub-Poissonian variance") {
    const HarmonicEnsemble e(2, 4); // n = 25
    const double n = 25.0;
    const CapSpec cap = CapSpec::polar_with_measure(2, 0.3);
    const int trials = 1500;
    double sum = 0.0, sumsq = 0.0;
    for (int t = 0; t < trials; ++t) {
        const auto x = sample_dpp(e, {99, static_cast<std::uint64_t>(t)});
        const double c = static_cast<double>(count_in_cap(x, cap));
        sum += c;
        sumsq += c * c;
    }
    const double mean = sum / trials;
    const double var = (sumsq - trials * mean * mean) / (trials - 1.0);
    // E n_A = n mu(A); SE of the mean uses the sample sd
    const double se = std::sqrt(var / trials);
    CHECK(std::abs(mean - n * 0.3) < 3.0 * se);
    // determinantal repulsion: Var < E (wide margin: 4 SE-ish slack on var)
    CHECK(var < mean);
}

TEST_CASE("empty and bad kernel arguments") {
    CHECK_THROWS_AS(sample_uniform(1, 5, {0, 0}), std::domain_error);
    CHECK_THROWS_AS(sample_uniform(2, 0, {0, 0}), std::domain_error);
}
