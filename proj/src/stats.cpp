#include "sphdpp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sphdpp/errors.hpp"
#include "sphdpp/parallel.hpp"
#include "sphdpp/quadrature.hpp"
#include "sphdpp/specfun.hpp"
#include "sphdpp/summation.hpp"

namespace sphdpp {

namespace {

constexpr double kPi = 3.14159265358979323846;

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return s;
}

// Normalized measure of a cap on S^dm with cosine threshold c (dm >= 1).
double cap_measure_from_cos(int dm, double c) {
    if (c >= 1.0) return 0.0;
    if (c <= -1.0) return 1.0;
    return reg_inc_beta(0.5 * dm, 0.5 * dm, 0.5 * (1.0 - c));
}

} // namespace

CapSpec::CapSpec(std::vector<double> center_, double radius_)
    : center(std::move(center_)), radius(radius_) {
    if (center.size() < 3)
        throw std::domain_error("CapSpec: center must live in R^{d+1}, d >= 2");
    if (std::abs(norm2(center) - 1.0) > 1e-12 * 2.0 + 1e-12)
        throw std::domain_error("CapSpec: center must be a unit vector");
    if (!(radius > 0.0) || !(radius < kPi))
        throw std::domain_error("CapSpec: radius must lie strictly inside (0, pi)");
}

CapSpec CapSpec::polar_with_measure(int d, double measure) {
    std::vector<double> pole(d + 1, 0.0);
    pole.back() = 1.0;
    return CapSpec(std::move(pole), cap_radius_for_measure(d, measure));
}

std::string StatReport::to_json() const {
    nlohmann::json j;
    j["statistic"] = statistic;
    j["estimate"] = estimate;
    j["trials"] = trials;
    if (standard_error)
        j["standard_error"] = *standard_error;
    else
        j["standard_error"] = nullptr;
    if (reference)
        j["reference"] = *reference;
    else
        j["reference"] = nullptr;
    return j.dump();
}

double cap_measure(int d, double radius) {
    if (d < 1) throw std::domain_error("cap_measure: d must be >= 1");
    if (!(radius > 0.0) || !(radius < kPi))
        throw std::domain_error("cap_measure: radius must lie in (0, pi)");
    return cap_measure_from_cos(d, std::cos(radius));
}

double cap_radius_for_measure(int d, double measure) {
    if (!(measure > 0.0) || !(measure < 1.0))
        throw std::domain_error("cap_radius_for_measure: measure must lie in (0, 1)");
    double lo = 0.0, hi = kPi;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (cap_measure_from_cos(d, std::cos(mid)) < measure)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::uint64_t count_in_cap(const PointConfiguration& x, const CapSpec& cap) {
    if (static_cast<int>(cap.center.size()) != x.dim() + 1)
        throw std::invalid_argument("count_in_cap: dimension mismatch");
    const double threshold = std::cos(cap.radius);
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto p = x.point(i);
        double dot = 0.0;
        for (std::size_t c = 0; c < p.size(); ++c) dot += p[c] * cap.center[c];
        if (dot >= threshold) ++count;
    }
    return count;
}

StatReport variance_cap_mc(const ZonalKernel& k, const CapSpec& cap, std::uint64_t trials,
                           RngStream stream) {
    if (trials < 2) throw std::domain_error("variance_cap_mc: need at least two trials");
    std::vector<double> counts(trials);
    parallel_for(trials, [&](std::size_t t) {
        const PointConfiguration x = sample_dpp(k, stream.with_stream(stream.stream_id + t));
        counts[t] = static_cast<double>(count_in_cap(x, cap));
    });

    CompensatedSum sum, sumsq;
    for (double c : counts) {
        sum.add(c);
        sumsq.add(c * c);
    }
    const double tn = static_cast<double>(trials);
    const double mean = sum.value() / tn;
    const double var = (sumsq.value() - tn * mean * mean) / (tn - 1.0);

    // Jackknife over trials: each leave-one-out variance from the
    // sufficient statistics. Two trials leave no room for it; fall back to
    // the normal-theory error of a sample variance.
    double se;
    if (trials == 2) {
        se = var * std::sqrt(2.0 / (tn - 1.0));
    } else {
        CompensatedSum jk_sum;
        std::vector<double> jk(trials);
        for (std::uint64_t t = 0; t < trials; ++t) {
            const double s1 = sum.value() - counts[t];
            const double s2 = sumsq.value() - counts[t] * counts[t];
            const double m1 = s1 / (tn - 1.0);
            jk[t] = (s2 - (tn - 1.0) * m1 * m1) / (tn - 2.0);
            jk_sum.add(jk[t]);
        }
        const double jk_mean = jk_sum.value() / tn;
        CompensatedSum jk_dev;
        for (double v : jk) jk_dev.add((v - jk_mean) * (v - jk_mean));
        se = std::sqrt((tn - 1.0) / tn * jk_dev.value());
    }

    StatReport report;
    report.statistic = "cap_count_variance";
    report.estimate = var;
    report.standard_error = se;
    report.trials = trials;
    return report;
}

double variance_cap_semianalytic(const HarmonicEnsemble& e, const CapSpec& cap, int m) {
    if (m < 4) throw std::domain_error("variance_cap_semianalytic: need at least 4 nodes");
    const int d = e.dim();
    const double theta0 = cap.radius;

    const QuadratureRule gl = gauss_jacobi_rule(0.0, 0.0, m);
    auto map_integrate = [&](const QuadratureRule& rule, double lo, double hi, auto&& f) {
        if (!(hi > lo)) return 0.0;
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
        return half * acc;
    };

    auto evaluate = [&](const QuadratureRule& rule) {
        // Outer: colatitude eta of x inside the cap. Inner: angle theta
        // between x and y; the azimuth fraction of y's outside the cap is
        // 1 - (cap overlap on S^{d-1}). Below theta0-eta the shell is fully
        // inside (weight 0); above theta0+eta fully outside (weight 1).
        auto inner = [&](double eta) {
            const double ce = std::cos(eta), se = std::sin(eta);
            const double lo = std::abs(theta0 - eta);
            const double hi = std::min(theta0 + eta, kPi);
            auto shell = [&](double theta) {
                const double k = e.eval(std::cos(theta));
                return k * k * std::pow(std::sin(theta), d - 1);
            };
            const double mixed = map_integrate(rule, lo, hi, [&](double theta) {
                const double st = std::sin(theta);
                const double denom = st * se;
                double frac_inside;
                if (denom < 1e-300) {
                    frac_inside = (std::cos(theta) * ce >= std::cos(theta0)) ? 1.0 : 0.0;
                } else {
                    const double cstar = (std::cos(theta0) - std::cos(theta) * ce) / denom;
                    frac_inside = cap_measure_from_cos(d - 1, cstar);
                }
                return shell(theta) * (1.0 - frac_inside);
            });
            const double outside = map_integrate(rule, hi, kPi, shell);
            return mixed + outside;
        };
        const double outer = map_integrate(rule, 0.0, theta0, [&](double eta) {
            return std::pow(std::sin(eta), d - 1) * inner(eta);
        });
        const double ratio = sphere_surface(d - 1) / sphere_surface(d);
        return ratio * ratio * outer;
    };

    const double coarse = evaluate(gl);
    const double fine = evaluate(gauss_jacobi_rule(0.0, 0.0, 2 * m));
    // floor keeps the relative test meaningful for near-degenerate caps
    const double scale = std::max(std::abs(fine), 1e-8 * static_cast<double>(e.trace()));
    if (std::abs(fine - coarse) / scale > 1e-4)
        throw NumericalError("variance_cap_semianalytic: quadrature not converged; raise m");
    return fine;
}

double variance_coordinate_statistic(const HarmonicEnsemble& e) {
    const int d = e.dim();
    const int m = e.max_degree() + d + 8;
    // weight (1-t)^{d/2} (1+t)^{d/2-1} absorbs the (1-t) factor
    const QuadratureRule rule = gauss_jacobi_rule(0.5 * d, 0.5 * d - 1.0, m);
    const double integral = rule.integrate([&](double t) {
        const double k = e.eval(t);
        return k * k;
    });
    const double ratio = sphere_surface(d - 1) / sphere_surface(d);
    return ratio * integral / (d + 1.0);
}

namespace {

// Van der Corput radical inverse in base 2; enumerates quantile levels so
// that every prefix is both nested and roughly equidistributed.
double van_der_corput(std::uint64_t i) {
    double q = 0.0, bk = 0.5;
    while (i > 0) {
        if (i & 1) q += bk;
        i >>= 1;
        bk *= 0.5;
    }
    return q;
}

} // namespace

double discrepancy_estimate(const PointConfiguration& x, std::uint64_t probes, RngStream stream) {
    if (probes < 1) throw std::domain_error("discrepancy_estimate: probes must be >= 1");
    const int d = x.dim();
    const std::size_t n = x.size();
    const double nf = static_cast<double>(n);
    RandomStream rng(stream);

    double best = 0.0;
    auto consider = [&](double count, double measure) {
        best = std::max(best, std::abs(count / nf - measure));
    };

    // (i) random caps: uniform center, cosine threshold uniform in (-1, 1)
    std::vector<double> center(d + 1);
    for (std::uint64_t p = 0; p < probes; ++p) {
        double c2 = 0.0;
        for (int k = 0; k <= d; ++k) {
            center[k] = rng.normal();
            c2 += center[k] * center[k];
        }
        const double inv = 1.0 / std::sqrt(std::max(c2, 1e-300));
        for (int k = 0; k <= d; ++k) center[k] *= inv;
        const double threshold = 2.0 * rng.uniform() - 1.0;
        std::uint64_t inside = 0;
        for (std::size_t i = 0; i < n; ++i) {
            auto pt = x.point(i);
            double dot = 0.0;
            for (int k = 0; k <= d; ++k) dot += pt[k] * center[k];
            if (dot >= threshold) ++inside;
        }
        consider(static_cast<double>(inside), cap_measure_from_cos(d, threshold));
    }

    // (ii) caps through data points: centers at the points, radii at
    // inter-point distance quantiles in van der Corput order, capped at
    // `probes` caps in total. The sup over caps whose boundary passes
    // through points is the extremal family for the empirical term.
    if (n >= 2) {
        // per-center descending dot lists (ascending angle)
        std::vector<std::vector<double>> dots(n, std::vector<double>(n - 1));
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t w = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) dots[i][w++] = x.dot(i, j);
            std::sort(dots[i].begin(), dots[i].end(), std::greater<double>());
        }
        std::uint64_t used = 0;
        for (std::uint64_t round = 1; used < probes; ++round) {
            const double level = van_der_corput(round);
            const std::size_t rank = std::min<std::size_t>(
                n - 2, static_cast<std::size_t>(level * static_cast<double>(n - 1)));
            if (round > n) break; // quantile levels exhausted at this resolution
            for (std::size_t i = 0; i < n && used < probes; ++i, ++used) {
                const double threshold = dots[i][rank];
                std::uint64_t inside = 0;
                for (std::size_t j = 0; j < n; ++j)
                    if (x.dot(i, j) >= threshold) ++inside;
                const double measure = cap_measure_from_cos(d, threshold);
                consider(static_cast<double>(inside), measure);
                consider(static_cast<double>(inside - 1), measure); // open cap
            }
        }
    }
    return best;
}

double separation(const PointConfiguration& x) {
    const std::size_t n = x.size();
    if (n < 2) throw std::domain_error("separation: need at least two points");
    double best = 4.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) best = std::min(best, x.dist2(i, j));
    return std::sqrt(best);
}

std::uint64_t close_pair_count(const PointConfiguration& x, double t) {
    if (t < 0.0) throw std::domain_error("close_pair_count: t must be >= 0");
    const std::size_t n = x.size();
    std::uint64_t count = 0;
    // compare rounded distances, not squares, so that t = separation(x)
    // always reports at least one pair
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::sqrt(x.dist2(i, j)) <= t) ++count;
    return count;
}

double expected_close_pairs_bound(const HarmonicEnsemble& e, double t) {
    if (t < 0.0) throw std::domain_error("expected_close_pairs_bound: t must be >= 0");
    const int d = e.dim();
    const int L = e.max_degree();
    if (L == 0) return 0.0; // K_0 has no close-pair repulsion scale; bound is 0
    const double threshold = (d + 6.0) / ((2.0 * L + d) * L);
    if (t > threshold)
        throw std::domain_error("expected_close_pairs_bound: t above (d+6)/((2L+d)L)");
    const double n = static_cast<double>(e.point_count());
    const double ratio = sphere_surface(d - 1) / sphere_surface(d);
    return static_cast<double>(L) * (L + d) * n * n * ratio * std::pow(t, d + 2) /
           (2.0 * (d + 2.0) * (d + 2.0));
}

JacobiBoundReport jacobi_bound_check(int d, int L, int grid) {
    if (grid < 2) throw std::domain_error("jacobi_bound_check: grid must be >= 2");
    if (L < 1) throw std::domain_error("jacobi_bound_check: L must be >= 1");
    const double lambda = 0.5 * (d - 2);
    const double ln_binom =
        ln_gamma(L + 0.5 * d + 1.0) - ln_gamma(L + 1.0) - ln_gamma(0.5 * d + 1.0);
    const double inv_binom = std::exp(-ln_binom);
    const double u_max = (d + 6.0) / ((2.0 * L + d) * L);
    const double slope = static_cast<double>(L) * (L + d) / (d + 2.0);

    JacobiBoundReport report;
    for (int g = 0; g < grid; ++g) {
        const double u = u_max * g / (grid - 1.0);
        const double p = jacobi_eval(1.0 + lambda, lambda, L, 1.0 - u) * inv_binom;
        report.max_violation_lower = std::max(report.max_violation_lower, (1.0 - slope * u) - p);
        report.max_violation_upper =
            std::max(report.max_violation_upper, (1.0 - p * p) - 2.0 * slope * u);
    }
    return report;
}

} // namespace sphdpp
