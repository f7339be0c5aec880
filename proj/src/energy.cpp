#include "sphdpp/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "sphdpp/errors.hpp"
#include "sphdpp/parallel.hpp"
#include "sphdpp/quadrature.hpp"
#include "sphdpp/specfun.hpp"
#include "sphdpp/summation.hpp"

namespace sphdpp {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kCoincidenceTol = 1e-14;

using u128 = unsigned __int128;

// Pairwise sums over ordered pairs, chunked into fixed row blocks so the
// reduction order is independent of the thread count.
template <typename PairTerm>
double pair_sum(const PointConfiguration& x, PairTerm&& term) {
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    constexpr std::size_t kPairsPerBlock = 1 << 18;
    // Row i contributes (n - 1 - i) pairs; greedily pack rows into blocks.
    std::vector<std::size_t> block_start{0};
    std::size_t in_block = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        in_block += n - 1 - i;
        if (in_block >= kPairsPerBlock) {
            block_start.push_back(i + 1);
            in_block = 0;
        }
    }
    if (block_start.back() != n - 1) block_start.push_back(n - 1);

    const std::size_t blocks = block_start.size() - 1;
    std::vector<CompensatedSum> partial(blocks);
    std::vector<char> singular(blocks, 0);
    parallel_for(blocks, [&](std::size_t b) {
        CompensatedSum acc;
        for (std::size_t i = block_start[b]; i < block_start[b + 1]; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double d2 = x.dist2(i, j);
                if (d2 < kCoincidenceTol * kCoincidenceTol) {
                    singular[b] = 1;
                    return;
                }
                acc.add(term(d2));
            }
        }
        partial[b] = acc;
    });
    for (std::size_t b = 0; b < blocks; ++b)
        if (singular[b])
            throw SingularConfigurationError("discrete energy: coincident pair of points");
    CompensatedSum total;
    for (std::size_t b = 0; b < blocks; ++b) total.merge(partial[b]);
    return 2.0 * total.value(); // ordered-pair convention
}

double ln_binom_half(int d, int L) {
    // log binom(L + d/2, L)
    return ln_gamma(L + 0.5 * d + 1.0) - ln_gamma(L + 1.0) - ln_gamma(0.5 * d + 1.0);
}

// (d-1) * F(a) as an exact integer; F is the quadratic form of the
// 2-energy comparison. Fits easily in 128 bits at desk scale.
u128 quadratic_form_scaled(const ProjectionKernel& k) {
    const int d = k.dim();
    const auto& degrees = k.degrees();
    u128 total = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        const int ell = degrees[i];
        u128 inner = 2 * ell + d - 1;
        for (std::size_t j = i + 1; j < degrees.size(); ++j)
            inner += 2 * static_cast<u128>(2 * degrees[j] + d - 1);
        total += static_cast<u128>(dim_harmonic(d, ell)) * inner;
    }
    return total;
}

} // namespace

std::string EnergyReport::to_json() const {
    nlohmann::json j;
    j["s"] = s;
    j["n"] = n;
    j["discrete"] = discrete_value;
    if (expected_value)
        j["expected"] = *expected_value;
    else
        j["expected"] = nullptr;
    if (asymptotic_value)
        j["asymptotic"] = *asymptotic_value;
    else
        j["asymptotic"] = nullptr;
    return j.dump();
}

double discrete_riesz(const PointConfiguration& x, double s) {
    if (!(s > 0.0)) throw std::domain_error("discrete_riesz: s must be positive");
    return pair_sum(x, [s](double d2) { return std::pow(d2, -0.5 * s); });
}

double discrete_log(const PointConfiguration& x) {
    return pair_sum(x, [](double d2) { return -0.5 * std::log(d2); });
}

double continuous_vs(int d, double s) {
    if (d < 2) throw std::domain_error("continuous_vs: d must be >= 2");
    if (s < 0.0) throw std::domain_error("continuous_vs: s must be >= 0");
    if (s >= static_cast<double>(d))
        throw std::domain_error("continuous_vs: simple pole at s = d");
    return std::exp((d - s - 1.0) * std::log(2.0) + ln_gamma(0.5 * (d + 1)) +
                    ln_gamma(0.5 * (d - s)) - 0.5 * std::log(kPi) - ln_gamma(d - 0.5 * s));
}

double continuous_vlog(int d) {
    if (d < 2) throw std::domain_error("continuous_vlog: d must be >= 2");
    return 0.5 * (digamma(d) - digamma(0.5 * d)) - std::log(2.0);
}

double expected_riesz_harmonic(int d, int L, double s) {
    if (d < 2) throw std::domain_error("expected_riesz_harmonic: d must be >= 2");
    if (L < 0) throw std::domain_error("expected_riesz_harmonic: L must be >= 0");
    if (!(s > 0.0) || !(s < static_cast<double>(d)))
        throw std::domain_error("expected_riesz_harmonic: requires 0 < s < d");

    const double n = static_cast<double>(dim_pi(d, L));
    const double ln_c = ln_gamma(L + 0.5 * d) + ln_gamma(L + 0.5 * d + 1.0) +
                        ln_gamma(L + 0.5 * s + 1.0) - 2.0 * ln_gamma(L + 1.0) -
                        ln_gamma(L - 0.5 * s + d);
    const double ratio = sphere_surface(d - 1) / sphere_surface(d);
    const double prefactor = std::exp((d - 1.0 - s) * std::log(2.0) + ln_gamma(0.5 * (d - s)) -
                                      ln_gamma(1.0 + 0.5 * d) - ln_gamma(1.0 + 0.5 * s) + ln_c -
                                      2.0 * ln_binom_half(d, L));
    return n * n * continuous_vs(d, s) -
           n * n * ratio * prefactor * hyp4f3_terminating(d, L, s);
}

double expected_riesz_quadrature(const ZonalKernel& k, double s, int m) {
    const int d = k.dim();
    if (!(s > 0.0)) throw std::domain_error("expected_riesz_quadrature: s must be positive");
    if (s >= d + 2.0)
        throw std::domain_error("expected_riesz_quadrature: energy diverges for s >= d + 2");
    if (m <= 0) m = k.max_degree() + d + 8;

    const double n = static_cast<double>(k.trace());
    const double ratio = sphere_surface(d - 1) / sphere_surface(d);
    const double scale = ratio * std::exp(-0.5 * s * std::log(2.0));
    if (s < static_cast<double>(d)) {
        const QuadratureRule rule = gauss_jacobi_rule(0.5 * d - 1.0 - 0.5 * s, 0.5 * d - 1.0, m);
        const double kernel_part = rule.integrate([&](double t) {
            const double v = k.eval(t);
            return v * v;
        });
        const double uniform_part =
            n * n *
            std::exp((d - 1.0 - 0.5 * s) * std::log(2.0) + ln_gamma(0.5 * d) +
                     ln_gamma(0.5 * (d - s)) - ln_gamma(d - 0.5 * s));
        return scale * (uniform_part - kernel_part);
    }
    // s in [d, d+2): integrate the full difference; (n^2 - K^2)/(1-t) is a
    // polynomial because K(1) = n.
    const QuadratureRule rule = gauss_jacobi_rule(0.5 * d - 0.5 * s, 0.5 * d - 1.0, m);
    const double value = rule.integrate([&](double t) {
        const double v = k.eval(t);
        return (n * n - v * v) / (1.0 - t);
    });
    return scale * value;
}

double asymptotic_riesz_constant(int d, double s) {
    if (d < 2) throw std::domain_error("asymptotic_riesz_constant: d must be >= 2");
    if (!(s > 0.0) || !(s < static_cast<double>(d)))
        throw std::domain_error("asymptotic_riesz_constant: requires 0 < s < d");
    const double ln_factor = (s - s / d) * std::log(2.0) +
                             (-1.0 + s / d) * ln_gamma(d + 1.0) + std::log(static_cast<double>(d)) +
                             ln_gamma(1.0 + 0.5 * d) + ln_gamma(0.5 * (1.0 + s)) +
                             ln_gamma(d - 0.5 * s) - 0.5 * std::log(kPi) -
                             ln_gamma(1.0 + 0.5 * s) - ln_gamma(1.0 + 0.5 * (s + d));
    return continuous_vs(d, s) * std::exp(ln_factor);
}

double expected_log_harmonic(int d, int L) {
    if (d < 2) throw std::domain_error("expected_log_harmonic: d must be >= 2");
    if (L < 0) throw std::domain_error("expected_log_harmonic: L must be >= 0");
    const double n = static_cast<double>(dim_pi(d, L));
    CompensatedSum tail;
    for (int k = L; k >= 1; --k) tail.add(1.0 / (0.5 * d + k));
    const double bracket = tail.value() + harmonic_number(L + d - 1) + digamma(0.5) -
                           digamma(0.5 * d);
    return n * n * continuous_vlog(d) - 0.5 * n * bracket;
}

double log_asymptotic_constant(int d) {
    if (d < 2) throw std::domain_error("log_asymptotic_constant: d must be >= 2");
    return (std::log(2.0) - ln_gamma(d + 1.0)) / d + std::log(2.0) + digamma(0.5 * d) + 1.0 / d;
}

double singular_asymptotic_constant(int d) {
    if (d < 2) throw std::domain_error("singular_asymptotic_constant: d must be >= 2");
    const double ratio = sphere_surface(d - 1) / sphere_surface(d);
    return 0.5 * ratio * (digamma(d + 1.0) - digamma(0.5 * d + 1.0)) - digamma(0.5 * d) -
           1.0 / d - (std::log(2.0) - ln_gamma(d + 1.0)) / d;
}

double expected_e2_closed_form(const ProjectionKernel& k) {
    const int d = k.dim();
    if (d < 3) throw std::domain_error("expected_e2_closed_form: requires d >= 3");
    const double n = static_cast<double>(k.trace());
    const double f = static_cast<double>(quadratic_form_scaled(k)) / (d - 1.0);
    return continuous_vs(d, 2.0) * (n * n - f);
}

double q_integral(int d, int k, int j) {
    if (d < 3) throw std::domain_error("q_integral: requires d >= 3");
    if (k < 0 || j < 0) throw std::domain_error("q_integral: indices must be >= 0");
    const int m = std::min(k, j);
    // exact integer binom(d + m - 2, m)
    u128 b = 1;
    for (int i = 1; i <= m; ++i) b = b * static_cast<unsigned>(d - 2 + i) / static_cast<unsigned>(i);
    const double q00 = std::exp((d - 2.0) * std::log(2.0) + ln_gamma(0.5 * d) +
                                ln_gamma(0.5 * d - 1.0) - ln_gamma(d - 1.0));
    return static_cast<double>(b) * q00;
}

double kernel_quadratic_form(const ProjectionKernel& k) {
    if (k.dim() < 3) throw std::domain_error("kernel_quadratic_form: requires d >= 3");
    return static_cast<double>(quadratic_form_scaled(k)) / (k.dim() - 1.0);
}

KernelComparison compare_kernels(const ProjectionKernel& a, const ProjectionKernel& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("compare_kernels: kernels live on different spheres");
    if (a.dim() < 3)
        throw std::domain_error("compare_kernels: requires d >= 3");
    if (a.trace() != b.trace())
        throw std::invalid_argument("compare_kernels: kernels have different traces");

    KernelComparison cmp;
    // E_2 = V_2 (n^2 - F): larger quadratic form means smaller energy.
    const u128 fa = quadratic_form_scaled(a);
    const u128 fb = quadratic_form_scaled(b);
    cmp.order = fa > fb ? -1 : (fa < fb ? 1 : 0);

    // Hypothesis: if i < j, a_i = 0 and a_j > 0, then b_i = 0.
    cmp.holes_hypothesis = true;
    const int top = a.degrees().back();
    for (int i = 0; i < top && cmp.holes_hypothesis; ++i) {
        if (a.contains(i)) continue;
        bool live_above = false;
        for (int j = i + 1; j <= top; ++j)
            if (a.contains(j)) {
                live_above = true;
                break;
            }
        if (live_above && b.contains(i)) cmp.holes_hypothesis = false;
    }
    return cmp;
}

} // namespace sphdpp
