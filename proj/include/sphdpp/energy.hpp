#ifndef SPHDPP_ENERGY_HPP
#define SPHDPP_ENERGY_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "sphdpp/kernels.hpp"
#include "sphdpp/sampling.hpp"

namespace sphdpp {

/// Discrete energy of a configuration together with its matched closed-form
/// expectation and asymptotic prediction, when available. s = 0 encodes the
/// logarithmic energy.
struct EnergyReport {
    double s = 0.0;
    std::uint64_t n = 0;
    double discrete_value = 0.0;
    std::optional<double> expected_value;
    std::optional<double> asymptotic_value;

    std::string to_json() const;
};

/// Riesz s-energy sum_{i != j} |x_i - x_j|^{-s} (ordered pairs, so each
/// unordered pair counts twice). Parallelized over fixed pair blocks with
/// per-block compensated sums merged in block order; the result does not
/// depend on the thread count. Throws SingularConfigurationError if two
/// points are closer than 1e-14.
double discrete_riesz(const PointConfiguration& x, double s);

/// Logarithmic energy sum_{i != j} log(1/|x_i - x_j|), same conventions.
double discrete_log(const PointConfiguration& x);

/// Continuous s-energy V_s(S^d) of the uniform measure, 0 <= s < d:
/// 2^{d-s-1} Gamma((d+1)/2) Gamma((d-s)/2) / (sqrt(pi) Gamma(d - s/2)).
/// Throws std::domain_error at and beyond the pole s = d.
double continuous_vs(int d, double s);

/// V_log(S^d) = (psi_0(d) - psi_0(d/2))/2 - log 2.
double continuous_vlog(int d);

/// Expected Riesz s-energy of the harmonic ensemble (d, L), 0 < s < d:
/// n^2 V_s minus the terminating-4F3 term with coefficient
/// C_{s,d}(L) = Gamma(L+d/2) Gamma(L+d/2+1) Gamma(L+s/2+1) /
///              (Gamma(L+1)^2 Gamma(L-s/2+d)), all as ln_gamma differences.
double expected_riesz_harmonic(int d, int L, double s);

/// Expected Riesz s-energy of the determinantal process of any isotropic
/// projection kernel, by exact Gauss-Jacobi quadrature; 0 < s < d+2.
/// For s < d the n^2 term is the closed Beta form and only |K|^2 is
/// integrated; for s >= d the full difference (n^2 - K^2)/(1-t) is
/// integrated against the weight (1-t)^{d/2-s/2} (1+t)^{d/2-1}. Both
/// integrands are polynomials, so the result is exact up to rounding.
/// m = 0 picks max_degree + d + 8 nodes. Throws std::domain_error for
/// s >= d + 2 (divergent energy).
double expected_riesz_quadrature(const ZonalKernel& k, double s, int m = 0);

/// Second-order coefficient C_{s,d} of the expected-energy expansion
/// n^2 V_s - C_{s,d} n^{1+s/d} + o(n^{1+s/d}), 0 < s < d.
double asymptotic_riesz_constant(int d, double s);

/// Expected logarithmic energy of the harmonic ensemble:
/// n^2 V_log - (n/2) (sum_{k=1}^L 1/(d/2+k) + H_{L+d-1} + psi(1/2) - psi(d/2)).
double expected_log_harmonic(int d, int L);

/// Constant C_d in E_0 = n^2 V_log - (n/d) log n + C_d n + o(n):
/// C_d = (1/d) log(2/d!) + log 2 + psi_0(d/2) + 1/d.
double log_asymptotic_constant(int d);

/// Constant C_{d,d} in E_d = (omega_{d-1}/(d omega_d)) n^2 log n +
/// C_{d,d} n^2 + o(n^2), as
/// (omega_{d-1}/(2 omega_d)) (psi(d+1) - psi(d/2+1)) - psi(d/2) - 1/d -
/// (1/d) log(2/d!). At d = 2 this evaluates to gamma - 3/8.
double singular_asymptotic_constant(int d);

/// Expected Riesz 2-energy for d >= 3 in closed form:
/// V_2(S^d) (n^2 - sum_l a_l binom(d+l-2, l) (a_l + 2 sum_{j>l} a_j)).
/// Throws std::domain_error for d = 2 (V_2 pole).
double expected_e2_closed_form(const ProjectionKernel& k);

/// Q_{k,j} = binom(d + min(k,j) - 2, min(k,j)) 2^{d-2} B(d/2, d/2 - 1),
/// the closed form of the cross-Gegenbauer integral entering the 2-energy.
/// Requires d >= 3.
double q_integral(int d, int k, int j);

/// Quadratic form F(a) = a^T M a with M_{k,j} = binom(d + min(k,j) - 2,
/// min(k,j)) over the coefficient vector implied by the degree set;
/// E_2 = V_2 (n^2 - F(a)). Requires d >= 3.
double kernel_quadratic_form(const ProjectionKernel& k);

/// Ordering of expected 2-energies of two kernels with equal d >= 3 and
/// equal trace, decided in exact integer arithmetic.
struct KernelComparison {
    int order = 0;               // -1: E_2(a) < E_2(b); 0: equal; +1: greater
    bool holes_hypothesis = false; // every hole of a below a live degree is a hole of b
};

KernelComparison compare_kernels(const ProjectionKernel& a, const ProjectionKernel& b);

} // namespace sphdpp

#endif
