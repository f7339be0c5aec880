#ifndef SPHDPP_SPECFUN_HPP
#define SPHDPP_SPECFUN_HPP

#include <cstdint>

namespace sphdpp {

/// Parameters of a Jacobi polynomial P_degree^{(alpha,beta)}.
/// Construction enforces alpha > -1 and beta > -1 (integrable weight).
struct PolyParams {
    double alpha;
    double beta;
    int degree;

    PolyParams(double alpha_, double beta_, int degree_);
};

/// log Gamma(x) for x > 0. Lanczos approximation, relative error below
/// 1e-13 on [1e-3, 1e3]. Throws std::domain_error for x <= 0.
double ln_gamma(double x);

/// Digamma psi_0(x) = (log Gamma)'(x) for x > 0, absolute error below 1e-12.
/// Throws std::domain_error for x <= 0.
double digamma(double x);

/// H_k = sum_{j=1}^k 1/j, with H_0 = 0.
double harmonic_number(int k);

/// Jacobi polynomial P_n^{(alpha,beta)}(t) by the forward three-term
/// recurrence in the degree. At t = 1 the value is binom(n + alpha, n).
double jacobi_eval(const PolyParams& p, double t);
double jacobi_eval(double alpha, double beta, int degree, double t);

/// Gegenbauer polynomial C_k^lambda(t) in the standard normalization
/// C_k^lambda(1) = binom(k + 2 lambda - 1, k), so C_k^1 is Chebyshev U_k
/// and C_k^{1/2} is Legendre P_k.
double gegenbauer_eval(double lambda, int k, double t);

/// Terminating balanced 4F3(-L, d+L, (d-s)/2, -s/2; d/2+1, d-s/2+L, -s/2-L; 1)
/// summed over k = 0..L with multiplicative term updates and compensated
/// accumulation. The endpoints s = 0 and s = d return exactly 1.
/// Throws std::domain_error for s outside [0, d].
double hyp4f3_terminating(int d, int L, double s);

/// 2F1((d-s)/2, -s/2; d/2+1; 1) = Gamma(1+d/2) Gamma(1+s) /
/// (Gamma(1+s/2) Gamma(1+(d+s)/2)), valid for s > -1 (Gauss's theorem).
double gauss_2f1_at_one(int d, double s);

/// Regularized incomplete beta I_x(a, b), a, b > 0, x in [0, 1].
double reg_inc_beta(double a, double b, double x);

/// Upper regularized incomplete gamma Q(a, x) = Gamma(a, x)/Gamma(a).
double reg_gamma_q(double a, double x);

/// Survival function of the chi-square distribution with k degrees of
/// freedom: P(X > x) = Q(k/2, x/2).
double chi_square_sf(double x, int dof);

/// Gamma(x) for any non-pole real x, via reflection for x < 0.
double gamma_signed(double x);

} // namespace sphdpp

#endif
