#ifndef SPHDPP_QUADRATURE_HPP
#define SPHDPP_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace sphdpp {

/// Gauss-Jacobi rule on [-1, 1] for the weight (1-t)^alpha (1+t)^beta.
/// Nodes are strictly increasing and interior; weights are positive and sum
/// to the zeroth moment 2^{alpha+beta+1} B(alpha+1, beta+1).
struct QuadratureRule {
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;

    template <typename F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

/// m-point Gauss-Jacobi rule, exact for polynomials of degree <= 2m-1.
/// Built by Golub-Welsch: recurrence coefficients of the Jacobi orthogonal
/// polynomials feed a symmetric tridiagonal eigenproblem solved by implicit
/// QL iteration. Throws std::domain_error for m < 1 or exponents <= -1 and
/// NumericalError if an eigenvalue fails to converge in 50 iterations.
QuadratureRule gauss_jacobi_rule(double alpha, double beta, int m);

/// Surface area omega_d = 2 pi^{(d+1)/2} / Gamma((d+1)/2) of S^d.
double sphere_surface(int d);

/// Funk-Hecke reduction: integral over S^d of a zonal function g(<x,v>)
/// against the normalized surface measure,
///   (omega_{d-1}/omega_d) * int_{-1}^{1} g(t) (1-t^2)^{d/2-1} dt,
/// evaluated by an m-point Gauss-Jacobi rule with the weight exponents
/// shifted by (extra_alpha, extra_beta). Endpoint singularities of the
/// integrand are meant to be folded into the extra exponents so that g
/// itself stays smooth. Throws std::domain_error if a total exponent
/// is <= -1 (non-integrable).
double zonal_integral(int d, const std::function<double(double)>& g, double extra_alpha,
                      double extra_beta, int m);

} // namespace sphdpp

#endif
