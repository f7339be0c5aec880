#include "sphdpp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sphdpp/errors.hpp"
#include "sphdpp/specfun.hpp"

namespace sphdpp {

namespace {

constexpr double kEigenTol = 1e-14;
constexpr int kMaxEigenIter = 50;

// Implicit-shift QL on a symmetric tridiagonal matrix, accumulating the
// rotations only into the first-row components z (all that Golub-Welsch
// needs for the weights). diag is n entries, off is n-1 sub-diagonal
// entries; both are modified in place.
void tridiag_ql(std::vector<double>& diag, std::vector<double>& off, std::vector<double>& z) {
    const int n = static_cast<int>(diag.size());
    if (n == 1) return;
    off.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double scale = std::abs(diag[m]) + std::abs(diag[m + 1]);
                if (std::abs(off[m]) <= kEigenTol * scale || std::abs(off[m]) < 1e-18) break;
            }
            if (m == l) break;
            if (++iter > kMaxEigenIter)
                throw NumericalError("gauss_jacobi_rule: eigenvalue iteration failed to converge");
            double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            double r = std::hypot(g, 1.0);
            g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool deflated_early = false;
            for (int i = m - 1; i >= l; --i) {
                double f = s * off[i];
                const double b = c * off[i];
                r = std::hypot(f, g);
                off[i + 1] = r;
                if (r == 0.0) {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated_early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                // rotate the tracked first-row components
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if (deflated_early) continue;
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        } while (m != l);
    }
}

} // namespace

QuadratureRule gauss_jacobi_rule(double alpha, double beta, int m) {
    if (m < 1)
        throw std::domain_error("gauss_jacobi_rule: need at least one node");
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw std::domain_error("gauss_jacobi_rule: weight exponents must exceed -1");

    const double ab = alpha + beta;
    // mu0 = 2^{a+b+1} B(a+1, b+1)
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + ln_gamma(alpha + 1.0) +
                                ln_gamma(beta + 1.0) - ln_gamma(ab + 2.0));

    std::vector<double> diag(m), off(m > 1 ? m - 1 : 0);
    diag[0] = (beta - alpha) / (ab + 2.0);
    for (int k = 1; k < m; ++k) {
        const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
        diag[k] = (beta * beta - alpha * alpha) / den;
    }
    if (m > 1) {
        off[0] = std::sqrt(4.0 * (alpha + 1.0) * (beta + 1.0) /
                           ((ab + 2.0) * (ab + 2.0) * (ab + 3.0)));
        for (int k = 2; k < m; ++k) {
            const double t = 2.0 * k + ab;
            off[k - 1] = std::sqrt(4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
                                   (t * t * (t + 1.0) * (t - 1.0)));
        }
    }

    std::vector<double> z(m, 0.0);
    z[0] = 1.0;
    tridiag_ql(diag, off, z);

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return diag[a] < diag[b]; });

    QuadratureRule rule;
    rule.alpha = alpha;
    rule.beta = beta;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    for (int i = 0; i < m; ++i) {
        rule.nodes[i] = diag[order[i]];
        rule.weights[i] = mu0 * z[order[i]] * z[order[i]];
    }
    return rule;
}

double sphere_surface(int d) {
    if (d < 1)
        throw std::domain_error("sphere_surface: d must be >= 1");
    const double pi = 3.14159265358979323846;
    return 2.0 * std::exp(0.5 * (d + 1) * std::log(pi) - ln_gamma(0.5 * (d + 1)));
}

double zonal_integral(int d, const std::function<double(double)>& g, double extra_alpha,
                      double extra_beta, int m) {
    if (d < 2)
        throw std::domain_error("zonal_integral: d must be >= 2");
    const double a = 0.5 * d - 1.0 + extra_alpha;
    const double b = 0.5 * d - 1.0 + extra_beta;
    if (!(a > -1.0) || !(b > -1.0))
        throw std::domain_error("zonal_integral: total weight exponent <= -1, non-integrable");
    const QuadratureRule rule = gauss_jacobi_rule(a, b, m);
    const double ratio = sphere_surface(d - 1) / sphere_surface(d);
    return ratio * rule.integrate(g);
}

} // namespace sphdpp
