#ifndef SPHDPP_STATS_HPP
#define SPHDPP_STATS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sphdpp/kernels.hpp"
#include "sphdpp/rng.hpp"
#include "sphdpp/sampling.hpp"

namespace sphdpp {

/// Spherical cap: geodesic ball around a unit vector.
struct CapSpec {
    std::vector<double> center; // unit vector in R^{d+1}
    double radius = 0.0;        // geodesic angle in (0, pi)

    CapSpec(std::vector<double> center_, double radius_);

    /// Cap of the requested measure around the positive last-coordinate pole.
    static CapSpec polar_with_measure(int d, double measure);
};

struct StatReport {
    std::string statistic;
    double estimate = 0.0;
    std::optional<double> standard_error;
    std::uint64_t trials = 1;
    std::optional<double> reference;

    std::string to_json() const;
};

/// Normalized measure of a spherical cap of geodesic radius r on S^d,
/// mu = I_{(1-cos r)/2}(d/2, d/2) (regularized incomplete beta).
double cap_measure(int d, double radius);

/// Geodesic radius of the cap with the given measure (inverse of
/// cap_measure, by bisection).
double cap_radius_for_measure(int d, double measure);

std::uint64_t count_in_cap(const PointConfiguration& x, const CapSpec& cap);

/// Sample variance of the cap count over independent DPP draws, with a
/// jackknife standard error. Trial t uses stream.stream_id + t.
StatReport variance_cap_mc(const ZonalKernel& k, const CapSpec& cap, std::uint64_t trials,
                           RngStream stream);

/// Var(n_A) = int_A int_{A^c} |K_L(x,y)|^2 dmu dmu for the harmonic
/// ensemble, reduced to nested 1-D integrals: outer over the colatitude of
/// x in A, inner over the angle between x and y weighted by the fraction of
/// the direction sphere falling outside A (a cap-overlap function on
/// S^{d-1}). Uses m Gauss-Legendre nodes per axis, and cross-checks against
/// the 2m-node value: a relative gap above 1e-4 raises NumericalError.
double variance_cap_semianalytic(const HarmonicEnsemble& e, const CapSpec& cap, int m);

/// Variance of the linear statistic sum_i phi(x_i) with phi a coordinate
/// function, exactly: (1/(d+1)) (omega_{d-1}/omega_d)
/// int K_L(t)^2 (1-t)(1-t^2)^{d/2-1} dt by Gauss-Jacobi.
double variance_coordinate_statistic(const HarmonicEnsemble& e);

/// Lower bound on the spherical cap discrepancy of x: the max of
/// |n_A/n - mu(A)| over (i) `probes` random caps and (ii) caps centered at
/// the points with radii at inter-point distance quantiles (van der Corput
/// quantile order, capped at `probes` caps), so the probe family grows with
/// `probes` and the estimate is monotone non-decreasing in it.
double discrepancy_estimate(const PointConfiguration& x, std::uint64_t probes, RngStream stream);

/// Minimum pairwise Euclidean distance; requires n >= 2.
double separation(const PointConfiguration& x);

/// Number of unordered pairs at Euclidean distance <= t.
std::uint64_t close_pair_count(const PointConfiguration& x, double t);

/// Upper bound L(L+d) pi_L^2 omega_{d-1} t^{d+2} / (2 (d+2)^2 omega_d) for
/// the expected close-pair count of the harmonic ensemble, valid for
/// t <= (d+6)/((2L+d) L). Larger t raises std::domain_error.
double expected_close_pairs_bound(const HarmonicEnsemble& e, double t);

/// Grid check of the two-sided Jacobi polynomial bound near t = 1 used by
/// the close-pair estimate: on 0 <= u <= (d+6)/((2L+d)L),
///   1 - (L^2+Ld) u/(d+2) <= P_L^{(1+lambda,lambda)}(1-u)/binom(L+d/2, L)
/// and 1 - (P/binom)^2 <= 2 (L^2+Ld) u/(d+2).
struct JacobiBoundReport {
    double max_violation_lower = 0.0;
    double max_violation_upper = 0.0;
    bool ok(double tol = 1e-12) const {
        return max_violation_lower <= tol && max_violation_upper <= tol;
    }
};

JacobiBoundReport jacobi_bound_check(int d, int L, int grid);

} // namespace sphdpp

#endif
