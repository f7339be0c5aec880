#ifndef SPHDPP_SAMPLING_HPP
#define SPHDPP_SAMPLING_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sphdpp/kernels.hpp"
#include "sphdpp/rng.hpp"

namespace sphdpp {

/// Ordered list of unit vectors in R^{d+1}, stored row-major.
class PointConfiguration {
public:
    PointConfiguration(int d, std::size_t n) : d_(d), coords_(n * (d + 1), 0.0) {}

    int dim() const { return d_; }
    std::size_t size() const { return coords_.size() / (d_ + 1); }

    std::span<double> point(std::size_t i) {
        return {coords_.data() + i * (d_ + 1), static_cast<std::size_t>(d_ + 1)};
    }
    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * (d_ + 1), static_cast<std::size_t>(d_ + 1)};
    }
    const std::vector<double>& raw() const { return coords_; }
    std::vector<double>& raw() { return coords_; }

    double dot(std::size_t i, std::size_t j) const {
        const double* a = coords_.data() + i * (d_ + 1);
        const double* b = coords_.data() + j * (d_ + 1);
        double s = 0.0;
        for (int k = 0; k <= d_; ++k) s += a[k] * b[k];
        return s;
    }
    /// Squared Euclidean distance via 2 - 2<x,y> (unit vectors).
    double dist2(std::size_t i, std::size_t j) const {
        double dd = 2.0 - 2.0 * dot(i, j);
        return dd > 0.0 ? dd : 0.0;
    }

private:
    int d_;
    std::vector<double> coords_;
};

/// n i.i.d. points with the uniform law, by normalizing Gaussian vectors.
PointConfiguration sample_uniform(int d, std::size_t n, RngStream stream);

/// Optional counters from an exact DPP draw.
struct DppDiagnostics {
    std::uint64_t proposals = 0;
    /// Largest observed v_i(x)/n - 1 (should stay below the 1e-8 slack).
    double max_envelope_violation = 0.0;
};

/// Exact draw from the determinantal process of a projection kernel
/// (sequential conditionals, kernel-only Gram-Schmidt with a growing
/// Cholesky factor, rejection sampling from the uniform envelope).
/// Output always has exactly trace(k) points. Throws SamplerStallError
/// after 10^6 consecutive rejections and DegeneracyError if the Gram
/// factor loses positive definiteness beyond tolerance.
PointConfiguration sample_dpp(const ZonalKernel& k, RngStream stream,
                              DppDiagnostics* diag = nullptr);

} // namespace sphdpp

#endif
