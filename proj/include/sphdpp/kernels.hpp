#ifndef SPHDPP_KERNELS_HPP
#define SPHDPP_KERNELS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace sphdpp {

/// h_ell = dim of the degree-ell spherical harmonics on S^d, exact integers.
std::uint64_t dim_harmonic(int d, int ell);

/// pi_L = dim of spherical polynomials of degree <= L on S^d; equals the
/// partial sum of dim_harmonic. Exact integers.
std::uint64_t dim_pi(int d, int L);

/// Rotation-invariant kernel K(<x,y>) on S^d, evaluated as a function of the
/// inner product t in [-1, 1]. Implementations are immutable after
/// construction and safe to share across threads.
class ZonalKernel {
public:
    virtual ~ZonalKernel() = default;
    virtual int dim() const = 0;
    virtual int max_degree() const = 0;
    virtual std::uint64_t trace() const = 0;
    virtual double eval(double t) const = 0;
};

/// Reproducing kernel K_L of the spherical polynomials of degree <= L:
/// K_L(t) = (pi_L / binom(L + d/2, L)) P_L^{(1+lambda, lambda)}(t) with
/// lambda = (d-2)/2. Satisfies K_L(1) = pi_L; its determinantal process is
/// the harmonic ensemble with n = pi_L points.
class HarmonicEnsemble final : public ZonalKernel {
public:
    HarmonicEnsemble(int d, int L);

    int dim() const override { return d_; }
    int max_degree() const override { return L_; }
    std::uint64_t trace() const override { return n_; }
    double eval(double t) const override;

    double lambda() const { return lambda_; }
    std::uint64_t point_count() const { return n_; }

private:
    int d_;
    int L_;
    double lambda_;
    std::uint64_t n_;
    double norm_; // pi_L / binom(L + d/2, L)
};

/// Isotropic projection kernel stored as its set of included harmonic
/// degrees; the Schoenberg coefficients are forced to (2l+d-1)/(d-1) on the
/// set and 0 elsewhere, so the degree set is the full description.
/// K(t) = sum_{l in degrees} (2l+d-1)/(d-1) C_l^{(d-1)/2}(t), evaluated with
/// a single Gegenbauer recurrence pass; K(1) equals the trace sum of h_l.
class ProjectionKernel final : public ZonalKernel {
public:
    ProjectionKernel(int d, std::vector<int> degrees);

    static ProjectionKernel harmonic(int d, int L);

    int dim() const override { return d_; }
    int max_degree() const override { return degrees_.empty() ? 0 : degrees_.back(); }
    std::uint64_t trace() const override { return trace_; }
    double eval(double t) const override;

    const std::vector<int>& degrees() const { return degrees_; }
    bool contains(int ell) const;
    /// Schoenberg coefficient a_ell: (2 ell + d - 1)/(d - 1) on the degree
    /// set, 0 otherwise.
    double coefficient(int ell) const;
    bool is_harmonic() const; // degrees form a contiguous block {0, ..., L}

    std::string to_json() const;
    static ProjectionKernel from_json(const std::string& text);

private:
    int d_;
    std::vector<int> degrees_; // sorted, unique
    std::uint64_t trace_;
};

/// All degree subsets of {0, ..., max_degree} whose h_l sum to n, in
/// lexicographic order of the sorted degree lists. An empty list is a valid
/// result (not every n is attainable). If more than `limit` subsets match,
/// enumeration aborts and only `count` is reported (truncated = true).
struct KernelEnumeration {
    std::vector<ProjectionKernel> kernels;
    std::uint64_t count = 0;
    bool truncated = false;
};

KernelEnumeration enumerate_projection_kernels(int d, std::uint64_t n, int max_degree,
                                               std::uint64_t limit = 1000000);

} // namespace sphdpp

#endif
