#include "sphdpp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sphdpp/specfun.hpp"

namespace sphdpp {

namespace {

using u128 = unsigned __int128;

// Exact binomial; every intermediate b is itself a binomial coefficient.
u128 binom_u128(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    u128 b = 1;
    for (int i = 1; i <= k; ++i) b = b * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    return b;
}

std::uint64_t to_u64(u128 v, const char* what) {
    if (v > static_cast<u128>(std::numeric_limits<std::uint64_t>::max()))
        throw std::overflow_error(std::string(what) + ": value exceeds 64 bits");
    return static_cast<std::uint64_t>(v);
}

} // namespace

std::uint64_t dim_harmonic(int d, int ell) {
    if (d < 2) throw std::domain_error("dim_harmonic: d must be >= 2");
    if (ell < 0) throw std::domain_error("dim_harmonic: degree must be >= 0");
    // h_ell = binom(ell+d-1, ell) + binom(ell+d-2, ell-1)
    //       = ((2 ell + d - 1)/(ell + d - 1)) binom(ell+d-1, ell)
    const u128 h = binom_u128(ell + d - 1, ell) + binom_u128(ell + d - 2, ell - 1);
    return to_u64(h, "dim_harmonic");
}

std::uint64_t dim_pi(int d, int L) {
    if (d < 2) throw std::domain_error("dim_pi: d must be >= 2");
    if (L < 0) throw std::domain_error("dim_pi: degree must be >= 0");
    // pi_L = binom(d+L, L) + binom(d+L-1, L-1) = ((2L+d)/d) binom(d+L-1, L)
    const u128 p = binom_u128(d + L, L) + binom_u128(d + L - 1, L - 1);
    return to_u64(p, "dim_pi");
}

HarmonicEnsemble::HarmonicEnsemble(int d, int L) : d_(d), L_(L) {
    if (d < 2) throw std::domain_error("HarmonicEnsemble: d must be >= 2");
    if (L < 0) throw std::domain_error("HarmonicEnsemble: L must be >= 0");
    lambda_ = 0.5 * (d - 2);
    n_ = dim_pi(d, L);
    const double ln_binom =
        ln_gamma(L + 0.5 * d + 1.0) - ln_gamma(L + 1.0) - ln_gamma(0.5 * d + 1.0);
    norm_ = static_cast<double>(n_) * std::exp(-ln_binom);
}

double HarmonicEnsemble::eval(double t) const {
    return norm_ * jacobi_eval(1.0 + lambda_, lambda_, L_, t);
}

ProjectionKernel::ProjectionKernel(int d, std::vector<int> degrees)
    : d_(d), degrees_(std::move(degrees)) {
    if (d < 2) throw std::domain_error("ProjectionKernel: d must be >= 2");
    if (degrees_.empty())
        throw std::domain_error("ProjectionKernel: degree set must be non-empty");
    std::sort(degrees_.begin(), degrees_.end());
    degrees_.erase(std::unique(degrees_.begin(), degrees_.end()), degrees_.end());
    if (degrees_.front() < 0)
        throw std::domain_error("ProjectionKernel: degrees must be non-negative");
    u128 tr = 0;
    for (int ell : degrees_) tr += dim_harmonic(d_, ell);
    trace_ = to_u64(tr, "ProjectionKernel trace");
}

ProjectionKernel ProjectionKernel::harmonic(int d, int L) {
    std::vector<int> degrees(L + 1);
    for (int ell = 0; ell <= L; ++ell) degrees[ell] = ell;
    return ProjectionKernel(d, std::move(degrees));
}

double ProjectionKernel::eval(double t) const {
    // One recurrence pass up to the max degree, picking out set members.
    const double lambda = 0.5 * (d_ - 1);
    const int top = degrees_.back();
    double sum = 0.0;
    std::size_t idx = 0;
    double prev = 0.0, cur = 1.0; // C_0 = 1
    for (int k = 0; k <= top; ++k) {
        if (k >= 1) {
            const double next =
                (k == 1) ? 2.0 * lambda * t
                         : (2.0 * t * (k + lambda - 1.0) * cur - (k + 2.0 * lambda - 2.0) * prev) /
                               k;
            prev = cur;
            cur = next;
        }
        if (idx < degrees_.size() && degrees_[idx] == k) {
            sum += (2.0 * k + d_ - 1.0) / (d_ - 1.0) * cur;
            ++idx;
        }
    }
    return sum;
}

bool ProjectionKernel::contains(int ell) const {
    return std::binary_search(degrees_.begin(), degrees_.end(), ell);
}

double ProjectionKernel::coefficient(int ell) const {
    return contains(ell) ? (2.0 * ell + d_ - 1.0) / (d_ - 1.0) : 0.0;
}

bool ProjectionKernel::is_harmonic() const {
    return degrees_.front() == 0 &&
           degrees_.back() == static_cast<int>(degrees_.size()) - 1;
}

std::string ProjectionKernel::to_json() const {
    nlohmann::json j;
    j["d"] = d_;
    if (is_harmonic())
        j["L"] = degrees_.back();
    else
        j["degrees"] = degrees_;
    return j.dump();
}

ProjectionKernel ProjectionKernel::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    const int d = j.at("d").get<int>();
    if (j.contains("L")) {
        return ProjectionKernel::harmonic(d, j.at("L").get<int>());
    }
    return ProjectionKernel(d, j.at("degrees").get<std::vector<int>>());
}

namespace {

// Depth-first subset-sum over the (strictly increasing) h_ell values.
// visit() is called with the degree list of every exact match.
template <typename Visit>
void subset_sum_dfs(const std::vector<std::uint64_t>& h, const std::vector<std::uint64_t>& suffix,
                    std::size_t from, std::uint64_t remaining, std::vector<int>& stack,
                    Visit&& visit) {
    if (remaining == 0) {
        visit(stack);
        return;
    }
    for (std::size_t ell = from; ell < h.size(); ++ell) {
        if (h[ell] > remaining) break;        // h is increasing in ell
        if (suffix[ell] < remaining) return;  // even taking everything is short
        stack.push_back(static_cast<int>(ell));
        subset_sum_dfs(h, suffix, ell + 1, remaining - h[ell], stack, visit);
        stack.pop_back();
    }
}

} // namespace

KernelEnumeration enumerate_projection_kernels(int d, std::uint64_t n, int max_degree,
                                               std::uint64_t limit) {
    if (max_degree < 0)
        throw std::domain_error("enumerate_projection_kernels: max_degree must be >= 0");
    if (n == 0)
        throw std::domain_error("enumerate_projection_kernels: trace must be positive");

    std::vector<std::uint64_t> h(max_degree + 1);
    for (int ell = 0; ell <= max_degree; ++ell) h[ell] = dim_harmonic(d, ell);
    std::vector<std::uint64_t> suffix(h.size());
    std::uint64_t acc = 0;
    for (std::size_t i = h.size(); i-- > 0;) {
        acc += h[i];
        suffix[i] = acc;
    }

    KernelEnumeration result;
    std::vector<int> stack;
    subset_sum_dfs(h, suffix, 0, n, stack, [&](const std::vector<int>&) { ++result.count; });
    if (result.count > limit) {
        result.truncated = true;
        return result;
    }
    result.kernels.reserve(result.count);
    subset_sum_dfs(h, suffix, 0, n, stack, [&](const std::vector<int>& degrees) {
        result.kernels.emplace_back(d, degrees);
    });
    return result;
}

} // namespace sphdpp
