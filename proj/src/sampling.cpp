#include "sphdpp/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "sphdpp/errors.hpp"

namespace sphdpp {

namespace {

constexpr std::uint64_t kMaxConsecutiveRejects = 1000000;
constexpr double kEnvelopeSlack = 1e-8;
constexpr double kPivotFloor = 1e-10;

void draw_unit_vector(int d, RandomStream& rng, double* out) {
    for (;;) {
        double norm2 = 0.0;
        for (int k = 0; k <= d; ++k) {
            out[k] = rng.normal();
            norm2 += out[k] * out[k];
        }
        if (norm2 > 1e-24) {
            const double inv = 1.0 / std::sqrt(norm2);
            for (int k = 0; k <= d; ++k) out[k] *= inv;
            return;
        }
    }
}

} // namespace

PointConfiguration sample_uniform(int d, std::size_t n, RngStream stream) {
    if (d < 2) throw std::domain_error("sample_uniform: d must be >= 2");
    if (n == 0) throw std::domain_error("sample_uniform: n must be >= 1");
    RandomStream rng(stream);
    PointConfiguration config(d, n);
    for (std::size_t i = 0; i < n; ++i) draw_unit_vector(d, rng, config.point(i).data());
    return config;
}

PointConfiguration sample_dpp(const ZonalKernel& kernel, RngStream stream, DppDiagnostics* diag) {
    const int d = kernel.dim();
    const std::uint64_t trace = kernel.trace();
    if (trace == 0) throw std::domain_error("sample_dpp: kernel trace must be >= 1");
    const std::size_t n = static_cast<std::size_t>(trace);
    const double nf = static_cast<double>(trace);

    RandomStream rng(stream);
    PointConfiguration config(d, n);

    // Lower-triangular Cholesky factor of the Gram matrix [K(x_a, x_b)],
    // extended one row per accepted point.  chol[i*n + j], j <= i.
    std::vector<double> chol(n * n, 0.0);
    std::vector<double> kx(n), w(n), candidate(d + 1);

    DppDiagnostics local;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t rejects = 0;
        double v = 0.0;
        for (;;) {
            ++local.proposals;
            draw_unit_vector(d, rng, candidate.data());

            // v_i(x) = k_x^T G_i^{-1} k_x via one forward substitution.
            for (std::size_t j = 0; j < i; ++j) {
                const double* pj = config.point(j).data();
                double t = 0.0;
                for (int c = 0; c <= d; ++c) t += pj[c] * candidate[c];
                kx[j] = kernel.eval(t);
            }
            v = 0.0;
            for (std::size_t j = 0; j < i; ++j) {
                double s = kx[j];
                const double* row = &chol[j * n];
                for (std::size_t c = 0; c < j; ++c) s -= row[c] * w[c];
                const double wj = s / chol[j * n + j];
                w[j] = wj;
                v += wj * wj;
            }

            if (v > nf * (1.0 + kEnvelopeSlack))
                throw DegeneracyError("sample_dpp: conditional density negative beyond slack");
            if (v > nf) {
                local.max_envelope_violation = std::max(local.max_envelope_violation, v / nf - 1.0);
                v = nf;
            } else if (v < 0.0) {
                v = 0.0;
            }

            // Accept with probability p_i(x) (n - i)/n = 1 - v/n.
            if (rng.uniform() < 1.0 - v / nf) break;
            if (++rejects >= kMaxConsecutiveRejects)
                throw SamplerStallError("sample_dpp: rejection sampler exceeded proposal budget");
        }

        const double pivot2 = nf - v;
        if (pivot2 < kPivotFloor * nf)
            throw DegeneracyError("sample_dpp: Gram factor pivot below floor");
        double* row = &chol[i * n];
        for (std::size_t j = 0; j < i; ++j) row[j] = w[j];
        row[i] = std::sqrt(pivot2);
        auto dst = config.point(i);
        for (int c = 0; c <= d; ++c) dst[c] = candidate[c];
    }

    if (diag) *diag = local;
    return config;
}

} // namespace sphdpp
