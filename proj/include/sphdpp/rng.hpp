#ifndef SPHDPP_RNG_HPP
#define SPHDPP_RNG_HPP

#include <cstdint>
#include <random>

namespace sphdpp {

/// Identifies a reproducible random stream. Identical (seed, stream_id)
/// always produces the identical sequence, independent of scheduling and
/// platform; Monte Carlo trial t conventionally uses stream_id = base + t.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    RngStream with_stream(std::uint64_t id) const { return {seed, id}; }
};

/// Deterministic generator (mt19937_64 core, own uniform/normal transforms
/// so that output is bit-identical across standard libraries).
class RandomStream {
public:
    explicit RandomStream(RngStream s) {
        std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                          static_cast<std::uint32_t>(s.stream_id),
                          static_cast<std::uint32_t>(s.stream_id >> 32)};
        gen_.seed(seq);
    }

    std::uint64_t bits() { return gen_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; consumes two uniforms per pair.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53; // (0, 1]
        const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace sphdpp

#endif
