#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace thetapath {

/// The one random source used everywhere. The engine is std::mt19937_64,
/// whose output sequence is fixed by the C++ standard; uniforms and normals
/// are derived here (not via <random> distributions, whose outputs are
/// implementation defined) so streams are identical across platforms.
class Rng {
public:
    static constexpr std::string_view kAlgorithm = "mt19937_64+box-muller/v1";

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer on [0, n).
    std::uint64_t below(std::uint64_t n);
    /// Standard normal, Box–Muller with a cached second variate.
    double normal();

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
    std::uint64_t stream_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace thetapath
