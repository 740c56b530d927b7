#pragma once

#include <cstdint>
#include <random>

namespace smmc {

/// splitmix64 finalizer; the standard 64-bit mixing function used to derive
/// well-separated stream seeds from structured keys.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based substream derivation: every (master seed, SNR-grid index,
/// replication) triple owns an independent stream, so results do not depend
/// on worker count or scheduling.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t snr_index,
                                       std::uint64_t replication) {
    std::uint64_t s = mix64(master);
    s = mix64(s ^ (snr_index + 0x100000001b3ULL));
    s = mix64(s ^ (replication + 0xcbf29ce484222325ULL));
    return s;
}

/// One deterministic random stream: a seeded engine plus the cached state of
/// the normal-variate generator. Never share a stream across workers.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Standard normal variate.
    double gauss() { return normal_(engine_); }
    /// 64 uniform random bits.
    std::uint64_t bits() { return engine_(); }
    /// Uniform double in [0,1).
    double uniform() { return std::generate_canonical<double, 53>(engine_); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace smmc
