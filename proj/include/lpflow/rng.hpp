#pragma once

#include <cmath>
#include <cstdint>

namespace lpflow {

/// Identifier of a counter-based random stream. Equal (seed, stream_id)
/// pairs reproduce the same sequence; distinct stream_ids give streams
/// that can be consumed independently by parallel workers.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    RngStream substream(std::uint64_t offset) const {
        return RngStream{seed, stream_id + offset};
    }
};

/// Generator walking a stream. The output at position c is a strong mix of
/// (seed, stream_id, c), so the only state is the counter itself.
class RngEngine {
public:
    explicit RngEngine(RngStream s) : key_(derive_key(s)) {}

    std::uint64_t next_u64() {
        ++counter_;
        return finalize(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform on the open interval (0,1).
    double next_double() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (one value per two uniforms).
    double next_normal() {
        double u1 = next_double();
        double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    /// Rademacher sign.
    double next_sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }
    static std::uint64_t finalize(std::uint64_t z) { return mix(mix(z)); }
    static std::uint64_t derive_key(RngStream s) {
        return mix(s.seed + 0x632be59bd9b4e019ULL) ^ mix(~s.stream_id * 0xd1342543de82ef95ULL + 1);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace lpflow
