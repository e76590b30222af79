#pragma once

#include <cmath>
#include <cstdint>

namespace brw {

/// Counter-based generator: draw i of a stream is mix(key + i*GAMMA), so any
/// (seed, replicate, particle) stream is reproducible independently of
/// scheduling or thread count.
inline uint64_t mix64(uint64_t z) {
    // Stafford mix13 finalizer
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ull;

inline uint64_t stream_key(uint64_t seed, uint64_t a, uint64_t b = 0) {
    uint64_t k = mix64(seed + 0x632BE59BD9B4E019ull);
    k = mix64(k ^ (a + 1) * kGamma);
    return mix64(k ^ (b + 1) * 0xD1342543DE82EF95ull);
}

class CounterRng {
  public:
    explicit CounterRng(uint64_t key) : key_(key) {}

    uint64_t next_u64() { return mix64(key_ + (++ctr_) * kGamma); }

    /// uniform on [0,1)
    double next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }

    double next_exp(double rate) { return -std::log1p(-next_unit()) / rate; }

  private:
    uint64_t key_;
    uint64_t ctr_ = 0;
};

}  // namespace brw
