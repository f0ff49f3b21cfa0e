#pragma once

#include <cstdint>

namespace pottslab {

// Counter-based generator: output depends only on (seed, stream, counter),
// so replicas are reproducible independently of scheduling. The mix is
// two rounds of the splitmix64 finalizer over the keyed counter.
class RngStream {
public:
    RngStream(uint64_t seed, uint64_t stream)
        : key_(mix(seed ^ mix(stream ^ 0x9E3779B97F4A7C15ULL))), counter_(0) {}

    uint64_t next_u64() {
        uint64_t z = key_ + 0x9E3779B97F4A7C15ULL * ++counter_;
        return mix(mix(z));
    }

    // uniform in [0, 1), 53-bit resolution
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform in {0, 1, ..., bound-1}, bound >= 1
    uint64_t next_below(uint64_t bound) {
        // rejection to avoid modulo bias
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    bool next_bernoulli(double p) { return next_double() < p; }

    uint64_t draws() const { return counter_; }

private:
    static uint64_t mix(uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    uint64_t key_;
    uint64_t counter_;
};

} // namespace pottslab
