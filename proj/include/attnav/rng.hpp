#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace attnav {

// Deterministic splittable RNG. Every random stream in the pipeline derives
// from a single global seed through named/indexed child streams, so whole-run
// reproducibility only depends on that one seed.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

    // Child stream keyed by name; does not advance this stream.
    Rng derive(std::string_view name) const {
        return Rng(raw(mix(state_ ^ fnv1a(name))));
    }
    // Child stream keyed by counter (per-episode, per-worker, ...).
    Rng derive(uint64_t index) const {
        return Rng(raw(mix(state_ ^ (0x94d049bb133111ebull * (index + 1)))));
    }

    uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    // Uniform in [0,1), 53-bit resolution.
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0,n), rejection-sampled (no modulo bias).
    int uniform_int(int n) {
        uint64_t un = static_cast<uint64_t>(n);
        uint64_t limit = UINT64_MAX - UINT64_MAX % un;
        uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return static_cast<int>(v % un);
    }

    // Box-Muller; stateless per call for reproducibility under stream copies.
    double gaussian() {
        double u1 = std::max(uniform(), 0x1.0p-60);
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(uniform_int(static_cast<int>(i)));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    struct raw {
        uint64_t v;
        explicit raw(uint64_t v) : v(v) {}
    };
    explicit Rng(raw r) : state_(r.v) {}

    static uint64_t mix(uint64_t z) {
        // splitmix64 finalizer
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    static uint64_t fnv1a(std::string_view s) {
        uint64_t h = 0xcbf29ce484222325ull;
        for (char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ull;
        }
        return h;
    }

    uint64_t state_;
};

}  // namespace attnav
