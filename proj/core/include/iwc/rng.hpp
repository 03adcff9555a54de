#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace iwc {

/// Deterministic stream of random numbers, independent per (root seed, name).
///
/// All distributions are hand-rolled on top of the raw 64-bit output so the
/// number of engine draws per call is fixed across platforms and standard
/// library versions. Each normal() consumes exactly two uniforms (Box-Muller
/// without caching), each uniform one engine step.
class RngStream {
public:
    RngStream() : engine_(0) {}
    RngStream(std::uint64_t root_seed, std::string_view name)
        : engine_(mix(root_seed, fnv1a(name))) {}
    RngStream(std::uint64_t root_seed, std::string_view name, std::uint64_t index)
        : engine_(mix(mix(root_seed, fnv1a(name)), index)) {}

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        return n > 0 ? engine_() % n : 0;
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller; always consumes two uniforms.
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Skew normal with location xi, scale omega, shape alpha
    /// (Azzalini construction from two independent standard normals).
    double skew_normal(double xi, double omega, double alpha) {
        double u0 = normal();
        double u1 = normal();
        double delta = alpha / std::sqrt(1.0 + alpha * alpha);
        double z = delta * std::abs(u0) + std::sqrt(1.0 - delta * delta) * u1;
        return xi + omega * z;
    }

    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        return h;
    }

    /// splitmix64-style combiner.
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9e3779b97f4a7c15ULL + b;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace iwc
