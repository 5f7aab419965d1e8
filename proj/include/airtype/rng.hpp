#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace airtype {

// 64-bit finalizer (splitmix64 step), used to whiten derived seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Builds one seed out of heterogeneous components (integers, doubles,
// names). Doubles are hashed by bit pattern and strings byte-wise
// (FNV-1a), so a derived stream is pinned by the component values alone.
class SeedChain {
public:
    SeedChain& mix(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            step(static_cast<unsigned char>(v & 0xff));
            v >>= 8;
        }
        return *this;
    }
    SeedChain& mix(std::int64_t v) { return mix(static_cast<std::uint64_t>(v)); }
    SeedChain& mix(int v) { return mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))); }
    SeedChain& mix(double v) { return mix(std::bit_cast<std::uint64_t>(v)); }
    SeedChain& mix(std::string_view s) {
        for (char c : s) step(static_cast<unsigned char>(c));
        step(0);  // terminator so ("ab","c") and ("a","bc") differ
        return *this;
    }
    std::uint64_t value() const { return splitmix64(hash_); }

private:
    void step(unsigned char b) {
        hash_ ^= b;
        hash_ *= 0x100000001b3ull;
    }
    std::uint64_t hash_ = 0xcbf29ce484222325ull;  // FNV-1a offset basis
};

// Deterministic random stream. Gaussian variates come from an explicit
// Box-Muller transform rather than std::normal_distribution, whose output
// sequence is implementation defined; mt19937_64 itself is pinned by the
// standard, so a given seed reproduces bit-identical draws everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Standard normal N(0, 1).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u = 1.0 - uniform();  // (0, 1], keeps log() finite
        const double v = uniform();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double t = 2.0 * std::numbers::pi * v;
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    // Circularly symmetric complex Gaussian with total power `power`
    // (power/2 per real dimension).
    std::complex<double> cnormal(double power) {
        const double s = std::sqrt(power / 2.0);
        const double re = normal();
        const double im = normal();
        return {s * re, s * im};
    }

    // Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) { return eng_() % n; }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace airtype
