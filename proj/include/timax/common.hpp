#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace timax {

using NodeId = std::uint32_t;
using Timestamp = std::int64_t;

// Half-open time interval [start, end) in dataset-native units.
struct Horizon {
    Timestamp start = 0;
    Timestamp end = 0;

    Timestamp span() const { return end - start; }
    bool contains(Timestamp t) const { return t >= start && t < end; }
};

// Bad caller input (CLI exit code 2).
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// File system / parse failures (CLI exit code 3).
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Refusal of a gated large computation (CLI exit code 4).
class GuardError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace rng {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer; bijective mixing of a 64-bit word.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// k-th word of the SplitMix64 stream with the given seed.
inline std::uint64_t at(std::uint64_t seed, std::uint64_t k) {
    return mix64(seed + (k + 1) * kGamma);
}

inline double to_unit(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Uniform draw in [0,1) addressed by (seed, counter). Position-addressed so
// that two simulations with different control flow still see the same draw
// for the same counter value; this is what makes common-random-number
// comparisons between models and seed sets exact.
inline double unit_at(std::uint64_t seed, std::uint64_t counter) {
    return to_unit(at(seed, counter));
}

// Derive an independent stream seed for auxiliary draws.
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed ^ mix64(tag ^ kGamma));
}

// Sequential deterministic generator. Distributions are implemented by hand
// so results do not depend on the standard library vendor.
class SplitMix {
  public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += kGamma;
        return mix64(state_);
    }

    double unit() { return to_unit(next()); }

    // Uniform integer in [0, n); n must be >= 1.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

  private:
    std::uint64_t state_;
};

}  // namespace rng
}  // namespace timax
