#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace fuserl {

/// Deterministic random stream. All sampling is implemented on top of the
/// raw 64-bit mt19937_64 output so that results do not depend on the
/// standard library's distribution implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t nextU64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniformRange(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Box-Muller transform; draws two uniforms per sample.
  double normal(double mean = 0.0, double stddev = 1.0) {
    double u1 = uniform01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log1p(-u1));
    return mean + stddev * r * std::cos(6.283185307179586476925286766559 * u2);
  }

  /// Exponential with the given mean (inverse CDF).
  double exponential(double mean) { return -mean * std::log1p(-uniform01()); }

  bool bernoulli(double p) { return uniform01() < p; }

  std::string serialize() const;
  static RngStream deserialize(const std::string& text);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t mix64(std::uint64_t x);

/// Stable substream derivation: hashes (seed, a, b, c) into a fresh seed.
std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                         std::uint64_t c = 0);

inline RngStream deriveStream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                              std::uint64_t c = 0) {
  return RngStream(deriveSeed(seed, a, b, c));
}

/// Named stream purposes; part of the reproducibility contract (datasets are
/// replayable only if these ids stay stable).
namespace streams {
inline constexpr std::uint64_t kUserInit = 1;
inline constexpr std::uint64_t kCandidates = 2;
inline constexpr std::uint64_t kFeedback = 3;
inline constexpr std::uint64_t kContinue = 4;
inline constexpr std::uint64_t kExplore = 5;
inline constexpr std::uint64_t kShuffle = 6;
inline constexpr std::uint64_t kNetInit = 7;
inline constexpr std::uint64_t kBootstrap = 8;
inline constexpr std::uint64_t kCollectRound = 9;
inline constexpr std::uint64_t kTrainRound = 10;
inline constexpr std::uint64_t kEvalSessions = 11;
}  // namespace streams

}  // namespace fuserl
