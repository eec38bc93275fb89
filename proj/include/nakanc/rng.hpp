#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace nakanc {

/// Mixes a root seed with a key into an independent 64-bit seed
/// (splitmix64 finalizer applied twice). Used to split substreams.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t key) noexcept;

/// FNV-1a over a byte string; stable across platforms, used for cell keys.
std::uint64_t stable_hash(std::string_view text) noexcept;

/// One deterministic random stream. Never shared between workers.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() { return normal_(engine_); }

  bool bit() noexcept { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace nakanc
