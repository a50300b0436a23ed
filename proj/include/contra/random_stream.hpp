#ifndef CONTRA_RANDOM_STREAM_HPP_
#define CONTRA_RANDOM_STREAM_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace contra {

// Number of draws generated from one engine. Work is split on chunk
// boundaries, never on thread boundaries, so output does not depend on the
// number of worker threads.
inline constexpr std::size_t kChunkSize = 4096;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// A splittable, keyed source of independent engines.
//
// A stream is just a 64-bit key. Child streams are derived by hashing the key
// with a tag, and the engine for chunk `c` is seeded from hash(key, c). Two
// streams with different derivation paths are statistically independent for
// all practical purposes.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : key_(mix64(key ^ 0x636f6e747261ULL)) {}

  RandomStream split(std::uint64_t tag) const;
  RandomStream split(std::string_view tag) const;

  // Engine for the given chunk index.
  std::mt19937_64 engine(std::uint64_t chunk) const;

  std::uint64_t key() const { return key_; }

  friend bool operator==(const RandomStream&, const RandomStream&) = default;

 private:
  struct RawKey {};
  RandomStream(std::uint64_t key, RawKey) : key_(key) {}

  std::uint64_t key_;
};

// Seed for one study of an analysis run: hash of (run seed, study id).
std::uint64_t study_seed(std::uint64_t run_seed, int study_id);

}  // namespace contra

#endif  // CONTRA_RANDOM_STREAM_HPP_
