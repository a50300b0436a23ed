#include "contra/random_stream.hpp"

namespace contra {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

// FNV-1a, enough to turn short role tags into 64-bit words.
std::uint64_t hash_tag(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

RandomStream RandomStream::split(std::uint64_t tag) const {
  return RandomStream(mix64(key_ ^ mix64(tag + 0x5bd1e995ULL)), RawKey{});
}

RandomStream RandomStream::split(std::string_view tag) const {
  return split(hash_tag(tag));
}

std::mt19937_64 RandomStream::engine(std::uint64_t chunk) const {
  return std::mt19937_64(mix64(key_ + mix64(chunk)));
}

std::uint64_t study_seed(std::uint64_t run_seed, int study_id) {
  return mix64(mix64(run_seed) ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(study_id)));
}

}  // namespace contra
