#include <set>

#include "doctest.h"

#include "contra/random_stream.hpp"

using contra::RandomStream;

TEST_SUITE("random_stream") {

TEST_CASE("splits are deterministic and distinct") {
  const RandomStream root(42);
  CHECK(root.split("control") == RandomStream(42).split("control"));
  CHECK(root.split("control") != root.split("experiment"));
  CHECK(root.split(1) != root.split(2));
  CHECK(root.split("a").split("b") != root.split("b").split("a"));
}

TEST_CASE("chunk engines are independent of call order") {
  const RandomStream s(7);
  auto e3 = s.engine(3);
  auto e0 = s.engine(0);
  auto again3 = s.engine(3);
  CHECK(e3() == again3());
  CHECK(e0() != s.engine(1)());
}

TEST_CASE("study seeds do not collide") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t run = 0; run < 50; ++run) {
    for (int id = 1; id <= 200; ++id) seen.insert(contra::study_seed(run, id));
  }
  CHECK(seen.size() == 50 * 200);
}

TEST_CASE("mix64 is a bijection on a sample") {
  std::set<std::uint64_t> out;
  for (std::uint64_t x = 0; x < 100000; ++x) out.insert(contra::mix64(x));
  CHECK(out.size() == 100000);
}

}  // TEST_SUITE
