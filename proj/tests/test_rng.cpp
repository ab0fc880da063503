#include <doctest.h>

#include <vector>

#include "edem/rng.hpp"

using namespace edem;

TEST_CASE("same seed reproduces the identical stream") {
  RandomStream a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds diverge") {
  RandomStream a(1), b(2);
  int same = 0;
  for (int i = 0; i < 100; ++i)
    if (a.next_u64() == b.next_u64()) ++same;
  CHECK(same == 0);
}

TEST_CASE("uniform01 stays in [0,1) and has the right mean") {
  RandomStream rng(7);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("uniform_int is bounded and covers the range") {
  RandomStream rng(9);
  std::vector<int> hits(10, 0);
  for (int i = 0; i < 100000; ++i) ++hits[rng.uniform_int(10)];
  for (int h : hits) CHECK(h > 8000);
}

TEST_CASE("uniform with degenerate bounds consumes a draw and returns lo") {
  RandomStream a(3), b(3);
  CHECK(a.uniform(5.0, 5.0) == 5.0);
  b.next_u64();
  CHECK(a.next_u64() == b.next_u64());  // both streams advanced once
}

TEST_CASE("shuffle is a permutation") {
  RandomStream rng(11);
  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  rng.shuffle(v);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 10; ++i) CHECK(sorted[i] == i);
}
