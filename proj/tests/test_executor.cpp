#include "doctest.h"

#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "normlab/executor.hpp"

using namespace normlab;

TEST_SUITE("executor") {

TEST_CASE("chunks cover the range contiguously and in order") {
  for (unsigned threads : {1u, 3u, 7u, 64u}) {
    Executor ex(threads);
    auto spans = ex.run_chunks<std::pair<u64, u64>>(
        10, 110, [](u64 lo, u64 hi) { return std::make_pair(lo, hi); });
    CHECK(spans.size() == std::min<u64>(threads, 100));
    CHECK(spans.front().first == 10);
    CHECK(spans.back().second == 110);
    for (std::size_t i = 1; i < spans.size(); ++i)
      CHECK(spans[i].first == spans[i - 1].second);
  }
}

TEST_CASE("fold over chunk results is thread-count independent") {
  auto sum_range = [](u64 lo, u64 hi) {
    u64 s = 0;
    for (u64 i = lo; i < hi; ++i) s += i;
    return s;
  };
  u64 expected = Executor(1).run_chunks<u64>(0, 100, sum_range)[0];
  CHECK(expected == 4950);
  for (unsigned threads : {2u, 5u, 16u, 99u, 200u}) {
    auto parts = Executor(threads).run_chunks<u64>(0, 100, sum_range);
    CHECK(std::accumulate(parts.begin(), parts.end(), u64{0}) == expected);
  }
}

TEST_CASE("empty and single-element ranges") {
  Executor ex(8);
  auto none = ex.run_chunks<u64>(5, 5, [](u64, u64) { return u64{1}; });
  CHECK(none.empty());
  auto one = ex.run_chunks<u64>(5, 6, [](u64 lo, u64 hi) { return hi - lo; });
  CHECK(one.size() == 1);
  CHECK(one[0] == 1);
}

TEST_CASE("worker exceptions propagate to the caller") {
  Executor ex(4);
  auto boom = [](u64 lo, u64) -> u64 {
    if (lo >= 50) throw std::runtime_error("chunk failed");
    return 0;
  };
  CHECK_THROWS_AS(ex.run_chunks<u64>(0, 100, boom), std::runtime_error);
}

TEST_CASE("thread count resolution") {
  CHECK(Executor(3).threads() == 3);
  CHECK(Executor(0).threads() >= 1);  // hardware concurrency fallback
}

} // TEST_SUITE
