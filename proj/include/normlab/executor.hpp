#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "normlab/common.hpp"

namespace normlab {

/// Deterministic fork/join helper. A range [lo, hi) is cut into at most
/// `threads` contiguous chunks; the caller's worker runs once per chunk and
/// the per-chunk results come back in range order, so any fold over them is
/// independent of the thread count. Workers must not touch shared state.
class Executor {
public:
  /// threads == 0 selects std::thread::hardware_concurrency().
  explicit Executor(unsigned threads = 0) {
    if (threads == 0) {
      threads = std::thread::hardware_concurrency();
      if (threads == 0) threads = 1;
    }
    threads_ = threads;
  }

  unsigned threads() const noexcept { return threads_; }

  /// work(chunk_lo, chunk_hi) -> R for each chunk of [lo, hi), results in
  /// range order. The first worker exception, in range order, is rethrown.
  template <typename R, typename Fn>
  std::vector<R> run_chunks(u64 lo, u64 hi, Fn&& work) const {
    if (hi <= lo) return {};
    u64 span = hi - lo;
    u64 nchunks = std::min<u64>(threads_, span);
    std::vector<R> results(nchunks);
    if (nchunks == 1) {
      results[0] = work(lo, hi);
      return results;
    }
    std::vector<std::exception_ptr> errors(nchunks);
    std::vector<std::thread> pool;
    pool.reserve(nchunks);
    u64 chunk = span / nchunks;
    u64 extra = span % nchunks;  // spread the remainder over leading chunks
    u64 start = lo;
    for (u64 i = 0; i < nchunks; ++i) {
      u64 len = chunk + (i < extra ? 1 : 0);
      u64 end = start + len;
      pool.emplace_back([&, i, start, end] {
        try {
          results[i] = work(start, end);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
      start = end;
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    return results;
  }

private:
  unsigned threads_ = 1;
};

}  // namespace normlab
