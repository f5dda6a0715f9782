#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cutcover {

// Error hierarchy. Everything the library throws on bad input derives from
// Error; ContractViolation signals a caller bug (or an internal one).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};
struct SizeError : Error {
  using Error::Error;
};
struct InfeasibleError : Error {
  using Error::Error;
};
struct BudgetExceeded : Error {
  using Error::Error;
};
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

#define CUTCOVER_CHECK(cond, msg)                                     \
  do {                                                                \
    if (!(cond)) throw ::cutcover::ContractViolation(std::string(msg)); \
  } while (0)

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Randomness: a counter-based generator. Every draw is splitmix64 applied to
// (seed, stream, counter), so results depend only on the seed and the order of
// draws within a stream, never on platform or threading.

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t next_u64() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  // Uniform integer in [0, bound) by rejection (no modulo bias).
  std::uint64_t uniform_int(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do {
      r = next_u64();
    } while (r >= limit);
    return r % bound;
  }

  // Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  CounterRng substream(std::uint64_t tag) const {
    CounterRng r(0);
    r.key_ = mix64(key_ ^ mix64(tag + 0x2545f4914f6cdd1dULL));
    return r;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// ---------------------------------------------------------------------------
// Data-parallel loops. Bodies write only to their own index, and all floating
// reductions run sequentially in index order, so results are bitwise
// identical for every worker count.

namespace detail {
inline std::atomic<int>& worker_count_ref() {
  static std::atomic<int> count{1};
  return count;
}
}  // namespace detail

inline void set_worker_count(int workers) {
  detail::worker_count_ref().store(std::max(1, workers));
}
inline int worker_count() { return detail::worker_count_ref().load(); }

template <class Fn>
void parallel_for(std::size_t begin, std::size_t end, Fn&& fn,
                  std::size_t grain = 4096) {
  const std::size_t total = end > begin ? end - begin : 0;
  const int workers = worker_count();
  if (workers <= 1 || total < 2 * grain) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  const std::size_t chunks =
      std::min<std::size_t>(static_cast<std::size_t>(workers), total / grain);
  std::vector<std::thread> pool;
  pool.reserve(chunks - 1);
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto run = [&](std::size_t c) {
    try {
      const std::size_t lo = begin + total * c / chunks;
      const std::size_t hi = begin + total * (c + 1) / chunks;
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> guard(failure_lock);
      if (!failure) failure = std::current_exception();
    }
  };
  for (std::size_t c = 1; c < chunks; ++c) pool.emplace_back(run, c);
  run(0);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace cutcover
