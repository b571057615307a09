#pragma once

#include <exception>
#include <mutex>

namespace holo::detail {

// Steps per work unit of the chunked ordered products. Fixed so that the
// association order, and hence every rounding, is thread-count independent.
inline constexpr long kChunk = 512;

inline double grid(long a, long N) { return static_cast<double>(a) / static_cast<double>(N); }

// Exceptions may not cross an OpenMP region; keep the first one and rethrow
// it after the loop.
class ParallelErrors {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu_);
      if (!first_) first_ = std::current_exception();
    }
  }
  void rethrow() {
    if (first_) std::rethrow_exception(first_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr first_;
};

}  // namespace holo::detail
