#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <span>
#include <vector>

#include <omp.h>

namespace hadamard::parallel {

// Every kernel exists twice: an OpenMP version and a plain loop kept as the
// reference. Results are written into preallocated slots indexed by the work
// item, and reductions run over the finished vector in index order, so both
// versions produce bit-identical output whatever the thread count.

namespace detail {

class ErrorSlot {
 public:
  void capture() {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!error_) error_ = std::current_exception();
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

}  // namespace detail

template <class T, class Fn>
std::vector<T> map_serial(std::size_t count, Fn&& fn) {
  std::vector<T> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
  return out;
}

template <class T, class Fn>
std::vector<T> map(std::size_t count, Fn&& fn) {
  std::vector<T> out(count);
  detail::ErrorSlot error;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
      error.capture();
    }
  }
  error.rethrow();
  return out;
}

// Pairwise (cascade) summation; the split points depend only on the length.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

inline double max_of(std::span<const double> v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  return m;
}

inline double min_of(std::span<const double> v) {
  double m = std::numeric_limits<double>::infinity();
  for (double x : v) m = std::min(m, x);
  return m;
}

inline int thread_count() { return omp_get_max_threads(); }

}  // namespace hadamard::parallel
