#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kleinian {

// Index-range scan kernels.  The parallel variants partition the range
// across OpenMP threads; merges are associative and tie-break on the lower
// index, so serial and parallel runs produce bit-identical results.  The
// serial variants are the reference implementations the tests and the
// benchmark compare against.
enum class Exec { serial, parallel };

struct MaxScanResult {
  double value = -std::numeric_limits<double>::infinity();
  size_t index = 0;  // first index attaining the maximum
};

namespace detail {

inline void merge_max(MaxScanResult& acc, double value, size_t index) {
  if (value > acc.value || (value == acc.value && index < acc.index)) {
    acc.value = value;
    acc.index = index;
  }
}

}  // namespace detail

// Maximum of fn(i) over i in [0, count) together with the first argmax.
template <class Fn>
MaxScanResult scan_max(size_t count, Exec exec, Fn&& fn) {
  MaxScanResult result;
  result.index = count;
  if (count == 0) return result;
#ifdef _OPENMP
  if (exec == Exec::parallel) {
    const int threads = omp_get_max_threads();
    std::vector<MaxScanResult> partial(threads);
    for (auto& p : partial) p.index = count;
#pragma omp parallel
    {
      const int t = omp_get_thread_num();
      MaxScanResult local;
      local.index = count;
#pragma omp for schedule(static)
      for (long long i = 0; i < static_cast<long long>(count); ++i)
        detail::merge_max(local, fn(static_cast<size_t>(i)),
                          static_cast<size_t>(i));
      partial[t] = local;
    }
    for (const auto& p : partial)
      if (p.index < count) detail::merge_max(result, p.value, p.index);
    return result;
  }
#else
  (void)exec;
#endif
  for (size_t i = 0; i < count; ++i) detail::merge_max(result, fn(i), i);
  return result;
}

// Minimum variant, as a max over negated values.
template <class Fn>
MaxScanResult scan_min(size_t count, Exec exec, Fn&& fn) {
  MaxScanResult neg = scan_max(count, exec, [&](size_t i) { return -fn(i); });
  neg.value = -neg.value;
  return neg;
}

// True when pred(i) holds for every index; early-exits serially.
template <class Pred>
bool scan_all(size_t count, Exec exec, Pred&& pred) {
#ifdef _OPENMP
  if (exec == Exec::parallel) {
    bool ok = true;
#pragma omp parallel for schedule(static) reduction(&& : ok)
    for (long long i = 0; i < static_cast<long long>(count); ++i)
      ok = ok && pred(static_cast<size_t>(i));
    return ok;
  }
#else
  (void)exec;
#endif
  for (size_t i = 0; i < count; ++i)
    if (!pred(i)) return false;
  return true;
}

}  // namespace kleinian
