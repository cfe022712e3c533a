#include "liespec/parallel.hpp"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace liespec::parallel {

namespace {

int detect_default() {
  if (const char* env = std::getenv("LIESPEC_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::atomic<int>& slot() {
  static std::atomic<int> threads{detect_default()};
  return threads;
}

}  // namespace

int max_threads() { return slot().load(); }

void set_max_threads(int threads) { slot().store(threads < 1 ? 1 : threads); }

}  // namespace liespec::parallel
