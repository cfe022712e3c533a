#ifndef LIESPEC_PARALLEL_HPP
#define LIESPEC_PARALLEL_HPP

namespace liespec::parallel {

/// Worker count for the OpenMP kernels. Defaults to LIESPEC_THREADS from
/// the environment, else the OpenMP maximum, else 1. The parallel and
/// serial kernels produce bit-identical results.
int max_threads();
void set_max_threads(int threads);
inline bool enabled() { return max_threads() > 1; }

}  // namespace liespec::parallel

#endif
