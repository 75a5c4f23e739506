#pragma once

#include <exception>
#include <vector>

namespace fracdiff {

// OpenMP loop over [0, n) that rethrows the exception of the lowest failing
// index, so the error surfaced does not depend on the thread schedule.
template <class F>
void parallel_for(int n, F&& body) {
  std::vector<std::exception_ptr> err(n);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      err[i] = std::current_exception();
    }
  }
  for (auto& e : err)
    if (e) std::rethrow_exception(e);
}

}  // namespace fracdiff
