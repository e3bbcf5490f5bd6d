#pragma once

// Exceptions must not escape an OpenMP region. Loop bodies capture them here
// and the lowest-index one is rethrown after the loop, as a serial run would.

#include <cstddef>
#include <exception>

namespace geomech {

class ParallelErrors {
 public:
  void capture(std::ptrdiff_t index) noexcept {
#pragma omp critical(geomech_parallel_errors)
    {
      if (!first_ || index < index_) {
        first_ = std::current_exception();
        index_ = index;
      }
    }
  }

  void rethrow() const {
    if (first_) std::rethrow_exception(first_);
  }

 private:
  std::exception_ptr first_;
  std::ptrdiff_t index_ = 0;
};

}  // namespace geomech
