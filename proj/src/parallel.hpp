#pragma once

#include <cstddef>
#include <exception>
#include <limits>

namespace streambias::detail {

// Exceptions may not leave an OpenMP region. Collects the one thrown at the
// lowest iteration index so the rethrown error does not depend on scheduling.
class ExceptionSink {
 public:
  template <class F>
  void run(std::size_t index, F&& body) noexcept {
    try {
      body();
    } catch (...) {
#pragma omp critical(streambias_exception_sink)
      {
        if (index < index_) {
          index_ = index;
          error_ = std::current_exception();
        }
      }
    }
  }

  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::size_t index_ = std::numeric_limits<std::size_t>::max();
  std::exception_ptr error_;
};

}  // namespace streambias::detail
