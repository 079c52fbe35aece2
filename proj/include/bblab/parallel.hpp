// Copyright 2026 The bblab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BBLAB_PARALLEL_HPP_
#define BBLAB_PARALLEL_HPP_

#include <cstddef>
#include <exception>
#include <limits>

namespace bblab {

// Every data-parallel kernel takes one of these. kSerial is the reference
// path the tests compare against; both must produce identical results.
enum class Execution { kSerial, kParallel };

int MaxThreads();

// Calls fn(i) for i in [0, count). In parallel mode iterations run under an
// OpenMP dynamic schedule; fn must only write to slot i of its outputs. The
// exception thrown by the lowest failing index is rethrown afterwards.
template <typename Fn>
void ForEachIndex(Execution execution, std::size_t count, Fn&& fn) {
  if (execution == Execution::kSerial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::size_t error_index = std::numeric_limits<std::size_t>::max();
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(bblab_for_each_error)
      {
        if (static_cast<std::size_t>(i) < error_index) {
          error_index = static_cast<std::size_t>(i);
          error = std::current_exception();
        }
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace bblab

#endif  // BBLAB_PARALLEL_HPP_
