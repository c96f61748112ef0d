// Copyright 2026 The spoofprint Authors.
//
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

#ifndef SPOOFPRINT_EXECUTION_H_
#define SPOOFPRINT_EXECUTION_H_

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spoofprint {

// Selects between the OpenMP loop and the serial reference loop of a kernel.
// Both produce bit-identical results: every output element is computed by a
// single thread in a fixed order.
enum class Execution { kSerial, kParallel };

inline int MaxThreads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void SetNumThreads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace spoofprint

#endif  // SPOOFPRINT_EXECUTION_H_
