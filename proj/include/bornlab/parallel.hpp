// Copyright 2026 The born-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BORNLAB_PARALLEL_HPP
#define BORNLAB_PARALLEL_HPP

namespace bornlab {

/// Worker count for the OpenMP kernels: BORN_LAB_THREADS when set and
/// positive, otherwise the OpenMP default. Always 1 without OpenMP.
int thread_count();

/// Overrides BORN_LAB_THREADS for the current process; 0 restores auto.
void set_thread_count(int n);

bool openmp_enabled();

}  // namespace bornlab

#endif
