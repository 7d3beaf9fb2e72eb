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

#include "bornlab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bornlab {

namespace {
std::atomic<int> override_threads{-1};
}

int thread_count() {
#ifdef _OPENMP
    int n = override_threads.load();
    if (n < 0) {
        n = 0;
        if (const char *env = std::getenv("BORN_LAB_THREADS")) {
            try {
                n = std::stoi(env);
            } catch (...) {
                n = 0;
            }
        }
    }
    return n > 0 ? n : omp_get_max_threads();
#else
    return 1;
#endif
}

void set_thread_count(int n) {
    override_threads.store(n <= 0 ? -1 : n);
}

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

}  // namespace bornlab
