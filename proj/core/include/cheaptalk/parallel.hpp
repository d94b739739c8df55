// Copyright 2026 The cheaptalk Authors
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

#ifndef CHEAPTALK_PARALLEL_HPP_
#define CHEAPTALK_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace cheaptalk {

// Worker cap shared by every parallel loop. Defaults to the value of the
// CHEAPTALK_THREADS environment variable, else the hardware concurrency.
int max_threads();
void set_max_threads(int threads);

// Calls body(i) for i in [0, count). Each index runs exactly once; callers
// write results to slot i so the outcome does not depend on scheduling.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& body);

}  // namespace cheaptalk

#endif  // CHEAPTALK_PARALLEL_HPP_
