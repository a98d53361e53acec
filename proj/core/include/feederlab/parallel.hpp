// Copyright 2026 The Authors.
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


#ifndef FEEDERLAB_PARALLEL_HPP_
#define FEEDERLAB_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace feederlab {

// Worker count: hardware concurrency, capped by FEEDERLAB_THREADS when set.
unsigned worker_count();

// Calls body(i) for i in [0, n) across worker_count() threads. Each index is
// visited exactly once; callers write results by index so the outcome does
// not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace feederlab

#endif  // FEEDERLAB_PARALLEL_HPP_
